#include "cpaths/path_term.hpp"

#include <sstream>

#include "cpaths/error.hpp"
#include "cpaths/space_presentation.hpp"

namespace cpaths {

std::string position_to_string(const Position& pos) {
  if (pos.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(pos[i]);
  }
  return out;
}

std::size_t subterm_end(std::span<const Node> nodes, std::size_t start) {
  std::size_t pending = 1;
  std::size_t i = start;
  while (pending > 0) {
    switch (nodes[i].kind) {
      case NodeKind::Trans: ++pending; break;
      case NodeKind::Symm: break;
      case NodeKind::Refl:
      case NodeKind::Gen: --pending; break;
    }
    ++i;
  }
  return i;
}

PathExpr PathExpr::refl(PointId point) {
  PathExpr p;
  p.nodes_.push_back({NodeKind::Refl, point});
  return p;
}

PathExpr PathExpr::gen(GenId gen) {
  PathExpr p;
  p.nodes_.push_back({NodeKind::Gen, gen});
  return p;
}

PathExpr PathExpr::symm(const PathExpr& inner) {
  PathExpr p;
  p.nodes_.reserve(inner.size() + 1);
  p.nodes_.push_back({NodeKind::Symm, Symbol()});
  p.nodes_.insert(p.nodes_.end(), inner.nodes_.begin(), inner.nodes_.end());
  return p;
}

PathExpr PathExpr::trans(const PathExpr& first, const PathExpr& second) {
  PathExpr p;
  p.nodes_.reserve(first.size() + second.size() + 1);
  p.nodes_.push_back({NodeKind::Trans, Symbol()});
  p.nodes_.insert(p.nodes_.end(), first.nodes_.begin(), first.nodes_.end());
  p.nodes_.insert(p.nodes_.end(), second.nodes_.begin(), second.nodes_.end());
  return p;
}

PathExpr PathExpr::from_nodes(std::span<const Node> nodes) {
  PathExpr p;
  p.nodes_.assign(nodes.begin(), nodes.end());
  return p;
}

PathExpr PathExpr::child(std::size_t index) const {
  std::span<const Node> all(nodes_);
  switch (kind()) {
    case NodeKind::Symm:
      if (index == 0) return from_nodes(all.subspan(1));
      break;
    case NodeKind::Trans: {
      std::size_t mid = subterm_end(all, 1);
      if (index == 0) return from_nodes(all.subspan(1, mid - 1));
      if (index == 1) return from_nodes(all.subspan(mid));
      break;
    }
    default: break;
  }
  throw PathError(ErrorKind::InvalidPosition, "no child " + std::to_string(index) + " in " + to_debug_string(*this));
}

bool PathExpr::is_letter() const {
  if (nodes_.size() == 1) return nodes_[0].kind == NodeKind::Gen;
  return nodes_.size() == 2 && nodes_[0].kind == NodeKind::Symm && nodes_[1].kind == NodeKind::Gen;
}

std::size_t PathExpr::offset_of(const Position& pos) const {
  std::span<const Node> all(nodes_);
  std::size_t at = 0;
  for (std::uint8_t step : pos) {
    NodeKind k = nodes_[at].kind;
    if (k == NodeKind::Symm && step == 0) {
      at += 1;
    } else if (k == NodeKind::Trans && step == 0) {
      at += 1;
    } else if (k == NodeKind::Trans && step == 1) {
      at = subterm_end(all, at + 1);
    } else {
      throw PathError(ErrorKind::InvalidPosition, position_to_string(pos) + " in " + to_debug_string(*this));
    }
  }
  return at;
}

bool PathExpr::has_position(const Position& pos) const {
  std::size_t at = 0;
  for (std::uint8_t step : pos) {
    NodeKind k = nodes_[at].kind;
    if ((k == NodeKind::Symm || k == NodeKind::Trans) && step == 0) {
      at += 1;
    } else if (k == NodeKind::Trans && step == 1) {
      at = subterm_end(nodes_, at + 1);
    } else {
      return false;
    }
  }
  return true;
}

PathExpr PathExpr::subterm(const Position& pos) const {
  std::size_t start = offset_of(pos);
  std::span<const Node> all(nodes_);
  return from_nodes(all.subspan(start, subterm_end(all, start) - start));
}

PathExpr PathExpr::replace(const Position& pos, const PathExpr& replacement) const {
  std::size_t start = offset_of(pos);
  std::size_t end = subterm_end(nodes_, start);
  PathExpr out;
  out.nodes_.reserve(nodes_.size() - (end - start) + replacement.size());
  out.nodes_.insert(out.nodes_.end(), nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(start));
  out.nodes_.insert(out.nodes_.end(), replacement.nodes_.begin(), replacement.nodes_.end());
  out.nodes_.insert(out.nodes_.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(end), nodes_.end());
  return out;
}

std::size_t PathExpr::hash() const noexcept {
  // FNV-1a over (kind, symbol id)
  std::size_t h = 1469598103934665603ULL;
  for (const Node& n : nodes_) {
    h ^= static_cast<std::size_t>(n.kind) | (static_cast<std::size_t>(n.sym.id()) << 2);
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

void debug_render(std::span<const Node> nodes, std::size_t& at, std::ostringstream& out) {
  const Node& n = nodes[at++];
  switch (n.kind) {
    case NodeKind::Refl: out << "Refl " << n.sym.name(); return;
    case NodeKind::Gen: out << "Gen " << n.sym.name(); return;
    case NodeKind::Symm:
      out << "Symm(";
      debug_render(nodes, at, out);
      out << ')';
      return;
    case NodeKind::Trans:
      out << "Trans(";
      debug_render(nodes, at, out);
      out << ", ";
      debug_render(nodes, at, out);
      out << ')';
      return;
  }
}

// Fills ends[i] for the subterm starting at `at`; returns one past its end.
std::size_t fill_endpoints(const SpacePresentation& space, std::span<const Node> nodes, std::size_t at,
                           std::vector<Endpoints>& ends) {
  const Node& n = nodes[at];
  switch (n.kind) {
    case NodeKind::Refl:
      if (!space.has_point(n.sym)) throw PathError(ErrorKind::UnknownPoint, n.sym.name());
      ends[at] = {n.sym, n.sym};
      return at + 1;
    case NodeKind::Gen: {
      const Generator* g = space.find_generator(n.sym);
      if (!g) throw PathError(ErrorKind::UnknownGenerator, n.sym.name());
      ends[at] = {g->src, g->tgt};
      return at + 1;
    }
    case NodeKind::Symm: {
      std::size_t end = fill_endpoints(space, nodes, at + 1, ends);
      ends[at] = {ends[at + 1].tgt, ends[at + 1].src};
      return end;
    }
    case NodeKind::Trans: {
      std::size_t mid = fill_endpoints(space, nodes, at + 1, ends);
      std::size_t end = fill_endpoints(space, nodes, mid, ends);
      if (ends[at + 1].tgt != ends[mid].src) {
        throw PathError(ErrorKind::EndpointMismatch,
                        "composition meets at " + ends[at + 1].tgt.name() + " and " + ends[mid].src.name() + " in " +
                            to_debug_string(PathExpr::from_nodes(nodes.subspan(at, end - at))));
      }
      ends[at] = {ends[at + 1].src, ends[mid].tgt};
      return end;
    }
  }
  return at + 1;
}

}  // namespace

std::string to_debug_string(const PathExpr& p) {
  std::ostringstream out;
  std::size_t at = 0;
  debug_render(p.nodes(), at, out);
  return out.str();
}

std::vector<Endpoints> subterm_endpoints(const SpacePresentation& space, const PathExpr& p) {
  std::vector<Endpoints> ends(p.size());
  fill_endpoints(space, p.nodes(), 0, ends);
  return ends;
}

Endpoints endpoints(const SpacePresentation& space, const PathExpr& p) {
  return subterm_endpoints(space, p).front();
}

bool well_formed(const SpacePresentation& space, const PathExpr& p) {
  try {
    endpoints(space, p);
    return true;
  } catch (const PathError&) {
    return false;
  }
}

PathExpr zpow(const SpacePresentation& space, const PathExpr& loop, long n) {
  Endpoints e = endpoints(space, loop);
  if (e.src != e.tgt) {
    throw PathError(ErrorKind::NotALoop, to_debug_string(loop) + " runs " + e.src.name() + " -> " + e.tgt.name());
  }
  if (n == 0) return PathExpr::refl(e.src);
  if (n < 0) return zpow(space, PathExpr::symm(loop), -n);
  PathExpr acc = loop;
  for (long i = 1; i < n; ++i) acc = PathExpr::trans(acc, loop);
  return acc;
}

PointId SpaceMap::map_point(PointId p) const {
  auto it = point_map_.find(p);
  if (it == point_map_.end()) throw PathError(ErrorKind::UnknownPoint, p.name() + " is not mapped");
  return it->second;
}

const PathExpr& SpaceMap::map_generator(GenId g) const {
  auto it = gen_map_.find(g);
  if (it == gen_map_.end()) throw PathError(ErrorKind::UnknownGenerator, g.name() + " is not mapped");
  return it->second;
}

namespace {

void map_into(const SpaceMap& m, std::span<const Node> nodes, std::size_t& at, std::vector<Node>& out) {
  const Node& n = nodes[at++];
  switch (n.kind) {
    case NodeKind::Refl: out.push_back({NodeKind::Refl, m.map_point(n.sym)}); return;
    case NodeKind::Gen: {
      auto image = m.map_generator(n.sym).nodes();
      out.insert(out.end(), image.begin(), image.end());
      return;
    }
    case NodeKind::Symm:
      out.push_back(n);
      map_into(m, nodes, at, out);
      return;
    case NodeKind::Trans:
      out.push_back(n);
      map_into(m, nodes, at, out);
      map_into(m, nodes, at, out);
      return;
  }
}

}  // namespace

PathExpr map_path(const SpaceMap& m, const PathExpr& p) {
  endpoints(m.source(), p);
  std::vector<Node> out;
  out.reserve(p.size());
  std::size_t at = 0;
  map_into(m, p.nodes(), at, out);
  return PathExpr::from_nodes(out);
}

}  // namespace cpaths
