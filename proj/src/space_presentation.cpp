#include "cpaths/space_presentation.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "cpaths/error.hpp"

namespace cpaths {

std::string_view group_tag_name(GroupTag tag) {
  switch (tag) {
    case GroupTag::FreeZ: return "FreeZ";
    case GroupTag::ZxZ: return "ZxZ";
    case GroupTag::ZSemidirectZ: return "ZSemidirectZ";
    case GroupTag::Z2: return "Z2";
    case GroupTag::None: return "None";
  }
  return "None";
}

SpacePresentation::SpacePresentation(std::string name, std::vector<PointId> points, std::vector<Generator> generators,
                                     std::vector<Relation> relations, PointId basepoint, GroupTag tag,
                                     std::optional<BuiltinKind> builtin)
    : name_(std::move(name)),
      points_(std::move(points)),
      generators_(std::move(generators)),
      relations_(std::move(relations)),
      basepoint_(basepoint),
      tag_(tag),
      builtin_(builtin) {
  for (auto& g : generators_) {
    if (g.display.empty()) g.display = g.id.name();
  }
}

bool SpacePresentation::has_point(PointId p) const {
  return std::find(points_.begin(), points_.end(), p) != points_.end();
}

const Generator* SpacePresentation::find_generator(GenId g) const {
  for (const auto& gen : generators_) {
    if (gen.id == g) return &gen;
  }
  return nullptr;
}

const Generator* SpacePresentation::find_generator_by_name(std::string_view name) const {
  for (const auto& gen : generators_) {
    if (gen.id.name() == name || gen.display == name) return &gen;
  }
  return nullptr;
}

const Relation* SpacePresentation::find_relation(Symbol name) const {
  for (const auto& r : relations_) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::size_t SpacePresentation::generator_index(GenId g) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].id == g) return i;
  }
  throw PathError(ErrorKind::UnknownGenerator, g.name());
}

const std::string& SpacePresentation::display_name(GenId g) const {
  const Generator* gen = find_generator(g);
  if (!gen) throw PathError(ErrorKind::UnknownGenerator, g.name());
  return gen->display;
}

bool operator==(const SpacePresentation& a, const SpacePresentation& b) {
  if (a.name_ != b.name_ || a.points_ != b.points_ || a.basepoint_ != b.basepoint_ || a.tag_ != b.tag_ ||
      a.builtin_ != b.builtin_ || a.generators_.size() != b.generators_.size() ||
      a.relations_.size() != b.relations_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.generators_.size(); ++i) {
    const auto& x = a.generators_[i];
    const auto& y = b.generators_[i];
    if (x.id != y.id || x.src != y.src || x.tgt != y.tgt || x.display != y.display) return false;
  }
  for (std::size_t i = 0; i < a.relations_.size(); ++i) {
    const auto& x = a.relations_[i];
    const auto& y = b.relations_[i];
    if (x.name != y.name || !(x.lhs == y.lhs) || !(x.rhs == y.rhs)) return false;
  }
  return true;
}

namespace {

Symbol sym(std::string_view s) { return Symbol::intern(s); }
PathExpr g(std::string_view s) { return PathExpr::gen(sym(s)); }
PathExpr inv(const PathExpr& p) { return PathExpr::symm(p); }
PathExpr cat(const PathExpr& p, const PathExpr& q) { return PathExpr::trans(p, q); }

SpacePresentation make_builtin(BuiltinKind kind) {
  const PointId pt = sym("pt");
  switch (kind) {
    case BuiltinKind::Circle:
      return SpacePresentation("circle", {pt}, {{sym("a"), pt, pt, ""}}, {}, pt, GroupTag::FreeZ, kind);
    case BuiltinKind::Mobius:
      // central circle only
      return SpacePresentation("mobius", {pt}, {{sym("a"), pt, pt, ""}}, {}, pt, GroupTag::FreeZ, kind);
    case BuiltinKind::Cylinder: {
      const PointId b0 = sym("b0");
      const PointId b1 = sym("b1");
      return SpacePresentation("cylinder", {b0, b1},
                               {{sym("s"), b0, b1, ""}, {sym("l0"), b0, b0, ""}, {sym("l1"), b1, b1, ""}},
                               {{sym("cylSquare"), cat(g("s"), g("l1")), cat(g("l0"), g("s"))}}, b0, GroupTag::FreeZ,
                               kind);
    }
    case BuiltinKind::Torus:
      return SpacePresentation("torus", {pt}, {{sym("a"), pt, pt, ""}, {sym("b"), pt, pt, ""}},
                               {{sym("torusComm"), cat(g("a"), g("b")), cat(g("b"), g("a"))}}, pt, GroupTag::ZxZ,
                               kind);
    case BuiltinKind::Klein:
      return SpacePresentation("klein", {pt}, {{sym("a"), pt, pt, ""}, {sym("b"), pt, pt, ""}},
                               {{sym("kleinSurf"), cat(cat(g("a"), g("b")), inv(g("a"))), inv(g("b"))}}, pt,
                               GroupTag::ZSemidirectZ, kind);
    case BuiltinKind::Rp2:
      return SpacePresentation("rp2", {pt}, {{sym("alpha"), pt, pt, "\xCE\xB1"}},
                               {{sym("loopSquare"), cat(g("alpha"), g("alpha")), PathExpr::refl(pt)}}, pt,
                               GroupTag::Z2, kind);
  }
  throw PathError(ErrorKind::Internal, "unhandled builtin");
}

}  // namespace

SpaceRef builtin(BuiltinKind kind) {
  static const std::array<SpaceRef, 6> cache = [] {
    std::array<SpaceRef, 6> out;
    for (int i = 0; i < 6; ++i) {
      out[i] = std::make_shared<const SpacePresentation>(make_builtin(static_cast<BuiltinKind>(i)));
    }
    return out;
  }();
  return cache[static_cast<std::size_t>(kind)];
}

SpaceRef builtin(std::string_view name) {
  for (int i = 0; i < 6; ++i) {
    if (name == kBuiltinNames[i]) return builtin(static_cast<BuiltinKind>(i));
  }
  throw PathError(ErrorKind::UnknownSpace, std::string(name));
}

std::string_view violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EmptyName: return "EmptyName";
    case ViolationKind::DuplicatePoint: return "DuplicatePoint";
    case ViolationKind::DuplicateGenerator: return "DuplicateGenerator";
    case ViolationKind::NameClash: return "NameClash";
    case ViolationKind::UnknownPoint: return "UnknownPoint";
    case ViolationKind::UnknownGenerator: return "UnknownGenerator";
    case ViolationKind::EndpointMismatch: return "EndpointMismatch";
  }
  return "Unknown";
}

std::vector<Violation> validate(const SpacePresentation& space) {
  std::vector<Violation> out;
  std::unordered_set<Symbol> seen_points;
  for (PointId p : space.points()) {
    if (p.empty()) out.push_back({ViolationKind::EmptyName, "", "point with empty name"});
    if (!seen_points.insert(p).second) out.push_back({ViolationKind::DuplicatePoint, p.name(), "declared twice"});
  }
  std::unordered_set<Symbol> seen_gens;
  for (const auto& gen : space.generators()) {
    if (gen.id.empty()) out.push_back({ViolationKind::EmptyName, "", "generator with empty name"});
    if (!seen_gens.insert(gen.id).second) {
      out.push_back({ViolationKind::DuplicateGenerator, gen.id.name(), "declared twice"});
    }
    if (seen_points.count(gen.id)) {
      out.push_back({ViolationKind::NameClash, gen.id.name(), "generator shares a name with a point"});
    }
    if (!space.has_point(gen.src)) {
      out.push_back({ViolationKind::UnknownPoint, gen.src.name(), "source of generator " + gen.id.name()});
    }
    if (!space.has_point(gen.tgt)) {
      out.push_back({ViolationKind::UnknownPoint, gen.tgt.name(), "target of generator " + gen.id.name()});
    }
  }
  if (!space.has_point(space.basepoint())) {
    out.push_back({ViolationKind::UnknownPoint, space.basepoint().name(), "basepoint"});
  }
  for (const auto& rel : space.relations()) {
    std::optional<Endpoints> sides[2];
    const PathExpr* exprs[2] = {&rel.lhs, &rel.rhs};
    for (int i = 0; i < 2; ++i) {
      try {
        sides[i] = endpoints(space, *exprs[i]);
      } catch (const PathError& e) {
        ViolationKind kind = e.kind() == ErrorKind::UnknownGenerator ? ViolationKind::UnknownGenerator
                             : e.kind() == ErrorKind::UnknownPoint   ? ViolationKind::UnknownPoint
                                                                     : ViolationKind::EndpointMismatch;
        out.push_back({kind, rel.name.name(), e.what()});
      }
    }
    if (sides[0] && sides[1] && !(*sides[0] == *sides[1])) {
      out.push_back({ViolationKind::EndpointMismatch, rel.name.name(),
                     "sides run " + sides[0]->src.name() + "->" + sides[0]->tgt.name() + " and " +
                         sides[1]->src.name() + "->" + sides[1]->tgt.name()});
    }
  }
  return out;
}

}  // namespace cpaths
