#include "cpaths/oracle.hpp"

#include <deque>
#include <limits>
#include <map>

#include "cpaths/error.hpp"

namespace cpaths {

std::uint32_t SplitLcg::next() {
  state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
  return static_cast<std::uint32_t>(state_ >> 32);
}

std::uint32_t SplitLcg::below(std::uint32_t bound) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(next()) * bound) >> 32);
}

SplitLcg SplitLcg::split() {
  std::uint64_t hi = next();
  std::uint64_t lo = next();
  return SplitLcg((hi << 32) | lo);
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "Equal";
    case Verdict::NotEqualWithinBudget: return "NotEqualWithinBudget";
    case Verdict::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Term enumeration

namespace {

struct Catalog {
  // terms[n] holds every well-formed term of size n with its endpoints
  std::vector<std::vector<std::pair<PathExpr, Endpoints>>> terms;
};

void extend_catalog(const SpacePresentation& space, Catalog& cat, std::size_t max_size) {
  if (cat.terms.empty()) cat.terms.emplace_back();  // size 0 is empty
  while (cat.terms.size() <= max_size) {
    const std::size_t n = cat.terms.size();
    std::vector<std::pair<PathExpr, Endpoints>> layer;
    if (n == 1) {
      for (PointId p : space.points()) layer.emplace_back(PathExpr::refl(p), Endpoints{p, p});
      for (const auto& g : space.generators()) layer.emplace_back(PathExpr::gen(g.id), Endpoints{g.src, g.tgt});
    } else {
      for (const auto& [t, e] : cat.terms[n - 1]) layer.emplace_back(PathExpr::symm(t), Endpoints{e.tgt, e.src});
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const std::size_t j = n - 1 - i;
        for (const auto& [t1, e1] : cat.terms[i]) {
          for (const auto& [t2, e2] : cat.terms[j]) {
            if (e1.tgt == e2.src) layer.emplace_back(PathExpr::trans(t1, t2), Endpoints{e1.src, e2.tgt});
          }
        }
      }
    }
    cat.terms.push_back(std::move(layer));
  }
}

}  // namespace

std::vector<PathExpr> enumerate_terms(const SpacePresentation& space, std::size_t max_size) {
  Catalog cat;
  extend_catalog(space, cat, max_size);
  std::vector<PathExpr> out;
  for (const auto& layer : cat.terms) {
    for (const auto& [t, e] : layer) out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bidirectional search

namespace {

void splice_into(std::vector<PathExpr>& out, std::span<const Node> nodes, std::size_t at, std::size_t end,
                 std::initializer_list<std::span<const Node>> pieces) {
  std::vector<Node> buf;
  buf.reserve(nodes.size() + 8);
  buf.insert(buf.end(), nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(at));
  for (auto piece : pieces) buf.insert(buf.end(), piece.begin(), piece.end());
  buf.insert(buf.end(), nodes.begin() + static_cast<std::ptrdiff_t>(end), nodes.end());
  out.push_back(PathExpr::from_nodes(buf));
}

/// Inverses of the contracting groupoid rules (refl insertion, cancelling
/// pair insertion, double inversion, symm distribution). Associativity and
/// the relations are already bidirectional among the forward redexes.
void expansions(const SpacePresentation& space, const PathExpr& p, std::size_t size_cap, Catalog& witnesses,
                std::vector<PathExpr>& out) {
  const auto nodes = p.nodes();
  const std::size_t size = nodes.size();
  const auto ends = subterm_endpoints(space, p);
  const Node trans{NodeKind::Trans, Symbol()};
  const Node symm{NodeKind::Symm, Symbol()};
  const std::span<const Node> trans_s(&trans, 1);
  const std::span<const Node> symm_s(&symm, 1);

  for (std::size_t at = 0; at < size; ++at) {
    const std::size_t end = subterm_end(nodes, at);
    const auto sub = nodes.subspan(at, end - at);
    const Endpoints e = ends[at];
    if (size + 2 <= size_cap) {
      const Node rs{NodeKind::Refl, e.src};
      const Node rt{NodeKind::Refl, e.tgt};
      splice_into(out, nodes, at, end, {trans_s, std::span<const Node>(&rs, 1), sub});  // trans_refl_left
      splice_into(out, nodes, at, end, {trans_s, sub, std::span<const Node>(&rt, 1)});  // trans_refl_right
      splice_into(out, nodes, at, end, {symm_s, symm_s, sub});                          // symm_symm
    }
    if (nodes[at].kind == NodeKind::Refl) {
      if (size + 1 <= size_cap) splice_into(out, nodes, at, end, {symm_s, sub});  // symm_refl
      // symm(w) . w and w . symm(w) for every witness that fits
      const PointId x = nodes[at].sym;
      for (std::size_t k = 1; size + 1 + 2 * k <= size_cap; ++k) {
        extend_catalog(space, witnesses, k);
        for (const auto& [w, we] : witnesses.terms[k]) {
          if (we.tgt == x) splice_into(out, nodes, at, end, {trans_s, symm_s, w.nodes(), w.nodes()});
          if (we.src == x) splice_into(out, nodes, at, end, {trans_s, w.nodes(), symm_s, w.nodes()});
        }
      }
    }
    // symm(q) . symm(p) -> symm(p . q)
    if (nodes[at].kind == NodeKind::Trans && nodes[at + 1].kind == NodeKind::Symm) {
      const std::size_t mid = subterm_end(nodes, at + 1);
      if (nodes[mid].kind == NodeKind::Symm) {
        auto q = nodes.subspan(at + 2, mid - at - 2);
        auto pp = nodes.subspan(mid + 1, end - mid - 1);
        splice_into(out, nodes, at, end, {symm_s, trans_s, pp, q});
      }
    }
  }
}

std::vector<PathExpr> neighbours(const SpacePresentation& space, const PathExpr& p, std::size_t size_cap,
                                 Catalog& witnesses) {
  std::vector<PathExpr> out;
  for (const auto& step : redexes(space, p, RuleScope::Primitive)) {
    PathExpr next = apply_step(space, p, step);
    if (next.size() <= size_cap) out.push_back(std::move(next));
  }
  expansions(space, p, size_cap, witnesses, out);
  return out;
}

}  // namespace

std::vector<PathExpr> rewrite_neighbours(const SpacePresentation& space, const PathExpr& p, std::size_t size_cap) {
  Catalog witnesses;
  return neighbours(space, p, size_cap, witnesses);
}

Exploration bfs_explore(const SpacePresentation& space, const PathExpr& p, std::size_t max_states,
                        std::size_t size_cap) {
  endpoints(space, p);
  Exploration ex;
  Catalog witnesses;
  std::deque<PathExpr> queue;
  ex.visited.insert(p);
  queue.push_back(p);
  while (!queue.empty()) {
    PathExpr current = std::move(queue.front());
    queue.pop_front();
    for (auto& next : neighbours(space, current, size_cap, witnesses)) {
      if (ex.visited.size() >= max_states) return ex;
      if (ex.visited.insert(next).second) queue.push_back(std::move(next));
    }
  }
  ex.complete = true;
  return ex;
}

OracleVerdict bfs_rw_eq(const SpacePresentation& space, const PathExpr& p, const PathExpr& q, Budget budget) {
  Endpoints ep = endpoints(space, p);
  Endpoints eq = endpoints(space, q);
  if (!(ep == eq)) {
    throw PathError(ErrorKind::EndpointMismatch, ep.src.name() + "->" + ep.tgt.name() + " vs " + eq.src.name() +
                                                     "->" + eq.tgt.name());
  }
  const std::size_t cap = budget.max_term_size ? budget.max_term_size : std::max(p.size(), q.size()) + 6;
  if (p == q) return {Verdict::Equal, 1};
  Catalog witnesses;
  std::unordered_set<PathExpr> visited{p};
  std::deque<PathExpr> queue{p};
  while (!queue.empty()) {
    PathExpr current = std::move(queue.front());
    queue.pop_front();
    for (auto& next : neighbours(space, current, cap, witnesses)) {
      if (visited.count(next)) continue;
      if (next == q) return {Verdict::Equal, visited.size() + 1};
      if (visited.size() >= budget.max_states) return {Verdict::BudgetExhausted, visited.size()};
      visited.insert(next);
      queue.push_back(std::move(next));
    }
  }
  return {Verdict::NotEqualWithinBudget, visited.size()};
}

// ---------------------------------------------------------------------------
// Random terms and loop enumeration

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> distance_table(const SpacePresentation& space) {
  const auto& pts = space.points();
  const std::size_t n = pts.size();
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, kInf));
  auto idx = [&](PointId p) { return static_cast<std::size_t>(std::find(pts.begin(), pts.end(), p) - pts.begin()); };
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
  for (const auto& g : space.generators()) {
    std::size_t s = idx(g.src), t = idx(g.tgt);
    if (s == n || t == n) continue;
    d[s][t] = std::min<std::size_t>(d[s][t], 1);
    d[t][s] = std::min<std::size_t>(d[t][s], 2);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][k] != kInf && d[k][j] != kInf) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j] + 1);
      }
    }
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[{pts[i].id(), pts[j].id()}] = d[i][j];
  }
  return out;
}

class TermGenerator {
 public:
  TermGenerator(const SpacePresentation& space, SplitLcg& rng)
      : space_(space), rng_(rng), dist_(distance_table(space)) {}

  std::size_t dist(PointId a, PointId b) const {
    auto it = dist_.find({a.id(), b.id()});
    return it == dist_.end() ? kInf : it->second;
  }

  PathExpr generate(PointId from, PointId to, std::size_t budget) {
    std::vector<PathExpr> leaves;
    if (from == to) leaves.push_back(PathExpr::refl(from));
    for (const auto& g : space_.generators()) {
      if (g.src == from && g.tgt == to) leaves.push_back(PathExpr::gen(g.id));
    }
    const bool symm_ok = budget >= 1 && dist(to, from) != kInf && dist(to, from) + 1 <= budget;
    std::vector<PointId> mids;
    if (budget >= 3) {
      for (PointId m : space_.points()) {
        std::size_t a = dist(from, m), b = dist(m, to);
        if (a != kInf && b != kInf && a + b + 1 <= budget) mids.push_back(m);
      }
    }
    // weights favour composition while the budget is large
    const std::uint32_t w_leaf = leaves.empty() ? 0 : (budget <= 2 ? 6 : 1);
    const std::uint32_t w_symm = symm_ok ? 2 : 0;
    const std::uint32_t w_trans = mids.empty() ? 0 : 6;
    const std::uint32_t total = w_leaf + w_symm + w_trans;
    if (total == 0) throw PathError(ErrorKind::Internal, "no constructor fits the budget");
    std::uint32_t pick = rng_.below(total);
    if (pick < w_leaf) return leaves[rng_.below(static_cast<std::uint32_t>(leaves.size()))];
    pick -= w_leaf;
    if (pick < w_symm) return PathExpr::symm(generate(to, from, budget - 1));
    PointId m = mids[rng_.below(static_cast<std::uint32_t>(mids.size()))];
    const std::size_t lo = dist(from, m);
    const std::size_t hi = budget - 1 - dist(m, to);
    const std::size_t left = lo + rng_.below(static_cast<std::uint32_t>(hi - lo + 1));
    PathExpr first = generate(from, m, left);
    PathExpr second = generate(m, to, budget - 1 - first.size());
    return PathExpr::trans(first, second);
  }

 private:
  const SpacePresentation& space_;
  SplitLcg& rng_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> dist_;
};

}  // namespace

std::size_t min_term_size(const SpacePresentation& space, PointId from, PointId to) {
  auto table = distance_table(space);
  auto it = table.find({from.id(), to.id()});
  return it == table.end() ? kInf : it->second;
}

PathExpr random_term(const SpacePresentation& space, SplitLcg& rng, std::size_t max_size, Endpoints ends) {
  TermGenerator gen(space, rng);
  if (!space.has_point(ends.src)) throw PathError(ErrorKind::UnknownPoint, ends.src.name());
  if (!space.has_point(ends.tgt)) throw PathError(ErrorKind::UnknownPoint, ends.tgt.name());
  const std::size_t least = gen.dist(ends.src, ends.tgt);
  if (least == kInf) {
    throw PathError(ErrorKind::Unreachable, "no path from " + ends.src.name() + " to " + ends.tgt.name());
  }
  if (least > max_size) {
    throw PathError(ErrorKind::Unreachable, "paths from " + ends.src.name() + " to " + ends.tgt.name() +
                                                " need at least " + std::to_string(least) + " nodes");
  }
  const std::size_t target = least + rng.below(static_cast<std::uint32_t>(max_size - least + 1));
  return gen.generate(ends.src, ends.tgt, target);
}

PathExpr random_term(const SpacePresentation& space, std::uint64_t seed, std::size_t max_size, Endpoints ends) {
  SplitLcg rng(seed);
  return random_term(space, rng, max_size, ends);
}

std::vector<Word> enumerate_loops(const SpacePresentation& space, std::size_t max_len) {
  const PointId base = space.basepoint();
  std::vector<Letter> alphabet;
  for (const auto& g : space.generators()) {
    alphabet.push_back({g.id, +1});
    alphabet.push_back({g.id, -1});
  }
  auto letter_src = [&](const Letter& l) {
    const Generator* g = space.find_generator(l.gen);
    return l.sign > 0 ? g->src : g->tgt;
  };
  auto letter_tgt = [&](const Letter& l) {
    const Generator* g = space.find_generator(l.gen);
    return l.sign > 0 ? g->tgt : g->src;
  };
  std::vector<Word> out{Word{{}, base, base}};
  std::vector<Word> layer{Word{{}, base, base}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (const auto& l : alphabet) {
        if (letter_src(l) != w.tgt) continue;
        if (!w.empty() && w.letters.back() == l.inverse()) continue;
        Word extended = w;
        extended.letters.push_back(l);
        extended.tgt = letter_tgt(l);
        next.push_back(std::move(extended));
      }
    }
    for (const auto& w : next) {
      if (w.tgt == base) out.push_back(w);
    }
    layer = std::move(next);
  }
  return out;
}

bool local_confluence_probe(const SpacePresentation& space, const PathExpr& p) {
  const NormalForm nf = normalize(space, p);
  for (const auto& step : redexes(space, p, RuleScope::All)) {
    if (!(normalize(space, apply_step(space, p, step)) == nf)) return false;
  }
  return true;
}

}  // namespace cpaths
