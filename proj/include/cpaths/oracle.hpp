#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "cpaths/path_term.hpp"
#include "cpaths/rewrite_engine.hpp"
#include "cpaths/space_presentation.hpp"

namespace cpaths {

/// Splittable linear congruential generator. State advances as
/// s' = s * 6364136223846793005 + 1442695040888963407 (mod 2^64) and each draw
/// returns the high 32 bits of s'. split() seeds a child from two draws.
class SplitLcg {
 public:
  explicit SplitLcg(std::uint64_t seed) : state_(seed) {}

  std::uint32_t next();
  /// Uniform in [0, bound); bound must be positive.
  std::uint32_t below(std::uint32_t bound);
  SplitLcg split();

 private:
  std::uint64_t state_;
};

enum class Verdict {
  Equal,                 // definitive
  NotEqualWithinBudget,  // every term within the size cap was explored
  BudgetExhausted,       // hit max_states first
};

std::string_view verdict_name(Verdict v);

struct OracleVerdict {
  Verdict verdict;
  std::size_t explored;
};

struct Budget {
  std::size_t max_states = 200000;
  /// 0 selects the default: largest input size + 6.
  std::size_t max_term_size = 0;
};

/// Breadth-first search over the bidirectional rewrite graph: every groupoid
/// rule and raw relation is applied forward and backward. Derived rules are
/// not used, so the search is independent of the normalizer's strategy.
OracleVerdict bfs_rw_eq(const SpacePresentation& space, const PathExpr& p, const PathExpr& q, Budget budget = {});

struct Exploration {
  std::unordered_set<PathExpr> visited;
  bool complete = false;  // the reachable set within the size cap was exhausted
};

/// Everything reachable from `p` with terms of at most `size_cap` nodes, up
/// to `max_states` terms.
Exploration bfs_explore(const SpacePresentation& space, const PathExpr& p, std::size_t max_states,
                        std::size_t size_cap);

/// One-step neighbours of `p` in the bidirectional rewrite graph, limited to
/// terms of at most `size_cap` nodes.
std::vector<PathExpr> rewrite_neighbours(const SpacePresentation& space, const PathExpr& p, std::size_t size_cap);

/// All well-formed terms with at most `max_size` nodes, by increasing size.
std::vector<PathExpr> enumerate_terms(const SpacePresentation& space, std::size_t max_size);

/// Smallest size of a term running from -> to; SIZE_MAX when none exists.
std::size_t min_term_size(const SpacePresentation& space, PointId from, PointId to);

/// Deterministic well-formed term with the given endpoints and at most
/// `max_size` nodes. Throws Unreachable.
PathExpr random_term(const SpacePresentation& space, std::uint64_t seed, std::size_t max_size, Endpoints ends);
PathExpr random_term(const SpacePresentation& space, SplitLcg& rng, std::size_t max_size, Endpoints ends);

/// Freely reduced basepoint loops of length <= max_len in length-lexicographic
/// order (generators in declaration order, positive letter first).
std::vector<Word> enumerate_loops(const SpacePresentation& space, std::size_t max_len);

/// Every one-step successor of `p` has the normal form of `p`.
bool local_confluence_probe(const SpacePresentation& space, const PathExpr& p);

}  // namespace cpaths
