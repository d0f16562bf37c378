#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpaths/path_term.hpp"
#include "cpaths/space_presentation.hpp"

namespace cpaths {

/// Declaration order matters: redexes are listed in this order at each position.
enum class RuleKind : std::uint8_t {
  TransReflLeft,    // refl . p       -> p
  TransReflRight,   // p . refl       -> p
  SymmTransCancel,  // symm(p) . p    -> refl
  TransSymmCancel,  // p . symm(p)    -> refl
  SymmRefl,         // symm(refl)     -> refl
  SymmSymm,         // symm(symm(p))  -> p
  SymmTransCongr,   // symm(p . q)    -> symm(q) . symm(p)
  AssocLeft,        // (p . q) . r    -> p . (q . r)
  AssocRight,       // p . (q . r)    -> (p . q) . r
  RelationFwd,      // relation lhs   -> rhs
  RelationBwd,      // relation rhs   -> lhs
  Derived,          // consequence of the relations, used by the normalizer
};

struct RuleId {
  RuleKind kind;
  Symbol name;  // relation or derived rule name; empty for groupoid rules

  friend bool operator==(const RuleId&, const RuleId&) = default;
};

/// Serialized spelling: `trans_refl_left`, ..., `rel_fwd:<name>`,
/// `rel_bwd:<name>`, `derived:<name>`.
std::string rule_name(const RuleId& rule);
std::optional<RuleId> parse_rule_name(std::string_view text);

struct RewriteStep {
  RuleId rule;
  Position at;

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

/// `<rule-name> @ <dot-separated position>`, or `@ root` at the root.
std::string to_string(const RewriteStep& step);
std::optional<RewriteStep> parse_step(std::string_view line);

struct Letter {
  GenId gen;
  int sign;  // +1 or -1

  Letter inverse() const { return {gen, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Sequence of signed generators with recorded endpoints, so empty words at
/// different points stay distinct.
struct Word {
  std::vector<Letter> letters;
  PointId src;
  PointId tgt;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  friend bool operator==(const Word&, const Word&) = default;
};

Word inverse(const Word& w);
/// Concatenation; throws EndpointMismatch unless a.tgt == b.src.
Word concat(const Word& a, const Word& b);
bool is_freely_reduced(const Word& w);
/// `a b^-1 a` style rendering; `e` for the empty word.
std::string to_debug_string(const Word& w);

/// Canonical representative of a rewrite-equality class.
struct NormalForm {
  Word word;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Rewrite rule derived from a presentation's relations. Valid because lhs
/// and rhs are rewrite-equal under the raw relations; the oracle tests check
/// this for every builtin rule.
struct DerivedRule {
  Symbol name;
  PathExpr lhs;
  PathExpr rhs;
};

const std::vector<DerivedRule>& derived_rules(const SpacePresentation& space);

enum class RuleScope {
  Primitive,  // groupoid rules and raw relations only
  All,        // plus derived rules
};

/// Every enabled (rule, position) pair, outermost-leftmost first and in
/// RuleKind order at each position.
std::vector<RewriteStep> redexes(const SpacePresentation& space, const PathExpr& p,
                                 RuleScope scope = RuleScope::All);

std::optional<PathExpr> try_apply_step(const SpacePresentation& space, const PathExpr& p, const RewriteStep& step);
/// Throws StepNotEnabled when the rule does not match at the position.
PathExpr apply_step(const SpacePresentation& space, const PathExpr& p, const RewriteStep& step);

/// Signed leaf sequence of `p` with Symm pushed to the leaves and Refl dropped;
/// no cancellation.
Word leaf_word(const SpacePresentation& space, const PathExpr& p);
/// Reads a word back as a left-nested composition; the empty word is Refl.
PathExpr term_of(const Word& w);

/// Unique freely reduced word of `p` in the free groupoid on the generators.
Word free_normalize(const SpacePresentation& space, const PathExpr& p);
Word free_reduce(Word w);

NormalForm normalize(const SpacePresentation& space, const PathExpr& p);
NormalForm normalize_word(const SpacePresentation& space, const Word& w);

/// Throws EndpointMismatch when the endpoints of p and q differ.
bool rw_eq(const SpacePresentation& space, const PathExpr& p, const PathExpr& q);

struct Trace {
  NormalForm normal_form;
  std::vector<RewriteStep> steps;
  PathExpr result;  // the term reached by replaying `steps` from the input
};

Trace trace(const SpacePresentation& space, const PathExpr& p);

}  // namespace cpaths
