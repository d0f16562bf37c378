#include "cpaths/rewrite_engine.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "cpaths/error.hpp"

namespace cpaths {

// ---------------------------------------------------------------------------
// Rule names and step serialization

namespace {

constexpr std::array<std::pair<RuleKind, std::string_view>, 9> kGroupoidRuleNames{{
    {RuleKind::TransReflLeft, "trans_refl_left"},
    {RuleKind::TransReflRight, "trans_refl_right"},
    {RuleKind::SymmTransCancel, "symm_trans"},
    {RuleKind::TransSymmCancel, "trans_symm"},
    {RuleKind::SymmRefl, "symm_refl"},
    {RuleKind::SymmSymm, "symm_symm"},
    {RuleKind::SymmTransCongr, "symm_trans_congr"},
    {RuleKind::AssocLeft, "assoc_left"},
    {RuleKind::AssocRight, "assoc_right"},
}};

constexpr std::array<std::pair<RuleKind, std::string_view>, 3> kNamedRulePrefixes{{
    {RuleKind::RelationFwd, "rel_fwd:"},
    {RuleKind::RelationBwd, "rel_bwd:"},
    {RuleKind::Derived, "derived:"},
}};

}  // namespace

std::string rule_name(const RuleId& rule) {
  for (auto [kind, name] : kGroupoidRuleNames) {
    if (kind == rule.kind) return std::string(name);
  }
  for (auto [kind, prefix] : kNamedRulePrefixes) {
    if (kind == rule.kind) return std::string(prefix) + rule.name.name();
  }
  return "unknown";
}

std::optional<RuleId> parse_rule_name(std::string_view text) {
  for (auto [kind, name] : kGroupoidRuleNames) {
    if (text == name) return RuleId{kind, Symbol()};
  }
  for (auto [kind, prefix] : kNamedRulePrefixes) {
    if (text.size() > prefix.size() && text.substr(0, prefix.size()) == prefix) {
      return RuleId{kind, Symbol::intern(text.substr(prefix.size()))};
    }
  }
  return std::nullopt;
}

std::string to_string(const RewriteStep& step) { return rule_name(step.rule) + " @ " + position_to_string(step.at); }

std::optional<RewriteStep> parse_step(std::string_view line) {
  auto sep = line.find(" @ ");
  if (sep == std::string_view::npos) return std::nullopt;
  auto rule = parse_rule_name(line.substr(0, sep));
  if (!rule) return std::nullopt;
  std::string_view pos_text = line.substr(sep + 3);
  Position pos;
  if (pos_text != "root") {
    std::size_t i = 0;
    while (i < pos_text.size()) {
      char c = pos_text[i];
      if (c != '0' && c != '1') return std::nullopt;
      pos.push_back(static_cast<std::uint8_t>(c - '0'));
      ++i;
      if (i < pos_text.size()) {
        if (pos_text[i] != '.' || i + 1 == pos_text.size()) return std::nullopt;
        ++i;
      }
    }
    if (pos.empty()) return std::nullopt;
  }
  return RewriteStep{*rule, std::move(pos)};
}

// ---------------------------------------------------------------------------
// Words

Word inverse(const Word& w) {
  Word out{{}, w.tgt, w.src};
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(it->inverse());
  return out;
}

Word concat(const Word& a, const Word& b) {
  if (a.tgt != b.src) {
    throw PathError(ErrorKind::EndpointMismatch, "cannot compose words meeting at " + a.tgt.name() + " and " +
                                                     b.src.name());
  }
  Word out{a.letters, a.src, b.tgt};
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w.letters[i + 1] == w.letters[i].inverse()) return false;
  }
  return true;
}

std::string to_debug_string(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& l : w.letters) {
    if (!out.empty()) out += ' ';
    out += l.gen.name();
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derived rules

namespace {

PathExpr g(std::string_view s) { return PathExpr::gen(Symbol::intern(s)); }
PathExpr inv(const PathExpr& p) { return PathExpr::symm(p); }
PathExpr cat(const PathExpr& p, const PathExpr& q) { return PathExpr::trans(p, q); }

std::vector<DerivedRule> make_derived(BuiltinKind kind) {
  auto d = [](std::string_view name, PathExpr lhs, PathExpr rhs) {
    return DerivedRule{Symbol::intern(name), std::move(lhs), std::move(rhs)};
  };
  switch (kind) {
    case BuiltinKind::Circle:
    case BuiltinKind::Mobius:
      return {};
    case BuiltinKind::Cylinder:
      // l1 = s^-1 l0 s, from s l1 = l0 s
      return {d("cyl_l1_elim", g("l1"), cat(inv(g("s")), cat(g("l0"), g("s")))),
              d("cyl_l1_inv_elim", inv(g("l1")), cat(inv(g("s")), cat(inv(g("l0")), g("s"))))};
    case BuiltinKind::Torus:
      // b a -> a b is the stored relation read backwards
      return {d("torus_swap_bi_a", cat(inv(g("b")), g("a")), cat(g("a"), inv(g("b")))),
              d("torus_swap_b_ai", cat(g("b"), inv(g("a"))), cat(inv(g("a")), g("b"))),
              d("torus_swap_bi_ai", cat(inv(g("b")), inv(g("a"))), cat(inv(g("a")), inv(g("b"))))};
    case BuiltinKind::Klein:
      // conjugation by a^{+-1} inverts b: b^e a^d -> a^d b^-e
      return {d("klein_swap_b_a", cat(g("b"), g("a")), cat(g("a"), inv(g("b")))),
              d("klein_swap_b_ai", cat(g("b"), inv(g("a"))), cat(inv(g("a")), inv(g("b")))),
              d("klein_swap_bi_a", cat(inv(g("b")), g("a")), cat(g("a"), g("b"))),
              d("klein_swap_bi_ai", cat(inv(g("b")), inv(g("a"))), cat(inv(g("a")), g("b")))};
    case BuiltinKind::Rp2:
      return {d("rp2_alpha_inv", inv(g("alpha")), g("alpha"))};
  }
  return {};
}

/// A rule the normalizer applies to word windows. `pattern` is the term shape
/// the window is brought into before the rule fires.
struct WordRule {
  RuleId id;
  PathExpr pattern;
  std::vector<Letter> lhs;
  std::vector<Letter> rhs;
};

bool word_shaped(const PathExpr& p) {
  if (p.is_letter()) return true;
  if (p.kind() != NodeKind::Trans) return false;
  return word_shaped(p.child(0)) && word_shaped(p.child(1));
}

void collect_leaves(std::span<const Node> nodes, std::size_t& at, int sign, std::vector<Letter>& out) {
  const Node& n = nodes[at++];
  switch (n.kind) {
    case NodeKind::Refl: return;
    case NodeKind::Gen: out.push_back({n.sym, sign}); return;
    case NodeKind::Symm: collect_leaves(nodes, at, -sign, out); return;
    case NodeKind::Trans: {
      if (sign > 0) {
        collect_leaves(nodes, at, sign, out);
        collect_leaves(nodes, at, sign, out);
      } else {
        // reversed order under an odd number of Symm
        std::vector<Letter> first;
        collect_leaves(nodes, at, sign, first);
        collect_leaves(nodes, at, sign, out);
        out.insert(out.end(), first.begin(), first.end());
      }
      return;
    }
  }
}

std::vector<Letter> leaves_of(const PathExpr& p) {
  std::vector<Letter> out;
  std::size_t at = 0;
  collect_leaves(p.nodes(), at, +1, out);
  return out;
}

WordRule word_rule(RuleId id, const PathExpr& lhs, const PathExpr& rhs) {
  return WordRule{id, lhs, leaves_of(lhs), leaves_of(rhs)};
}

std::vector<WordRule> make_strategy(const SpacePresentation& space) {
  std::vector<WordRule> rules;
  auto relation = [&](std::string_view name) -> const Relation& {
    const Relation* r = space.find_relation(Symbol::intern(name));
    if (!r) throw PathError(ErrorKind::Internal, "builtin relation missing: " + std::string(name));
    return *r;
  };
  auto add_derived = [&] {
    for (const auto& d : derived_rules(space)) rules.push_back(word_rule({RuleKind::Derived, d.name}, d.lhs, d.rhs));
  };
  if (!space.builtin()) {
    for (const auto& r : space.relations()) {
      if (word_shaped(r.lhs)) rules.push_back(word_rule({RuleKind::RelationFwd, r.name}, r.lhs, r.rhs));
    }
    return rules;
  }
  switch (*space.builtin()) {
    case BuiltinKind::Circle:
    case BuiltinKind::Mobius:
      break;
    case BuiltinKind::Cylinder: {
      const Relation& r = relation("cylSquare");
      rules.push_back(word_rule({RuleKind::RelationFwd, r.name}, r.lhs, r.rhs));
      add_derived();
      break;
    }
    case BuiltinKind::Torus: {
      const Relation& r = relation("torusComm");
      rules.push_back(word_rule({RuleKind::RelationBwd, r.name}, r.rhs, r.lhs));
      add_derived();
      break;
    }
    case BuiltinKind::Klein: {
      const Relation& r = relation("kleinSurf");
      rules.push_back(word_rule({RuleKind::RelationFwd, r.name}, r.lhs, r.rhs));
      add_derived();
      break;
    }
    case BuiltinKind::Rp2: {
      const Relation& r = relation("loopSquare");
      rules.push_back(word_rule({RuleKind::RelationFwd, r.name}, r.lhs, r.rhs));
      add_derived();
      break;
    }
  }
  return rules;
}

const std::vector<WordRule>& strategy_rules(const SpacePresentation& space, std::vector<WordRule>& scratch) {
  if (space.builtin()) {
    static const std::array<std::vector<WordRule>, 6> cache = [] {
      std::array<std::vector<WordRule>, 6> out;
      for (int i = 0; i < 6; ++i) out[i] = make_strategy(*builtin(static_cast<BuiltinKind>(i)));
      return out;
    }();
    return cache[static_cast<std::size_t>(*space.builtin())];
  }
  scratch = make_strategy(space);
  return scratch;
}

}  // namespace

const std::vector<DerivedRule>& derived_rules(const SpacePresentation& space) {
  static const std::vector<DerivedRule> none;
  static const std::array<std::vector<DerivedRule>, 6> cache = [] {
    std::array<std::vector<DerivedRule>, 6> out;
    for (int i = 0; i < 6; ++i) out[i] = make_derived(static_cast<BuiltinKind>(i));
    return out;
  }();
  if (!space.builtin()) return none;
  return cache[static_cast<std::size_t>(*space.builtin())];
}

// ---------------------------------------------------------------------------
// One-step rewriting

namespace {

bool span_equal(std::span<const Node> nodes, std::size_t a, std::size_t a_end, std::size_t b, std::size_t b_end) {
  return a_end - a == b_end - b && std::equal(nodes.begin() + static_cast<std::ptrdiff_t>(a),
                                              nodes.begin() + static_cast<std::ptrdiff_t>(a_end),
                                              nodes.begin() + static_cast<std::ptrdiff_t>(b));
}

bool matches_pattern(std::span<const Node> nodes, std::size_t at, const PathExpr& pattern) {
  auto pat = pattern.nodes();
  return at + pat.size() <= nodes.size() &&
         std::equal(pat.begin(), pat.end(), nodes.begin() + static_cast<std::ptrdiff_t>(at));
}

void append(std::vector<Node>& out, std::span<const Node> nodes, std::size_t from, std::size_t to) {
  out.insert(out.end(), nodes.begin() + static_cast<std::ptrdiff_t>(from),
             nodes.begin() + static_cast<std::ptrdiff_t>(to));
}

const PathExpr* rule_source(const SpacePresentation& space, const RuleId& rule, const PathExpr** target) {
  switch (rule.kind) {
    case RuleKind::RelationFwd:
    case RuleKind::RelationBwd: {
      const Relation* r = space.find_relation(rule.name);
      if (!r) return nullptr;
      bool fwd = rule.kind == RuleKind::RelationFwd;
      *target = fwd ? &r->rhs : &r->lhs;
      return fwd ? &r->lhs : &r->rhs;
    }
    case RuleKind::Derived:
      for (const auto& d : derived_rules(space)) {
        if (d.name == rule.name) {
          *target = &d.rhs;
          return &d.lhs;
        }
      }
      return nullptr;
    default:
      return nullptr;
  }
}

/// Replacement for the subterm at `at` when `rule` is enabled there.
/// With `build == false` only enablement is decided and the result is empty.
std::optional<std::vector<Node>> rewrite_at(const SpacePresentation& space, std::span<const Node> nodes,
                                            std::size_t at, const RuleId& rule, bool build) {
  const NodeKind k = nodes[at].kind;
  const std::size_t end = subterm_end(nodes, at);
  std::vector<Node> out;
  switch (rule.kind) {
    case RuleKind::TransReflLeft: {
      if (k != NodeKind::Trans || nodes[at + 1].kind != NodeKind::Refl) return std::nullopt;
      if (build) append(out, nodes, at + 2, end);
      return out;
    }
    case RuleKind::TransReflRight: {
      if (k != NodeKind::Trans) return std::nullopt;
      std::size_t mid = subterm_end(nodes, at + 1);
      if (nodes[mid].kind != NodeKind::Refl) return std::nullopt;
      if (build) append(out, nodes, at + 1, mid);
      return out;
    }
    case RuleKind::SymmTransCancel: {
      if (k != NodeKind::Trans || nodes[at + 1].kind != NodeKind::Symm) return std::nullopt;
      std::size_t mid = subterm_end(nodes, at + 1);
      if (!span_equal(nodes, at + 2, mid, mid, end)) return std::nullopt;
      if (build) {
        Endpoints e = endpoints(space, PathExpr::from_nodes(nodes.subspan(mid, end - mid)));
        out.push_back({NodeKind::Refl, e.tgt});
      }
      return out;
    }
    case RuleKind::TransSymmCancel: {
      if (k != NodeKind::Trans) return std::nullopt;
      std::size_t mid = subterm_end(nodes, at + 1);
      if (nodes[mid].kind != NodeKind::Symm || !span_equal(nodes, at + 1, mid, mid + 1, end)) return std::nullopt;
      if (build) {
        Endpoints e = endpoints(space, PathExpr::from_nodes(nodes.subspan(at + 1, mid - at - 1)));
        out.push_back({NodeKind::Refl, e.src});
      }
      return out;
    }
    case RuleKind::SymmRefl: {
      if (k != NodeKind::Symm || nodes[at + 1].kind != NodeKind::Refl) return std::nullopt;
      if (build) out.push_back(nodes[at + 1]);
      return out;
    }
    case RuleKind::SymmSymm: {
      if (k != NodeKind::Symm || nodes[at + 1].kind != NodeKind::Symm) return std::nullopt;
      if (build) append(out, nodes, at + 2, end);
      return out;
    }
    case RuleKind::SymmTransCongr: {
      if (k != NodeKind::Symm || nodes[at + 1].kind != NodeKind::Trans) return std::nullopt;
      if (build) {
        std::size_t mid = subterm_end(nodes, at + 2);
        out.push_back({NodeKind::Trans, Symbol()});
        out.push_back({NodeKind::Symm, Symbol()});
        append(out, nodes, mid, end);
        out.push_back({NodeKind::Symm, Symbol()});
        append(out, nodes, at + 2, mid);
      }
      return out;
    }
    case RuleKind::AssocLeft: {
      if (k != NodeKind::Trans || nodes[at + 1].kind != NodeKind::Trans) return std::nullopt;
      if (build) {
        std::size_t q = subterm_end(nodes, at + 2);
        out.push_back({NodeKind::Trans, Symbol()});
        append(out, nodes, at + 2, q);
        out.push_back({NodeKind::Trans, Symbol()});
        append(out, nodes, q, end);
      }
      return out;
    }
    case RuleKind::AssocRight: {
      if (k != NodeKind::Trans) return std::nullopt;
      std::size_t mid = subterm_end(nodes, at + 1);
      if (nodes[mid].kind != NodeKind::Trans) return std::nullopt;
      if (build) {
        out.push_back({NodeKind::Trans, Symbol()});
        out.push_back({NodeKind::Trans, Symbol()});
        append(out, nodes, at + 1, mid);
        append(out, nodes, mid + 1, end);
      }
      return out;
    }
    case RuleKind::RelationFwd:
    case RuleKind::RelationBwd:
    case RuleKind::Derived: {
      const PathExpr* target = nullptr;
      const PathExpr* source = rule_source(space, rule, &target);
      if (!source || !matches_pattern(nodes, at, *source)) return std::nullopt;
      if (build) append(out, target->nodes(), 0, target->size());
      return out;
    }
  }
  return std::nullopt;
}

PathExpr splice(std::span<const Node> nodes, std::size_t at, const std::vector<Node>& replacement) {
  std::size_t end = subterm_end(nodes, at);
  std::vector<Node> out;
  out.reserve(nodes.size() - (end - at) + replacement.size());
  append(out, nodes, 0, at);
  out.insert(out.end(), replacement.begin(), replacement.end());
  append(out, nodes, end, nodes.size());
  return PathExpr::from_nodes(out);
}

/// Positions of every node in preorder.
std::vector<Position> node_positions(std::span<const Node> nodes) {
  std::vector<Position> out(nodes.size());
  // stack of (node offset, next child index)
  std::vector<std::pair<std::size_t, std::uint8_t>> stack;
  Position current;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out[i] = current;
    switch (nodes[i].kind) {
      case NodeKind::Symm:
      case NodeKind::Trans:
        stack.emplace_back(i, 0);
        current.push_back(0);
        break;
      default:
        // climb until a Trans still has its second child pending
        while (!stack.empty()) {
          auto& [off, child] = stack.back();
          if (nodes[off].kind == NodeKind::Trans && child == 0) {
            child = 1;
            current.back() = 1;
            break;
          }
          stack.pop_back();
          current.pop_back();
        }
        break;
    }
  }
  return out;
}

constexpr std::array<RuleKind, 9> kGroupoidKinds{
    RuleKind::TransReflLeft, RuleKind::TransReflRight, RuleKind::SymmTransCancel,
    RuleKind::TransSymmCancel, RuleKind::SymmRefl,      RuleKind::SymmSymm,
    RuleKind::SymmTransCongr,  RuleKind::AssocLeft,     RuleKind::AssocRight,
};

}  // namespace

std::vector<RewriteStep> redexes(const SpacePresentation& space, const PathExpr& p, RuleScope scope) {
  endpoints(space, p);
  auto nodes = p.nodes();
  auto positions = node_positions(nodes);
  std::vector<RuleId> named;
  for (const auto& r : space.relations()) named.push_back({RuleKind::RelationFwd, r.name});
  for (const auto& r : space.relations()) named.push_back({RuleKind::RelationBwd, r.name});
  if (scope == RuleScope::All) {
    for (const auto& d : derived_rules(space)) named.push_back({RuleKind::Derived, d.name});
  }
  std::vector<RewriteStep> out;
  for (std::size_t at = 0; at < nodes.size(); ++at) {
    for (RuleKind kind : kGroupoidKinds) {
      RuleId rule{kind, Symbol()};
      if (rewrite_at(space, nodes, at, rule, false)) out.push_back({rule, positions[at]});
    }
    for (const auto& rule : named) {
      if (rewrite_at(space, nodes, at, rule, false)) out.push_back({rule, positions[at]});
    }
  }
  return out;
}

std::optional<PathExpr> try_apply_step(const SpacePresentation& space, const PathExpr& p, const RewriteStep& step) {
  if (!p.has_position(step.at)) return std::nullopt;
  std::size_t at = p.offset_of(step.at);
  auto replacement = rewrite_at(space, p.nodes(), at, step.rule, true);
  if (!replacement) return std::nullopt;
  return splice(p.nodes(), at, *replacement);
}

PathExpr apply_step(const SpacePresentation& space, const PathExpr& p, const RewriteStep& step) {
  auto out = try_apply_step(space, p, step);
  if (!out) throw PathError(ErrorKind::StepNotEnabled, to_string(step) + " on " + to_debug_string(p));
  return *out;
}

// ---------------------------------------------------------------------------
// Normalization

Word leaf_word(const SpacePresentation& space, const PathExpr& p) {
  Endpoints e = endpoints(space, p);
  return Word{leaves_of(p), e.src, e.tgt};
}

PathExpr term_of(const Word& w) {
  if (w.empty()) return PathExpr::refl(w.src);
  auto letter = [](const Letter& l) {
    PathExpr g = PathExpr::gen(l.gen);
    return l.sign > 0 ? g : PathExpr::symm(g);
  };
  PathExpr acc = letter(w.letters.front());
  for (std::size_t i = 1; i < w.size(); ++i) acc = PathExpr::trans(acc, letter(w.letters[i]));
  return acc;
}

namespace {

/// Mirrors word operations as rewrite steps on a term. The term is kept as a
/// right-nested composition of letters (or a lone Refl) whose leaves spell the
/// current word.
class TermTracer {
 public:
  TermTracer(const SpacePresentation& space, PathExpr start) : space_(space), term_(std::move(start)) {}

  void prepare() {
    exhaust({RuleKind::SymmRefl, RuleKind::SymmSymm, RuleKind::SymmTransCongr});
    exhaust({RuleKind::TransReflLeft, RuleKind::TransReflRight});
    exhaust({RuleKind::AssocLeft});
  }

  /// Letters [i, i+k) of an n-letter word are reshaped to `pattern` and
  /// rewritten by `rule`.
  void apply_window(std::size_t n, std::size_t i, const PathExpr& pattern, const RuleId& rule) {
    const std::size_t k = leaf_count(pattern);
    Position at(i, 1);
    if (i + k < n) {
      for (std::size_t j = 1; j < k; ++j) step({RuleKind::AssocRight, Symbol()}, at);
      at.push_back(0);
    }
    reshape(at, pattern);
    step(rule, at);
    prepare();
  }

  void cancel(std::size_t n, std::size_t i, const Letter& first) {
    PathExpr a = PathExpr::gen(first.gen);
    PathExpr pattern = first.sign > 0 ? PathExpr::trans(a, PathExpr::symm(a)) : PathExpr::trans(PathExpr::symm(a), a);
    RuleKind kind = first.sign > 0 ? RuleKind::TransSymmCancel : RuleKind::SymmTransCancel;
    apply_window(n, i, pattern, {kind, Symbol()});
  }

  const PathExpr& term() const { return term_; }
  std::vector<RewriteStep>& steps() { return steps_; }

 private:
  static std::size_t leaf_count(const PathExpr& p) {
    std::size_t count = 0;
    for (const Node& n : p.nodes()) count += n.kind == NodeKind::Gen;
    return count;
  }

  void step(const RuleId& rule, const Position& at) {
    RewriteStep s{rule, at};
    term_ = apply_step(space_, term_, s);
    steps_.push_back(std::move(s));
  }

  std::optional<RewriteStep> first_redex(std::initializer_list<RuleKind> kinds, std::span<const Node> nodes,
                                         std::size_t base, const Position& prefix) {
    auto positions = node_positions(nodes.subspan(base, subterm_end(nodes, base) - base));
    for (std::size_t off = 0; off < positions.size(); ++off) {
      for (RuleKind kind : kinds) {
        RuleId rule{kind, Symbol()};
        if (rewrite_at(space_, nodes, base + off, rule, false)) {
          Position at = prefix;
          at.insert(at.end(), positions[off].begin(), positions[off].end());
          return RewriteStep{rule, at};
        }
      }
    }
    return std::nullopt;
  }

  void exhaust(std::initializer_list<RuleKind> kinds, const Position& prefix = {}) {
    while (true) {
      auto nodes = term_.nodes();
      auto s = first_redex(kinds, nodes, term_.offset_of(prefix), prefix);
      if (!s) return;
      step(s->rule, s->at);
    }
  }

  /// Brings the letter tree at `at` into the shape of `pattern` using
  /// associativity only: flatten it, then undo the flattening of the pattern.
  void reshape(const Position& at, const PathExpr& pattern) {
    if (term_.subterm(at) == pattern) return;
    exhaust({RuleKind::AssocLeft}, at);
    // AssocLeft steps that flatten the pattern, replayed backwards as AssocRight
    std::vector<Position> flattening;
    PathExpr shape = pattern;
    while (true) {
      auto s = first_redex_on(shape, RuleKind::AssocLeft);
      if (!s) break;
      shape = apply_step(space_, shape, *s);
      flattening.push_back(s->at);
    }
    for (auto it = flattening.rbegin(); it != flattening.rend(); ++it) {
      Position full = at;
      full.insert(full.end(), it->begin(), it->end());
      step({RuleKind::AssocRight, Symbol()}, full);
    }
  }

  std::optional<RewriteStep> first_redex_on(const PathExpr& p, RuleKind kind) {
    auto nodes = p.nodes();
    auto positions = node_positions(nodes);
    for (std::size_t off = 0; off < nodes.size(); ++off) {
      if (rewrite_at(space_, nodes, off, {kind, Symbol()}, false)) return RewriteStep{{kind, Symbol()}, positions[off]};
    }
    return std::nullopt;
  }

  const SpacePresentation& space_;
  PathExpr term_;
  std::vector<RewriteStep> steps_;
};

/// Word-level normalizer: free reduction, the presentation's relation
/// strategy, final free reduction. Every change is mirrored on the tracer
/// when one is attached.
class WordNormalizer {
 public:
  WordNormalizer(const SpacePresentation& space, Word word, TermTracer* tracer)
      : space_(space), word_(std::move(word)), tracer_(tracer) {}

  void free_reduce() {
    std::vector<Letter> out;
    out.reserve(word_.size());
    const std::size_t n = word_.size();
    for (std::size_t j = 0; j < n; ++j) {
      const Letter& next = word_.letters[j];
      if (!out.empty() && out.back() == next.inverse()) {
        if (tracer_) tracer_->cancel(out.size() + (n - j), out.size() - 1, out.back());
        out.pop_back();
      } else {
        out.push_back(next);
      }
    }
    word_.letters = std::move(out);
  }

  void run() {
    free_reduce();
    std::vector<WordRule> scratch;
    const auto& rules = strategy_rules(space_, scratch);
    if (rules.empty()) return;
    const std::size_t n = word_.size() + 1;
    const std::size_t budget = 4 * n * n + 64;
    std::size_t applied = 0;
    while (true) {
      bool changed = false;
      while (apply_leftmost(rules)) {
        changed = true;
        if (++applied > budget) {
          throw PathError(ErrorKind::Internal, "relation phase exceeded its budget in " + space_.name());
        }
      }
      std::size_t before = word_.size();
      free_reduce();
      if (!changed || word_.size() == before) break;
    }
  }

  const Word& word() const { return word_; }

 private:
  bool apply_leftmost(const std::vector<WordRule>& rules) {
    const auto& w = word_.letters;
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (const auto& rule : rules) {
        const auto& lhs = rule.lhs;
        if (i + lhs.size() > w.size() || !std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) {
          continue;
        }
        if (tracer_) tracer_->apply_window(w.size(), i, rule.pattern, rule.id);
        std::vector<Letter> next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
        next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(i + lhs.size()), w.end());
        word_.letters = std::move(next);
        return true;
      }
    }
    return false;
  }

  const SpacePresentation& space_;
  Word word_;
  TermTracer* tracer_;
};

}  // namespace

Word free_reduce(Word w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const auto& l : w.letters) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  w.letters = std::move(out);
  return w;
}

Word free_normalize(const SpacePresentation& space, const PathExpr& p) { return free_reduce(leaf_word(space, p)); }

NormalForm normalize_word(const SpacePresentation& space, const Word& w) {
  for (const auto& l : w.letters) {
    if (!space.find_generator(l.gen)) throw PathError(ErrorKind::UnknownGenerator, l.gen.name());
  }
  WordNormalizer normalizer(space, w, nullptr);
  normalizer.run();
  return NormalForm{normalizer.word()};
}

NormalForm normalize(const SpacePresentation& space, const PathExpr& p) {
  return normalize_word(space, leaf_word(space, p));
}

bool rw_eq(const SpacePresentation& space, const PathExpr& p, const PathExpr& q) {
  Endpoints ep = endpoints(space, p);
  Endpoints eq = endpoints(space, q);
  if (!(ep == eq)) {
    throw PathError(ErrorKind::EndpointMismatch, ep.src.name() + "->" + ep.tgt.name() + " vs " + eq.src.name() +
                                                     "->" + eq.tgt.name());
  }
  return normalize(space, p) == normalize(space, q);
}

Trace trace(const SpacePresentation& space, const PathExpr& p) {
  Word start = leaf_word(space, p);
  TermTracer tracer(space, p);
  tracer.prepare();
  WordNormalizer normalizer(space, start, &tracer);
  normalizer.run();
  return Trace{NormalForm{normalizer.word()}, std::move(tracer.steps()), tracer.term()};
}

}  // namespace cpaths
