#include <doctest.h>

#include <algorithm>

#include "cpaths/error.hpp"
#include "cpaths/oracle.hpp"
#include "cpaths/rewrite_engine.hpp"
#include "cpaths/syntax.hpp"

using namespace cpaths;

namespace {

PathExpr g(const char* name) { return PathExpr::gen(Symbol::intern(name)); }
PathExpr t(const PathExpr& p, const PathExpr& q) { return PathExpr::trans(p, q); }
PathExpr inv(const PathExpr& p) { return PathExpr::symm(p); }
PathExpr refl(const char* pt) { return PathExpr::refl(Symbol::intern(pt)); }

RuleId rule(RuleKind k) { return RuleId{k, Symbol()}; }
RuleId rel_fwd(const char* name) { return RuleId{RuleKind::RelationFwd, Symbol::intern(name)}; }

Word word(const SpacePresentation& s, std::initializer_list<std::pair<const char*, int>> letters) {
  Word w{{}, s.basepoint(), s.basepoint()};
  for (auto [name, sign] : letters) w.letters.push_back({Symbol::intern(name), sign});
  return w;
}

bool oracle_equal(const SpacePresentation& s, const PathExpr& p, const PathExpr& q, std::size_t cap = 0) {
  return bfs_rw_eq(s, p, q, Budget{200000, cap}).verdict == Verdict::Equal;
}

// Independent reading: push inverses down by recursion, then cancel with a stack.
void leaves(const SpacePresentation& s, const PathExpr& p, bool flipped, std::vector<Letter>& out) {
  switch (p.kind()) {
    case NodeKind::Refl: return;
    case NodeKind::Gen: out.push_back({p.symbol(), flipped ? -1 : 1}); return;
    case NodeKind::Symm: leaves(s, p.child(0), !flipped, out); return;
    case NodeKind::Trans:
      leaves(s, p.child(flipped ? 1 : 0), flipped, out);
      leaves(s, p.child(flipped ? 0 : 1), flipped, out);
      return;
  }
}

std::vector<Letter> naive_free_reduce(const SpacePresentation& s, const PathExpr& p) {
  std::vector<Letter> seq, stack;
  leaves(s, p, false, seq);
  for (const Letter& l : seq) {
    if (!stack.empty() && stack.back().gen == l.gen && stack.back().sign == -l.sign)
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return stack;
}

}  // namespace

TEST_CASE("redexes") {
  SpaceRef circle = builtin("circle"), rp2 = builtin("rp2");
  auto rs = redexes(*circle, t(refl("pt"), g("a")));
  CHECK(std::count(rs.begin(), rs.end(), RewriteStep{rule(RuleKind::TransReflLeft), {}}) == 1);
  CHECK(redexes(*circle, g("a")).empty());
  auto rp = redexes(*rp2, t(g("alpha"), g("alpha")));
  CHECK(std::count(rp.begin(), rp.end(), RewriteStep{rel_fwd("loopSquare"), {}}) == 1);
  // backward relation use appears too
  auto back = redexes(*rp2, refl("pt"), RuleScope::Primitive);
  CHECK(std::count(back.begin(), back.end(), RewriteStep{RuleId{RuleKind::RelationBwd, Symbol::intern("loopSquare")}, {}}) == 1);
}

TEST_CASE("apply_step") {
  SpaceRef circle = builtin("circle");
  CHECK(apply_step(*circle, t(refl("pt"), g("a")), {rule(RuleKind::TransReflLeft), {}}) == g("a"));
  CHECK(apply_step(*circle, t(inv(g("a")), g("a")), {rule(RuleKind::SymmTransCancel), {}}) == refl("pt"));
  CHECK(apply_step(*circle, inv(t(g("a"), g("a"))), {rule(RuleKind::SymmTransCongr), {}}) ==
        t(inv(g("a")), inv(g("a"))));
  CHECK(apply_step(*circle, t(t(g("a"), g("a")), g("a")), {rule(RuleKind::AssocLeft), {}}) ==
        t(g("a"), t(g("a"), g("a"))));
  CHECK(apply_step(*circle, t(refl("pt"), inv(inv(g("a")))), {rule(RuleKind::SymmSymm), {1}}) ==
        t(refl("pt"), g("a")));
  try {
    apply_step(*circle, g("a"), {rule(RuleKind::TransReflLeft), {}});
    FAIL("expected an error");
  } catch (const PathError& e) {
    CHECK(e.kind() == ErrorKind::StepNotEnabled);
  }
  CHECK_FALSE(try_apply_step(*circle, g("a"), {rule(RuleKind::SymmSymm), {0}}));
}

TEST_CASE("free_normalize") {
  SpaceRef circle = builtin("circle"), torus = builtin("torus");
  CHECK(free_normalize(*circle, t(g("a"), inv(g("a")))).empty());
  Word w = free_normalize(*circle, inv(t(g("a"), g("a"))));
  CHECK(w == word(*circle, {{"a", -1}, {"a", -1}}));
  CHECK(oracle_equal(*circle, inv(t(g("a"), g("a"))), t(inv(g("a")), inv(g("a")))));
  PathExpr p = t(t(zpow(*torus, g("a"), 2), g("b")), zpow(*torus, g("a"), -2));
  CHECK(free_normalize(*torus, p) == word(*torus, {{"a", 1}, {"a", 1}, {"b", 1}, {"a", -1}, {"a", -1}}));
}

TEST_CASE("free_normalize agrees with naive stack cancellation") {
  for (auto name : kBuiltinNames) {
    const SpacePresentation& s = *builtin(name);
    SplitLcg rng(42);
    for (int i = 0; i < 400; ++i) {
      PointId a = s.points()[rng.below(s.points().size())], b = s.points()[rng.below(s.points().size())];
      PathExpr p = random_term(s, rng, 25, {a, b});
      Word w = free_normalize(s, p);
      CHECK(w.letters == naive_free_reduce(s, p));
      CHECK(is_freely_reduced(w));
      CHECK(w.src == a);
      CHECK(w.tgt == b);
    }
  }
}

TEST_CASE("normalize examples") {
  SpaceRef klein = builtin("klein"), rp2 = builtin("rp2"), torus = builtin("torus"), cyl = builtin("cylinder");
  CHECK(normalize(*klein, t(g("b"), g("a"))).word == word(*klein, {{"a", 1}, {"b", -1}}));
  CHECK(normalize(*klein, t(t(g("a"), g("b")), inv(g("a")))).word == word(*klein, {{"b", -1}}));
  CHECK(normalize(*rp2, zpow(*rp2, g("alpha"), 3)).word == word(*rp2, {{"alpha", 1}}));
  CHECK(normalize(*torus, t(t(g("a"), g("b")), inv(g("a")))).word == word(*torus, {{"b", 1}}));
  CHECK(normalize(*cyl, t(t(g("s"), g("l1")), inv(g("s")))).word == word(*cyl, {{"l0", 1}}));

  // the same facts established by search over the raw rules
  CHECK(oracle_equal(*klein, t(g("b"), g("a")), t(g("a"), inv(g("b")))));
  CHECK(oracle_equal(*rp2, zpow(*rp2, g("alpha"), 3), g("alpha")));
  CHECK(oracle_equal(*torus, t(t(g("a"), g("b")), inv(g("a"))), g("b")));
  CHECK(oracle_equal(*cyl, t(t(g("s"), g("l1")), inv(g("s"))), g("l0")));
}

TEST_CASE("rw_eq examples") {
  SpaceRef circle = builtin("circle"), torus = builtin("torus"), klein = builtin("klein");
  CHECK(rw_eq(*circle, t(refl("pt"), g("a")), g("a")));
  CHECK(rw_eq(*torus, t(g("a"), g("b")), t(g("b"), g("a"))));
  CHECK_FALSE(rw_eq(*klein, t(g("a"), g("b")), t(g("b"), g("a"))));
  CHECK(bfs_rw_eq(*klein, t(g("a"), g("b")), t(g("b"), g("a"))).verdict != Verdict::Equal);
  try {
    rw_eq(*builtin("cylinder"), g("s"), g("l0"));
    FAIL("expected an error");
  } catch (const PathError& e) {
    CHECK(e.kind() == ErrorKind::EndpointMismatch);
  }
}

TEST_CASE("normal forms have the documented shape") {
  SplitLcg rng(5);
  auto loop = [&](const SpacePresentation& s) { return random_term(s, rng, 30, {s.basepoint(), s.basepoint()}); };
  auto gens_in_order = [](const Word& w, const char* first) {
    // every `first` letter precedes every other letter, and each generator has one sign
    bool seen_other = false;
    for (const Letter& l : w.letters) {
      if (l.gen == Symbol::intern(first)) {
        if (seen_other) return false;
      } else {
        seen_other = true;
      }
      if (l.sign != w.letters.front().sign && l.gen == w.letters.front().gen) return false;
    }
    return true;
  };
  for (int i = 0; i < 300; ++i) {
    const SpacePresentation& torus = *builtin("torus");
    const SpacePresentation& klein = *builtin("klein");
    const SpacePresentation& rp2 = *builtin("rp2");
    const SpacePresentation& cyl = *builtin("cylinder");
    CHECK(gens_in_order(normalize(torus, loop(torus)).word, "a"));
    CHECK(gens_in_order(normalize(klein, loop(klein)).word, "a"));
    CHECK(normalize(rp2, loop(rp2)).word.size() <= 1);
    Word c = normalize(cyl, loop(cyl)).word;
    CHECK(std::all_of(c.letters.begin(), c.letters.end(), [&](const Letter& l) {
      return l.gen == Symbol::intern("l0") && l.sign == c.letters.front().sign;
    }));
  }
}

TEST_CASE("cylinder normal forms between the two boundary circles") {
  const SpacePresentation& cyl = *builtin("cylinder");
  // l1 is eliminated everywhere, leaving l0^n s
  CHECK(normalize(cyl, t(g("s"), g("l1"))).word == Word{{{Symbol::intern("l0"), 1}, {Symbol::intern("s"), 1}},
                                                         Symbol::intern("b0"), Symbol::intern("b1")});
  CHECK(normalize(cyl, g("l1")).word == Word{{{Symbol::intern("s"), -1}, {Symbol::intern("l0"), 1}, {Symbol::intern("s"), 1}},
                                              Symbol::intern("b1"), Symbol::intern("b1")});
  CHECK(rw_eq(cyl, t(inv(g("s")), t(g("l0"), g("s"))), g("l1")));
}

TEST_CASE("normalize is idempotent") {
  for (auto name : kBuiltinNames) {
    const SpacePresentation& s = *builtin(name);
    SplitLcg rng(77);
    for (int i = 0; i < 300; ++i) {
      PointId a = s.points()[rng.below(s.points().size())], b = s.points()[rng.below(s.points().size())];
      PathExpr p = random_term(s, rng, 30, {a, b});
      NormalForm nf = normalize(s, p);
      CHECK(normalize(s, term_of(nf.word)) == nf);
      CHECK(normalize_word(s, nf.word) == nf);
    }
  }
}

TEST_CASE("every enabled step preserves endpoints and the normal form") {
  for (auto name : kBuiltinNames) {
    const SpacePresentation& s = *builtin(name);
    SplitLcg rng(91);
    for (int i = 0; i < 150; ++i) {
      PointId a = s.points()[rng.below(s.points().size())], b = s.points()[rng.below(s.points().size())];
      PathExpr p = random_term(s, rng, 14, {a, b});
      NormalForm nf = normalize(s, p);
      for (const auto& step : redexes(s, p, RuleScope::All)) {
        PathExpr q = apply_step(s, p, step);
        CHECK(endpoints(s, q) == Endpoints{a, b});
        CHECK(normalize(s, q) == nf);
      }
    }
  }
}

TEST_CASE("derived rules hold under the raw relations") {
  for (auto name : kBuiltinNames) {
    const SpacePresentation& s = *builtin(name);
    for (const auto& d : derived_rules(s)) {
      CAPTURE(d.name.name());
      CHECK(endpoints(s, d.lhs) == endpoints(s, d.rhs));
      const Budget budget{400000, std::max(d.lhs.size(), d.rhs.size()) + 8};
      bool proved = bfs_rw_eq(s, d.lhs, d.rhs, budget).verdict == Verdict::Equal;
      if (!proved && d.lhs.kind() == NodeKind::Symm) {
        // rewriting is a congruence, so an inverse rule follows from the rule
        // it inverts plus a groupoid-only step
        for (const auto& e : derived_rules(s)) {
          if (e.lhs == d.lhs.child(0) && bfs_rw_eq(s, e.lhs, e.rhs, budget).verdict == Verdict::Equal &&
              bfs_rw_eq(s, inv(e.rhs), d.rhs, budget).verdict == Verdict::Equal)
            proved = true;
        }
      }
      CHECK(proved);
    }
  }
  CHECK(derived_rules(*builtin("circle")).empty());
  CHECK(derived_rules(*builtin("klein")).size() == 4);
}

TEST_CASE("klein letter swaps follow b^e a^d = a^d b^-e") {
  const SpacePresentation& k = *builtin("klein");
  for (int e : {1, -1}) {
    for (int d : {1, -1}) {
      PathExpr b = e == 1 ? g("b") : inv(g("b"));
      PathExpr a = d == 1 ? g("a") : inv(g("a"));
      PathExpr swapped = t(a, e == 1 ? inv(g("b")) : g("b"));
      CAPTURE(e);
      CAPTURE(d);
      CHECK(rw_eq(k, t(b, a), swapped));
      CHECK(oracle_equal(k, t(b, a), swapped, 10));
    }
  }
}

TEST_CASE("trace examples") {
  SpaceRef circle = builtin("circle"), rp2 = builtin("rp2");
  Trace t0 = trace(*circle, g("a"));
  CHECK(t0.normal_form.word == word(*circle, {{"a", 1}}));
  CHECK(t0.steps.empty());

  Trace t1 = trace(*circle, t(g("a"), inv(g("a"))));
  CHECK(t1.normal_form.word.empty());
  CHECK(t1.steps == std::vector<RewriteStep>{{rule(RuleKind::TransSymmCancel), {}}});

  Trace t2 = trace(*rp2, t(g("alpha"), g("alpha")));
  CHECK(t2.normal_form.word.empty());
  CHECK(t2.steps == std::vector<RewriteStep>{{rel_fwd("loopSquare"), {}}});
}

TEST_CASE("trace replay reproduces the normal form") {
  for (auto name : kBuiltinNames) {
    const SpacePresentation& s = *builtin(name);
    SplitLcg rng(123);
    for (int i = 0; i < 100; ++i) {
      PointId a = s.points()[rng.below(s.points().size())], b = s.points()[rng.below(s.points().size())];
      PathExpr p = random_term(s, rng, 20, {a, b});
      Trace tr = trace(s, p);
      PathExpr q = p;
      for (const auto& step : tr.steps) q = apply_step(s, q, step);
      CHECK(q == tr.result);
      CHECK(leaf_word(s, q) == tr.normal_form.word);
      CHECK(tr.normal_form == normalize(s, p));
    }
  }
}

TEST_CASE("step serialization") {
  RewriteStep s{rule(RuleKind::SymmTransCongr), {0, 1}};
  CHECK(to_string(s) == "symm_trans_congr @ 0.1");
  CHECK(to_string(RewriteStep{rule(RuleKind::TransReflLeft), {}}) == "trans_refl_left @ root");
  CHECK(to_string(RewriteStep{rel_fwd("loopSquare"), {1}}) == "rel_fwd:loopSquare @ 1");
  CHECK(parse_step("symm_trans_congr @ 0.1") == s);
  CHECK(parse_step("derived:klein_swap_b_a @ root") ==
        RewriteStep{RuleId{RuleKind::Derived, Symbol::intern("klein_swap_b_a")}, {}});
  CHECK_FALSE(parse_step("no_such_rule @ root"));
  CHECK_FALSE(parse_step("symm_symm @ 0.x"));
  CHECK_FALSE(parse_step("symm_symm 0"));
  for (int k = 0; k <= static_cast<int>(RuleKind::AssocRight); ++k) {
    RuleId r = rule(static_cast<RuleKind>(k));
    CHECK(parse_rule_name(rule_name(r)) == r);
  }
}

TEST_CASE("word helpers") {
  const SpacePresentation& torus = *builtin("torus");
  Word w = word(torus, {{"a", 1}, {"b", -1}});
  CHECK(to_debug_string(w) == "a b^-1");
  CHECK(to_debug_string(word(torus, {})) == "e");
  CHECK(inverse(w) == word(torus, {{"b", 1}, {"a", -1}}));
  CHECK(free_reduce(concat(w, inverse(w))).empty());
  CHECK_FALSE(is_freely_reduced(concat(w, inverse(w))));
  CHECK(term_of(word(torus, {})) == refl("pt"));
  CHECK(term_of(w) == t(g("a"), inv(g("b"))));
}

TEST_CASE("file-defined spaces normalize with forward relations") {
  SpaceRef s = parse_space_file("point p\ngen x : p -> p\ngen y : p -> p\nrel xy : x * y = y * x\nbase p\n", "f");
  CHECK(rw_eq(*s, parse_path(*s, "x * y * ~x"), parse_path(*s, "y")));
  CHECK(normalize(*s, parse_path(*s, "x * x * y")).word.size() == 3);
}
