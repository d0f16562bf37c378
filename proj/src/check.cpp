#include "cpaths/check.hpp"

#include <algorithm>
#include <optional>

#include "cpaths/error.hpp"
#include "cpaths/groupoid.hpp"
#include "cpaths/pi1.hpp"
#include "cpaths/rewrite_engine.hpp"
#include "cpaths/syntax.hpp"

namespace cpaths {

namespace {

class SuiteRunner {
 public:
  SuiteRunner(const SpaceRef& space, const CheckOptions& options)
      : space_(space), options_(options), rng_(options.seed) {}

  std::vector<SuiteResult> run() {
    suite("groupoid-laws", [&](SuiteResult& r) { groupoid_laws(r); });
    suite("idempotence", [&](SuiteResult& r) { idempotence(r); });
    if (space_->tag() != GroupTag::None) {
      suite("round-trips", [&](SuiteResult& r) { round_trips(r); });
      suite("homomorphism", [&](SuiteResult& r) { homomorphism(r); });
    }
    suite("oracle-agreement", [&](SuiteResult& r) { oracle_agreement(r); });
    suite("local-confluence", [&](SuiteResult& r) { confluence(r); });
    suite("trace-replay", [&](SuiteResult& r) { trace_replay(r); });
    return results_;
  }

 private:
  template <class F>
  void suite(const std::string& name, F body) {
    SuiteResult r{name, true, 0, ""};
    try {
      body(r);
    } catch (const PathError& e) {
      r.passed = false;
      r.detail = e.what();
    }
    results_.push_back(std::move(r));
  }

  void expect(SuiteResult& r, bool ok, const std::string& what) {
    ++r.checks;
    if (!ok && r.passed) {
      r.passed = false;
      r.detail = what;
    }
  }

  PointId random_point() {
    const auto& pts = space_->points();
    return pts[rng_.below(static_cast<std::uint32_t>(pts.size()))];
  }

  /// Random term between two points, or nullopt when they are not connected
  /// within the size bound.
  std::optional<PathExpr> term(PointId from, PointId to) {
    if (min_term_size(*space_, from, to) > options_.max_size) return std::nullopt;
    return random_term(*space_, rng_, options_.max_size, {from, to});
  }

  PathExpr loop() { return *term(space_->basepoint(), space_->basepoint()); }

  std::string show(const PathExpr& p) const { return render_path(*space_, p); }

  void groupoid_laws(SuiteResult& r) {
    for (std::size_t i = 0; i < options_.samples; ++i) {
      PointId a = random_point(), b = random_point(), c = random_point(), d = random_point();
      auto p = term(a, b), q = term(b, c), s = term(c, d);
      if (!p || !q || !s) continue;
      PathClass x = class_of(space_, *p), y = class_of(space_, *q), z = class_of(space_, *s);
      expect(r, comp(comp(x, y), z) == comp(x, comp(y, z)), "associativity fails for " + show(*p));
      expect(r, comp(identity(space_, a), x) == x && comp(x, identity(space_, b)) == x,
             "unit law fails for " + show(*p));
      expect(r, comp(inv(x), x) == identity(space_, b) && comp(x, inv(x)) == identity(space_, a),
             "inverse law fails for " + show(*p));
    }
  }

  void idempotence(SuiteResult& r) {
    for (std::size_t i = 0; i < options_.samples; ++i) {
      PointId a = random_point(), b = random_point();
      auto p = term(a, b);
      if (!p) continue;
      NormalForm nf = normalize(*space_, *p);
      expect(r, normalize(*space_, term_of(nf.word)) == nf, "normalize is not idempotent on " + show(*p));
    }
  }

  void round_trips(SuiteResult& r) {
    for (std::size_t i = 0; i < options_.samples; ++i) {
      PathClass x = class_of(space_, loop());
      expect(r, decode(space_, encode(space_, x)) == x,
             "decode(encode(x)) != x for " + render_word(*space_, x.word()));
    }
    for (long m = -10; m <= 10; ++m) {
      for (long n = -10; n <= 10; ++n) {
        GroupValue g;
        switch (space_->tag()) {
          case GroupTag::FreeZ: g = IntValue{m}; break;
          case GroupTag::ZxZ: g = PairValue{m, n}; break;
          case GroupTag::ZSemidirectZ: g = SemidirectValue{m, n}; break;
          default: g = ParityValue{((m + n) & 1) != 0}; break;
        }
        expect(r, encode(space_, decode(space_, g)) == g, "encode(decode(g)) != g for " + render(g));
      }
    }
  }

  void homomorphism(SuiteResult& r) {
    for (std::size_t i = 0; i < options_.samples; ++i) {
      PathClass x = class_of(space_, loop()), y = class_of(space_, loop());
      expect(r, homomorphism_check(space_, x, y),
             "encode is not multiplicative on " + render_word(*space_, x.word()) + ", " +
                 render_word(*space_, y.word()));
    }
  }

  void oracle_agreement(SuiteResult& r) {
    // small terms keep the breadth-first search cheap
    CheckOptions small = options_;
    small.max_size = std::min<std::size_t>(options_.max_size, 5);
    std::size_t confirmed = 0, equal_pairs = 0;
    const std::size_t pairs = std::max<std::size_t>(4, options_.samples / 20);
    for (std::size_t i = 0; i < pairs; ++i) {
      PointId a = random_point(), b = random_point();
      if (min_term_size(*space_, a, b) > small.max_size) continue;
      PathExpr p = random_term(*space_, rng_, small.max_size, {a, b});
      PathExpr q = random_term(*space_, rng_, small.max_size, {a, b});
      // every other pair is made equal on purpose so both verdicts are exercised
      if (i % 2 == 0) q = term_of(normalize(*space_, p).word);
      bool eq = rw_eq(*space_, p, q);
      OracleVerdict v = bfs_rw_eq(*space_, p, q, options_.budget);
      equal_pairs += eq;
      confirmed += eq && v.verdict == Verdict::Equal;
      expect(r, v.verdict != Verdict::Equal || eq, "oracle proves " + show(p) + " = " + show(q) + ", normalizer disagrees");
    }
    r.detail = std::to_string(confirmed) + "/" + std::to_string(equal_pairs) + " equal pairs confirmed by search";
  }

  void confluence(SuiteResult& r) {
    for (std::size_t i = 0; i < options_.samples; ++i) {
      PointId a = random_point(), b = random_point();
      auto p = term(a, b);
      if (!p) continue;
      expect(r, local_confluence_probe(*space_, *p), "one-step successor changes the normal form of " + show(*p));
    }
  }

  void trace_replay(SuiteResult& r) {
    for (std::size_t i = 0; i < options_.samples / 2; ++i) {
      PointId a = random_point(), b = random_point();
      auto p = term(a, b);
      if (!p) continue;
      Trace t = trace(*space_, *p);
      PathExpr replayed = *p;
      bool ok = true;
      for (const auto& s : t.steps) {
        auto next = try_apply_step(*space_, replayed, s);
        if (!next) {
          ok = false;
          break;
        }
        replayed = *next;
      }
      ok = ok && leaf_word(*space_, replayed) == t.normal_form.word && t.normal_form == normalize(*space_, *p);
      expect(r, ok, "trace replay fails for " + show(*p));
    }
  }

  SpaceRef space_;
  CheckOptions options_;
  SplitLcg rng_;
  std::vector<SuiteResult> results_;
};

}  // namespace

std::vector<SuiteResult> run_check_suites(const SpaceRef& space, const CheckOptions& options) {
  return SuiteRunner(space, options).run();
}

}  // namespace cpaths
