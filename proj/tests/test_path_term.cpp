#include <doctest.h>

#include "cpaths/error.hpp"
#include "cpaths/oracle.hpp"
#include "cpaths/pi1.hpp"
#include "cpaths/space_presentation.hpp"

using namespace cpaths;

namespace {

PathExpr g(const char* name) { return PathExpr::gen(Symbol::intern(name)); }
PathExpr t(const PathExpr& p, const PathExpr& q) { return PathExpr::trans(p, q); }
PathExpr inv(const PathExpr& p) { return PathExpr::symm(p); }
PathExpr refl(const char* pt) { return PathExpr::refl(Symbol::intern(pt)); }

ErrorKind error_of(auto&& f) {
  try {
    f();
  } catch (const PathError& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("endpoints") {
  SpaceRef circle = builtin("circle"), cyl = builtin("cylinder");
  CHECK(endpoints(*circle, t(g("a"), g("a"))) == Endpoints{Symbol::intern("pt"), Symbol::intern("pt")});
  CHECK(endpoints(*cyl, g("s")) == Endpoints{Symbol::intern("b0"), Symbol::intern("b1")});
  CHECK(endpoints(*cyl, inv(g("s"))) == Endpoints{Symbol::intern("b1"), Symbol::intern("b0")});
  CHECK(error_of([&] { endpoints(*cyl, t(g("l0"), g("l1"))); }) == ErrorKind::EndpointMismatch);
  CHECK(error_of([&] { endpoints(*circle, g("zz")); }) == ErrorKind::UnknownGenerator);
  CHECK(error_of([&] { endpoints(*circle, refl("b0")); }) == ErrorKind::UnknownPoint);
  CHECK_FALSE(well_formed(*cyl, t(g("l0"), g("l1"))));
}

TEST_CASE("zpow") {
  SpaceRef circle = builtin("circle");
  CHECK(zpow(*circle, g("a"), 0) == refl("pt"));
  CHECK(zpow(*circle, g("a"), 3) == t(t(g("a"), g("a")), g("a")));
  CHECK(zpow(*circle, g("a"), -2) == t(inv(g("a")), inv(g("a"))));
  CHECK(zpow(*circle, g("a"), 3).size() == 5);
  CHECK(error_of([] { zpow(*builtin("cylinder"), g("s"), 2); }) == ErrorKind::NotALoop);
}

TEST_CASE("size counts nodes") {
  CHECK(refl("pt").size() == 1);
  CHECK(t(g("a"), inv(g("a"))).size() == 4);
}

TEST_CASE("debug rendering") {
  CHECK(to_debug_string(t(g("a"), inv(g("a")))) == "Trans(Gen a, Symm(Gen a))");
  CHECK(to_debug_string(refl("pt")) == "Refl pt");
}

TEST_CASE("positions address subterms") {
  PathExpr p = t(inv(t(g("a"), g("b"))), refl("pt"));
  CHECK(p.subterm({}) == p);
  CHECK(p.subterm({0}) == inv(t(g("a"), g("b"))));
  CHECK(p.subterm({0, 0, 1}) == g("b"));
  CHECK(p.subterm({1}) == refl("pt"));
  CHECK_FALSE(p.has_position({1, 0}));
  CHECK_FALSE(p.has_position({2}));
  CHECK(error_of([&] { p.subterm({0, 1}); }) == ErrorKind::InvalidPosition);
  CHECK(p.replace({0, 0, 1}, g("a")) == t(inv(t(g("a"), g("a"))), refl("pt")));
  CHECK(p.replace({}, g("a")) == g("a"));
  CHECK(p.child(1) == refl("pt"));
  CHECK(position_to_string({}) == "root");
  CHECK(position_to_string({0, 1}) == "0.1");
}

TEST_CASE("letters") {
  CHECK(g("a").is_letter());
  CHECK(inv(g("a")).is_letter());
  CHECK_FALSE(inv(inv(g("a"))).is_letter());
  CHECK_FALSE(refl("pt").is_letter());
}

TEST_CASE("map_path along the retractions") {
  const SpaceMap& cyl = cylinder_to_circle();
  const SpaceMap& mob = mobius_to_circle();
  CHECK(map_path(cyl, g("l0")) == g("a"));
  CHECK(map_path(cyl, g("s")) == refl("pt"));
  CHECK(map_path(cyl, refl("b1")) == refl("pt"));
  CHECK(map_path(mob, t(g("a"), inv(g("a")))) == t(g("a"), inv(g("a"))));
}

TEST_CASE("space maps that break a relation are rejected") {
  SpaceRef torus = builtin("torus"), klein = builtin("klein");
  std::unordered_map<PointId, PointId> points{{Symbol::intern("pt"), Symbol::intern("pt")}};
  std::unordered_map<GenId, PathExpr> identity_on_gens{{Symbol::intern("a"), g("a")}, {Symbol::intern("b"), g("b")}};
  CHECK(error_of([&] { SpaceMap::create(torus, klein, points, identity_on_gens); }) == ErrorKind::InvalidSpaceMap);
  // sending b to refl kills both relations
  std::unordered_map<GenId, PathExpr> collapse{{Symbol::intern("a"), g("a")}, {Symbol::intern("b"), refl("pt")}};
  CHECK_NOTHROW(SpaceMap::create(klein, builtin("circle"), points, collapse));
  CHECK(error_of([&] { SpaceMap::create(klein, builtin("circle"), {}, collapse); }) == ErrorKind::InvalidSpaceMap);
}

TEST_CASE("map_path properties on random terms") {
  const SpaceMap& m = cylinder_to_circle();
  const SpacePresentation& src = m.source();
  SplitLcg rng(11);
  for (int i = 0; i < 300; ++i) {
    PointId a = src.points()[rng.below(2)], b = src.points()[rng.below(2)];
    PathExpr p = random_term(src, rng, 14, {a, b});
    PathExpr q = random_term(src, rng, 14, {b, a});
    PathExpr mp = map_path(m, p);
    CHECK(endpoints(m.target(), mp) == Endpoints{m.map_point(a), m.map_point(b)});
    CHECK(map_path(m, t(p, q)) == t(mp, map_path(m, q)));
    CHECK(map_path(m, inv(p)) == inv(mp));
  }
  CHECK(map_path(m, refl("b0")) == refl("pt"));
}

TEST_CASE("zpow preserves endpoints") {
  for (auto name : kBuiltinNames) {
    const SpacePresentation& s = *builtin(name);
    for (const auto& gen : s.generators()) {
      if (gen.src != gen.tgt) continue;
      for (long n = -6; n <= 6; ++n)
        CHECK(endpoints(s, zpow(s, PathExpr::gen(gen.id), n)) == Endpoints{gen.src, gen.src});
    }
  }
}

TEST_CASE("structural equality and hashing") {
  CHECK(t(g("a"), g("b")) == t(g("a"), g("b")));
  CHECK_FALSE(t(t(g("a"), g("b")), g("a")) == t(g("a"), t(g("b"), g("a"))));
  CHECK(std::hash<PathExpr>{}(t(g("a"), g("b"))) == std::hash<PathExpr>{}(t(g("a"), g("b"))));
}
