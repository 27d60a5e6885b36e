#include <doctest.h>

#include <random>

#include "reclab/counterexample.hpp"
#include "reclab/dynsys.hpp"
#include "reclab/skew_map.hpp"

using namespace reclab;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

BaseSystem rotation(std::initializer_list<const char*> alpha) {
  TorusRotation r;
  for (const char* a : alpha) r.alpha.push_back(q(a));
  return r;
}

ProductPoint point(const Rational& x, std::initializer_list<Rational> fibers) {
  ProductPoint p{std::vector<TorusPoint>{TorusPoint(x)}, {}};
  for (const auto& f : fibers) p.fibers.emplace_back(f);
  return p;
}

}  // namespace

TEST_CASE("winding numbers") {
  CHECK(winding(SkewMap::linear(2)) == 2);
  CHECK(winding(htilde()) == 0);
  CHECK(winding(SkewMap::sum({SkewMap::linear(1), SkewMap::linear(-3)})) == -2);
  CHECK(winding(SkewMap::constant(q("1/4"))) == 0);
  CHECK_THROWS_AS(winding(SkewMap::cylinder(1, {q("0"), q("1/2")})), DomainError);
}

TEST_CASE("lifts") {
  CHECK(lift(htilde()).exact(q("0")) == q("-1/30"));
  CHECK(lift(SkewMap::constant(q("1/4"))).exact(q("3/5")) == q("1/4"));
  CHECK_THROWS_AS(lift(SkewMap::linear(1)), DomainError);
  CHECK_THROWS_AS(SkewMap::poly({q("0"), q("1")}), DomainError);
}

TEST_CASE("means") {
  CHECK(mean(htilde()) == Rational(0));
  CHECK(mean(SkewMap::constant(q("5/4"))) == q("1/4"));
  CHECK(mean(SkewMap::trig({q("3/7"), q("1")}, {q("2")})) == q("3/7"));
}

TEST_CASE("lipschitz bounds") {
  CHECK(lipschitz_bound(htilde()) == 12);
  CHECK(lipschitz_bound(SkewMap::linear(3)) == 3);
  CHECK(lipschitz_bound(SkewMap::constant(q("1/3"))) == 0);
  // Certified: at least 2 pi for sin(2 pi x).
  const Rational trig = lipschitz_bound(SkewMap::trig({q("0")}, {q("1")}));
  CHECK(trig >= q("6283185/1000000"));
}

TEST_CASE("trig enclosure contains known values") {
  const SkewMap s = SkewMap::trig({q("1/2"), q("1")}, {q("1")});
  // 1/2 + cos(2 pi x) + sin(2 pi x) at x = 1/4 is 3/2, at x = 1/2 is -1/2.
  CHECK(lift(s)(q("1/4")).contains(q("3/2")));
  CHECK(lift(s)(q("1/2")).contains(q("-1/2")));
  CHECK(lift(s)(q("1/4")).width() < q("1/1000000000000"));
}

TEST_CASE("skew map text round trip") {
  for (const char* text : {"linear:2", "poly:-1/30,0,1,-2,1", "const:1/4", "linear:1 + const:1/3",
                           "trig:cos=1/2,1;sin=1", "cylinder:2:0,1/2,1/4,3/4"}) {
    const SkewMap h = parse_skew_map(text);
    CHECK(parse_skew_map(h.describe()).describe() == h.describe());
  }
  CHECK_THROWS_AS(parse_skew_map("bogus:1"), DomainError);
}

TEST_CASE("cocycle sums") {
  const BaseSystem r4 = rotation({"1/4"});
  const BasePoint x0 = base_origin(r4);
  CHECK(cocycle_sum(r4, htilde(), 0, x0).value.value == Rational(0));
  CHECK(cocycle_sum(r4, SkewMap::constant(q("1/8")), 4, x0).value.value == q("1/2"));
  const CocycleResult c = cocycle_sum(r4, htilde(), 4, x0);
  REQUIRE(c.lift_sum);
  CHECK(*c.lift_sum == q("-1/1920"));
  CHECK(*c.lift_sum == riemann_closed_form(4, q("0")));
}

TEST_CASE("tower orbits") {
  SkewTower t{rotation({"1/3"}), SkewMap::constant(q("1/3")), {}};
  const ProductPoint p = point(q("0"), {q("0")});
  CHECK(tower_orbit(t, p, 0) == p);
  CHECK(tower_orbit(t, p, 3) == p);
  CHECK(tower_orbit(t, p, 1) == point(q("1/3"), {q("1/3")}));
  CHECK_THROWS_AS(tower_orbit(t, point(q("0"), {}), 1), ShapeError);
}

TEST_CASE("binomial polynomial") {
  CHECK(binom_poly({TorusPoint(q("2/7"))}, 100).value == q("2/7"));
  CHECK(binom_poly({TorusPoint(q("1/3")), TorusPoint(q("1/5"))}, 2).value == q("13/15"));
  CHECK(binom_poly({TorusPoint(q("1/3")), TorusPoint(q("1/5")), TorusPoint(q("1/7"))}, 0).value == q("1/7"));
}

TEST_CASE("iterated identity skew closed form against iteration") {
  std::mt19937_64 rng(3);
  for (std::size_t k = 1; k <= 3; ++k) {
    const BaseSystem base = rotation({"3/11"});
    const SkewMap h = htilde();
    IteratedSkewState s{base_origin(base), {}};
    for (std::size_t j = 0; j < k; ++j) s.t.emplace_back(Rational(static_cast<long>(rng() % 13), 13));
    const SkewTower tower = iterated_id_tower(base, h, k);
    ProductPoint p{s.x, s.t};
    const auto series = iterated_id_closed_form_series(base, h, s, 120);
    for (std::uint64_t n = 0; n <= 120; ++n) {
      CHECK(series[n] == p);
      p = tower_step(tower, p);
    }
    CHECK(iterated_id_closed_form(base, h, s, 500) == tower_orbit(tower, ProductPoint{s.x, s.t}, 500));
  }
}

TEST_CASE("odometer towers with cylinder maps") {
  SkewTower t{Odometer({2}), SkewMap::cylinder(1, {q("0"), q("1/2")}), {}};
  t.validate();
  ProductPoint p = t.origin();
  // h depends on the first digit only: sum over a period of 2 is 1/2.
  CHECK(tower_orbit(t, p, 2).fibers[0].value == q("1/2"));
  CHECK(tower_orbit(t, p, 4).fibers[0].value == Rational(0));
  SkewTower bad{Odometer({2}), htilde(), {}};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("tower configs") {
  const SkewTower t = parse_tower_config("# comment\nbase = rotation\nalpha = 1/4 ; 1/3\nh1 = linear:1\nfibers = const:1/2\n");
  CHECK(t.depth() == 2);
  CHECK(std::get<TorusRotation>(t.base).alpha.size() == 2);
  const SkewTower o = parse_tower_config("base = odometer\nbases = 2,3\n");
  CHECK(std::get<Odometer>(o.base).bases.size() == 2);
  CHECK_THROWS_AS(parse_tower_config("base = rotation\nalpha = 1/2\ncolour = red\n"), DomainError);
  CHECK(std::holds_alternative<ContinuedFraction>(parse_real_spec("thmb:3:3")));
}

TEST_CASE("continued fraction rotations carry a radius") {
  TorusRotation r;
  r.alpha.push_back(build_theoremB_quotients(3, BigInt(3)));
  const BaseSystem base = r;
  const BasePoint x = base_step(base, base_origin(base), 19684);
  const auto& c = std::get<std::vector<TorusPoint>>(x);
  CHECK(c[0].radius > Rational(0));
  CHECK(base_return_distance(base, 19684).hi < Rational(1, 145 * 19684));
}
