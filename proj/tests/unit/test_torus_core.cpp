#include <doctest.h>

#include <random>

#include "reclab/odometer.hpp"
#include "reclab/rational.hpp"
#include "reclab/torus.hpp"

using namespace reclab;

TEST_CASE("rational parsing and canonical text") {
  CHECK(Rational::parse("6/8").str() == "3/4");
  CHECK(Rational::parse("-2/-4").str() == "1/2");
  CHECK(Rational::parse("5").str() == "5/1");
  CHECK(Rational::parse(" -7/3 ") == Rational(-7) / Rational(3));
  CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
  CHECK_THROWS_AS(Rational::parse("abc"), DomainError);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), DomainError);
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), DomainError);
}

TEST_CASE("rational floor and fractional part") {
  CHECK(Rational::parse("7/4").floor() == 1);
  CHECK(Rational::parse("-1/3").floor() == -1);
  CHECK(Rational::parse("-1/3").frac() == Rational::parse("2/3"));
  CHECK(Rational(5).frac().is_zero());
}

TEST_CASE("reduce mod 1") {
  CHECK(reduce_mod1(Rational::parse("7/4")).value == Rational::parse("3/4"));
  CHECK(reduce_mod1(Rational::parse("-1/3")).value == Rational::parse("2/3"));
  CHECK(reduce_mod1(Rational(5)).value == Rational(0));
}

TEST_CASE("distance to the nearest integer") {
  CHECK(dist_to_zero(TorusPoint(Rational::parse("3/4"))) == Interval::point(Rational::parse("1/4")));
  CHECK(dist_to_zero(TorusPoint(Rational::parse("1/2"))) == Interval::point(Rational::parse("1/2")));
  CHECK(dist_to_zero(TorusPoint(Rational(0))) == Interval::point(Rational(0)));
  CHECK(norm(Rational::parse("-13/5")) == Rational::parse("2/5"));
}

TEST_CASE("inexact points widen and clamp") {
  const TorusPoint t(Rational::parse("1/100"), Rational::parse("1/50"));
  const Interval d = dist_to_zero(t);
  CHECK(d.lo == Rational(0));
  CHECK(d.hi == Rational::parse("3/100"));
  const TorusPoint h(Rational::parse("1/2"), Rational::parse("1/10"));
  CHECK(dist_to_zero(h).hi == Rational::parse("1/2"));
  CHECK(dist_to_zero(h).lo == Rational::parse("2/5"));
}

TEST_CASE("torus distance is a metric on random rationals") {
  std::mt19937_64 rng(11);
  auto rnd = [&] { return TorusPoint(Rational(static_cast<long>(rng() % 97), 97 + static_cast<long>(rng() % 5))); };
  for (int i = 0; i < 200; ++i) {
    const auto a = rnd(), b = rnd(), c = rnd();
    CHECK(torus_dist(a, b) == torus_dist(b, a));
    CHECK(torus_dist(a, a).hi.is_zero());
    CHECK(torus_dist(a, c).hi <= torus_dist(a, b).hi + torus_dist(b, c).hi);
    CHECK(torus_dist(a, b).hi <= Rational(1, 2));
  }
}

TEST_CASE("l1 distance on product points") {
  const ProductPoint z{std::vector<TorusPoint>{TorusPoint(Rational(0))}, {TorusPoint(Rational(0))}};
  CHECK(l1_dist(z, z).hi.is_zero());
  const ProductPoint a{std::vector<TorusPoint>{TorusPoint(Rational(1, 4))}, {TorusPoint(Rational(0))}};
  const ProductPoint b{std::vector<TorusPoint>{TorusPoint(Rational(3, 4))}, {TorusPoint(Rational(1, 4))}};
  CHECK(l1_dist(a, b) == Interval::point(Rational(3, 4)));
  const ProductPoint c{std::vector<TorusPoint>{TorusPoint(Rational(0))}, {}};
  CHECK_THROWS_AS(l1_dist(a, c), ShapeError);
  const ProductPoint o{OdometerPoint{{1}}, {TorusPoint(Rational(0))}};
  CHECK_THROWS_AS(l1_dist(a, o), ShapeError);
}

TEST_CASE("odometer metric counts the common prefix") {
  CHECK(odometer_dist(OdometerPoint{{1, 0, 1}}, OdometerPoint{{1, 0, 1, 0, 0}}) == Rational(0));
  CHECK(odometer_dist(OdometerPoint{{1, 0, 1}}, OdometerPoint{{1, 0, 0}}) == Rational(1, 4));
  CHECK(odometer_dist(OdometerPoint{{0}}, OdometerPoint{{1}}) == Rational(1));
}

TEST_CASE("odometer addition carries") {
  const Odometer dyadic({2});
  OdometerPoint x{{1, 1, 0}};
  CHECK(dyadic.add(x, 1) == OdometerPoint{{0, 0, 1}});
  const Odometer mixed({2, 3});
  // Direct oracle: n steps of +1 equal one addition of n.
  OdometerPoint p{{1, 2, 1}};
  OdometerPoint q = p;
  for (int i = 0; i < 37; ++i) q = mixed.add(q, 1);
  CHECK(mixed.add(p, 37) == q);
  CHECK(mixed.cylinder_count(3) == 12);
  CHECK(mixed.agreement_depth(12) >= 3);
  CHECK(mixed.agreement_depth(6) == 2);
  CHECK(mixed.agreement_depth(3) == 0);
  CHECK(mixed.prefix_index(mixed.from_index(11, 3), 3) == 11);
}

TEST_CASE("odometer agreement depth matches the digit comparison") {
  const Odometer odo({2, 3, 5});
  for (std::uint64_t n = 1; n < 200; ++n) {
    const OdometerPoint x{{1, 2, 3, 1}};
    const OdometerPoint y = odo.add(x, n);
    std::size_t j = 0;
    while (j < 8 && x.digit(j) == y.digit(j)) ++j;
    CHECK(odo.agreement_depth(n) == j);
  }
}
