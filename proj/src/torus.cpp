#include "reclab/torus.hpp"

#include <algorithm>

namespace reclab {

namespace {

const Rational kHalf(1, 2);

// ||.|| is 1-Lipschitz, so widening by the radius is sound; clamp to [0, 1/2].
Interval widen_norm(const Rational& centre_norm, const Rational& radius) {
  Interval out{centre_norm - radius, centre_norm + radius};
  if (out.lo.sign() < 0) out.lo = Rational(0);
  if (out.hi > kHalf) out.hi = kHalf;
  return out;
}

}  // namespace

TorusPoint::TorusPoint(const Rational& v, const Rational& r) : value(v.frac()), radius(r) {
  if (r.sign() < 0) throw DomainError("negative torus radius");
}

TorusPoint operator+(const TorusPoint& a, const TorusPoint& b) {
  return TorusPoint(a.value + b.value, a.radius + b.radius);
}

TorusPoint operator-(const TorusPoint& a, const TorusPoint& b) {
  return TorusPoint(a.value - b.value, a.radius + b.radius);
}

TorusPoint TorusPoint::operator-() const { return TorusPoint(-value, radius); }

TorusPoint reduce_mod1(const Rational& q) { return TorusPoint(q); }

Rational norm(const Rational& q) {
  const Rational f = q.frac();
  return min(f, Rational(1) - f);
}

Interval dist_to_zero(const TorusPoint& t) {
  const Rational n = norm(t.value);
  if (t.is_exact()) return Interval::point(n);
  return widen_norm(n, t.radius);
}

Interval torus_dist(const TorusPoint& a, const TorusPoint& b) { return dist_to_zero(a - b); }

bool operator==(const OdometerPoint& a, const OdometerPoint& b) {
  const std::size_t len = std::max(a.digits.size(), b.digits.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (a.digit(i) != b.digit(i)) return false;
  }
  return true;
}

Rational odometer_dist(const OdometerPoint& a, const OdometerPoint& b) {
  const std::size_t len = std::max(a.digits.size(), b.digits.size());
  for (std::size_t j = 0; j < len; ++j) {
    if (a.digit(j) != b.digit(j)) return Rational(BigInt(1), pow(BigInt(2), static_cast<unsigned>(j)));
  }
  return Rational(0);
}

Interval base_dist(const BasePoint& a, const BasePoint& b) {
  if (a.index() != b.index()) throw ShapeError("base points of different kinds");
  if (const auto* ta = std::get_if<std::vector<TorusPoint>>(&a)) {
    const auto& tb = std::get<std::vector<TorusPoint>>(b);
    if (ta->size() != tb.size()) throw ShapeError("torus base dimensions differ");
    Interval sum = Interval::point(Rational(0));
    for (std::size_t i = 0; i < ta->size(); ++i) sum = sum + torus_dist((*ta)[i], tb[i]);
    return sum;
  }
  return Interval::point(odometer_dist(std::get<OdometerPoint>(a), std::get<OdometerPoint>(b)));
}

Interval l1_dist(const ProductPoint& a, const ProductPoint& b) {
  if (a.fibers.size() != b.fibers.size()) throw ShapeError("fiber counts differ");
  Interval sum = base_dist(a.base, b.base);
  for (std::size_t i = 0; i < a.fibers.size(); ++i) sum = sum + torus_dist(a.fibers[i], b.fibers[i]);
  return sum;
}

}  // namespace reclab
