#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "reclab/rational.hpp"

namespace reclab {

/// Closed interval [lo, hi] of rationals. Degenerate when lo == hi.
struct Interval {
  Rational lo;
  Rational hi;

  static Interval point(const Rational& v) { return {v, v}; }
  bool is_exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Point of T = R/Z. `value` is the representative in [0, 1); a nonzero
/// `radius` means the true point lies within that torus distance of `value`.
struct TorusPoint {
  Rational value;
  Rational radius;

  TorusPoint() = default;
  /// Reduces `v` mod 1. Radius must be nonnegative.
  explicit TorusPoint(const Rational& v, const Rational& r = Rational(0));

  bool is_exact() const { return radius.is_zero(); }

  friend TorusPoint operator+(const TorusPoint& a, const TorusPoint& b);
  friend TorusPoint operator-(const TorusPoint& a, const TorusPoint& b);
  TorusPoint operator-() const;
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

TorusPoint reduce_mod1(const Rational& q);

/// ||q||: distance from the real number q to the nearest integer.
Rational norm(const Rational& q);

/// ||t|| as an interval; exact points give a degenerate interval.
Interval dist_to_zero(const TorusPoint& t);

/// Torus distance ||a - b||.
Interval torus_dist(const TorusPoint& a, const TorusPoint& b);

/// Point of an odometer: little-endian digit stream, implicitly zero-padded.
struct OdometerPoint {
  std::vector<std::uint32_t> digits;

  /// Digit i (0 beyond the stored prefix).
  std::uint32_t digit(std::size_t i) const { return i < digits.size() ? digits[i] : 0; }
  friend bool operator==(const OdometerPoint& a, const OdometerPoint& b);
};

/// Ultrametric 2^-j, j the length of the longest common digit prefix.
Rational odometer_dist(const OdometerPoint& a, const OdometerPoint& b);

using BasePoint = std::variant<std::vector<TorusPoint>, OdometerPoint>;

/// Point of X x T^k, X either a torus or an odometer.
struct ProductPoint {
  BasePoint base;
  std::vector<TorusPoint> fibers;

  friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

/// Sum of the coordinate metrics (taxicab convention for products).
/// Throws ShapeError when the two points are not of the same shape.
Interval base_dist(const BasePoint& a, const BasePoint& b);
Interval l1_dist(const ProductPoint& a, const ProductPoint& b);

}  // namespace reclab
