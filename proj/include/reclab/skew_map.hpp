#pragma once

#include <string>
#include <variant>
#include <vector>

#include "reclab/odometer.hpp"
#include "reclab/rational.hpp"
#include "reclab/torus.hpp"

namespace reclab {

/// Continuous skewing function from a closed, finitely described class.
///
/// A map is a flat sum of terms; a single-term map is just that term. Every
/// variant has a computable winding number, lift, mean and Lipschitz bound,
/// except Cylinder, which lives on an odometer base and has none of the
/// circle notions.
class SkewMap {
 public:
  /// x -> kx mod 1.
  struct LinearWinding {
    long k;
  };
  /// Lift p(x) = sum c_i x^i on [0, 1] with p(0) = p(1).
  struct PolyLift {
    std::vector<Rational> coeffs;
  };
  /// a_0 + sum_{k>=1} a_k cos(2 pi k x) + b_k sin(2 pi k x).
  /// cos_coeffs = (a_0, a_1, ...), sin_coeffs = (b_1, b_2, ...).
  struct TrigPoly {
    std::vector<Rational> cos_coeffs;
    std::vector<Rational> sin_coeffs;
  };
  struct Constant {
    Rational value;
  };
  /// Locally constant map on an odometer: table indexed by the mixed-radix
  /// value of the first `depth` digits.
  struct Cylinder {
    std::size_t depth;
    std::vector<Rational> table;
  };
  using Term = std::variant<LinearWinding, PolyLift, TrigPoly, Constant, Cylinder>;

  static SkewMap linear(long k);
  /// Throws DomainError unless p(0) = p(1) exactly.
  static SkewMap poly(std::vector<Rational> coeffs);
  static SkewMap trig(std::vector<Rational> cos_coeffs, std::vector<Rational> sin_coeffs);
  static SkewMap constant(const Rational& c);
  static SkewMap cylinder(std::size_t depth, std::vector<Rational> table);
  /// Flattens nested sums.
  static SkewMap sum(const std::vector<SkewMap>& parts);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_sum() const { return terms_.size() != 1; }
  bool has_cylinder() const;
  /// Cylinder depth needed to evaluate on an odometer (0 if none).
  std::size_t cylinder_depth() const;

  /// Text form understood by parse_skew_map.
  std::string describe() const;

 private:
  explicit SkewMap(std::vector<Term> terms) : terms_(std::move(terms)) {}
  std::vector<Term> terms_;
};

/// Parses "linear:k", "poly:c0,c1,...", "trig:cos=a0,a1;sin=b1", "const:c",
/// "cylinder:depth:v0,v1,..." and sums joined by " + ".
SkewMap parse_skew_map(const std::string& text);

/// Throws DomainError for maps with a cylinder term.
long winding(const SkewMap& h);

/// The continuous real lift of a zero-winding map, evaluated at rationals.
class Lift {
 public:
  explicit Lift(SkewMap map);
  /// Enclosure of H(x). Degenerate unless the map has trigonometric terms.
  Interval operator()(const Rational& x) const;
  /// Exact H(x); throws PrecisionError for trigonometric maps.
  Rational exact(const Rational& x) const;
  bool is_exact() const { return exact_; }

 private:
  SkewMap map_;
  bool exact_;
};

/// Throws DomainError for nonzero winding.
Lift lift(const SkewMap& h);
/// Integral of the lift over [0, 1]. Throws DomainError for nonzero winding.
Rational mean(const SkewMap& h);
/// Certified upper bound on the Lipschitz constant (torus metric).
Rational lipschitz_bound(const SkewMap& h);

/// h(x) for circle maps; the radius grows by the Lipschitz bound.
TorusPoint apply(const SkewMap& h, const TorusPoint& x);
/// h(x) on an odometer base; only Cylinder and Constant terms are allowed.
TorusPoint apply(const SkewMap& h, const OdometerPoint& x, const Odometer& odo);

/// Enclosure of the trigonometric polynomial at x (MPFR, 160-bit).
Interval eval_trig(const SkewMap::TrigPoly& t, const Rational& x);

}  // namespace reclab
