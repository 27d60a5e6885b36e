#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "reclab/rational.hpp"
#include "reclab/torus.hpp"

namespace reclab {

/// Convergent p/q of a continued fraction. Index 0 is 0/1.
struct Convergent {
  BigInt p;
  BigInt q;

  Rational value() const { return Rational(p, q); }
};

/// Convergents 0..J of [0; a_1, ..., a_J]. Throws DomainError on empty input
/// or a non-positive quotient.
std::vector<Convergent> convergents(std::span<const BigInt> quotients);

/// A real number in (0, 1) known through a prefix a_1..a_J of its simple
/// continued fraction expansion. The number itself is never materialized;
/// callers work with convergents and certified error bounds.
class ContinuedFraction {
 public:
  explicit ContinuedFraction(std::vector<BigInt> quotients);

  /// Number of known partial quotients J.
  std::size_t depth() const { return quotients_.size(); }
  /// a_i for 1 <= i <= depth().
  const BigInt& quotient(std::size_t i) const;
  const std::vector<BigInt>& quotients() const { return quotients_; }
  /// p_i/q_i for 0 <= i <= depth().
  const Convergent& convergent(std::size_t i) const;
  const std::vector<Convergent>& all_convergents() const { return convergents_; }

  /// Decimal strings, one per quotient. Convergents are never serialized.
  std::vector<std::string> to_strings() const;
  static ContinuedFraction from_strings(const std::vector<std::string>& quotients);

 private:
  std::vector<BigInt> quotients_;
  std::vector<Convergent> convergents_;
};

/// A rational approximation together with a certified bound on its error.
struct Approximation {
  Rational value;
  Rational error_bound;
};

/// p_J/q_J with |alpha - p_J/q_J| <= 1/(q_J q_{J+1}). Requires J + 1 <= depth.
Approximation approx_with_error(const ContinuedFraction& cf, std::size_t index);

/// Certified approximation from the deepest usable convergent.
Approximation best_approximation(const ContinuedFraction& cf);

/// A real parameter: exact rational or continued-fraction defined.
using RealSpec = std::variant<Rational, ContinuedFraction>;

/// Exact value for rationals, deepest certified approximation otherwise.
Approximation approximate(const RealSpec& x);
bool is_exact(const RealSpec& x);
/// "p/q" for rationals, "cf:[a1,a2,...]" otherwise.
std::string describe(const RealSpec& x);

/// Interval containing ||n alpha||. Exact for rational alpha.
Interval norm_multiple(const Rational& alpha, const BigInt& n);
/// For cf input the interval width is at most `tolerance`; throws
/// PrecisionError when the available depth cannot achieve that.
Interval norm_multiple(const ContinuedFraction& alpha, const BigInt& n, const Rational& tolerance);
/// Uses the deepest convergent without a tolerance requirement.
Interval norm_multiple(const RealSpec& alpha, const BigInt& n);

enum class GrowthMode {
  HellekalekLarcher,  ///< a_{i+1} >= q_i^{2K}
  TheoremB,           ///< a_{i+1} >= q_i^8
};

struct GrowthReport {
  /// holds[i-1] is the verdict for index i, 1 <= i < depth.
  std::vector<bool> holds;
  bool all() const;
};

GrowthReport check_growth(const ContinuedFraction& cf, GrowthMode mode, unsigned smoothness_order = 4);

/// Minimal schedule a_{i+1} = q_i^8 starting from a_1. Requires depth >= 2.
ContinuedFraction build_theoremB_quotients(std::size_t depth, const BigInt& a1);

}  // namespace reclab
