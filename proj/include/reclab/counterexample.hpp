#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reclab/cfrac.hpp"
#include "reclab/skew_map.hpp"

namespace reclab {

/// The quartic x^4 - 2x^3 + x^2 - 1/30 as a PolyLift. It agrees at 0 and 1
/// and integrates to zero.
SkewMap htilde();

/// Exact value of the quartic on [0, 1]. Throws DomainError outside.
Rational H_eval(const Rational& x);

/// sum_{i<n} H(x + i/n) through the closed form n x^4 - 2x^3 + x^2/n - 1/(30 n^3),
/// valid for 0 <= x <= 1/n.
Rational riemann_closed_form(std::uint64_t n, const Rational& x);

/// 121/(30 n^3), a bound on |sum_{i<n} H(x + i/n)| for all x. Requires n >= 4
/// and checks that the bound is below 1/12.
Rational riemann_bound(std::uint64_t n);

struct BetaSelection {
  Rational beta;
  /// Positions in n_list with ||n beta|| > threshold.
  std::vector<std::size_t> satisfied;
};

/// Exhaustive search over reduced fractions b/c, c <= denominator_cap,
/// gcd(c, modulus) = 1, in order of increasing c then b; returns the first
/// fraction maximizing the number of satisfied entries. Throws DomainError
/// when no fraction satisfies any entry.
BetaSelection select_beta(std::span<const BigInt> n_list, const Rational& threshold = Rational(1, 3),
                          std::uint64_t denominator_cap = 64, std::uint64_t modulus = 1);

/// Parameters for the hidden-frequency system (x, y) -> (x + alpha, y + H(x) + beta).
struct TheoremBConfig {
  ContinuedFraction alpha;
  Rational beta;
  Rational delta;
  Rational lipschitz;
  /// Convergent indices i whose denominators q_i form the set R.
  std::vector<std::size_t> selected_indices;
};

/// Theorem B schedule of the given depth from a_1, L = lipschitz_bound(H),
/// beta chosen by select_beta over q_1..q_{depth-1}; the surviving indices
/// are recorded as selected.
TheoremBConfig make_theoremB_config(std::size_t depth, const BigInt& a1, const Rational& delta,
                                    std::uint64_t beta_denominator_cap = 64);

enum class Relation { Less, LessEq, Equal, Greater, GreaterEq };

std::string relation_symbol(Relation r);
bool evaluate(Relation r, const Rational& lhs, const Rational& rhs);

/// One checked inequality of the certificate.
struct ChainLink {
  std::string name;
  Rational lhs;
  Relation relation;
  Rational rhs;
  bool holds;
};

struct CertifiedMargin {
  BigInt m;
  Rational sup_bound_on_Hm;
  Rational beta_norm_lower;
  Rational margin;
};

struct GapCertificate {
  std::size_t index = 0;
  std::vector<ChainLink> links;
  std::optional<CertifiedMargin> margin;
  /// First failing link, empty on success.
  std::string failed_link;
  bool success() const { return failed_link.empty(); }
};

/// Runs the inequality chain showing ||H_m(x) + m beta|| > 1/6 for all x,
/// m = q_i. Every link is evaluated in exact arithmetic.
GapCertificate certify_gap(const TheoremBConfig& config, std::size_t index);

struct SpotCheckReport {
  std::size_t samples = 0;
  /// Certified lower bound on min over samples of ||H_m(x) + m beta||.
  std::optional<Rational> minimum;
  std::optional<Rational> argmin;
  /// Bound on the error from replacing alpha by the convergent used.
  Rational alpha_perturbation;
};

/// Direct m-term summation of H_m at random dyadic x (plus x = 0) using a
/// convergent one level deeper than the config provides.
SpotCheckReport spot_check_gap(const TheoremBConfig& config, std::size_t index, std::size_t sample_count,
                               std::uint64_t seed);

/// ||H_m(x) + m beta|| lower bound at one exact x, same method as the spot check.
Rational gap_at(const TheoremBConfig& config, std::size_t index, const Rational& x);

}  // namespace reclab
