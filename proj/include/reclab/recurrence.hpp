#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "reclab/cfrac.hpp"
#include "reclab/dynsys.hpp"
#include "reclab/torus.hpp"

namespace reclab {

/// Finite subset of {1..N} stamped with its horizon N.
class WindowSet {
 public:
  WindowSet() = default;
  /// Sorts and deduplicates; throws DomainError if a member is outside [1, N].
  WindowSet(std::uint64_t horizon, std::vector<std::uint64_t> members);
  static WindowSet from_predicate(std::uint64_t horizon, const std::function<bool(std::uint64_t)>& pred);

  std::uint64_t horizon() const { return horizon_; }
  const std::vector<std::uint64_t>& members() const { return members_; }
  bool contains(std::uint64_t n) const;
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }

  friend bool operator==(const WindowSet&, const WindowSet&) = default;

 private:
  std::uint64_t horizon_ = 0;
  std::vector<std::uint64_t> members_;
};

/// Largest gap between consecutive members, counting the gap from 0 to the
/// first member. nullopt stands for an empty (infinitely gapped) set.
std::optional<std::uint64_t> max_gap(const WindowSet& s);

/// Bohr neighbourhood parameters: alpha in T^d and a radius delta.
struct BohrSpec {
  std::vector<RealSpec> alpha;
  Rational delta;

  void validate() const;
};

/// { n <= N : sum_j ||n alpha_j|| < delta }. Throws PrecisionError when a
/// continued-fraction coordinate is too shallow to decide some n.
WindowSet bohr_window(const BohrSpec& spec, std::uint64_t horizon);

enum class ScaleMode { Times, DividedBy };

/// Times: { m s <= N }, horizon N. DividedBy: { n <= N/m : n m in S }, horizon N/m.
WindowSet scale_set(const WindowSet& s, std::uint64_t m, ScaleMode mode);

/// Three-valued answer to "is m an eps-return time?".
struct CertifiedMembership {
  enum class Verdict { In, Out, Unknown };
  Verdict verdict = Verdict::Unknown;
  /// In: a point p with d(p, T^m p) <= witness_distance < eps.
  std::optional<ProductPoint> witness;
  Rational witness_distance;
  /// Out: inf_p d(p, T^m p) >= lower_bound >= eps. Unknown: best bound found.
  Rational lower_bound;
};

struct MembershipOptions {
  /// Grid points per gridded torus coordinate.
  std::uint64_t grid = 64;
  /// Membership is decided for the system (X, T^power).
  std::uint64_t power = 1;
};

/// d(p, T^s p) as a certified interval.
Interval return_distance(const SkewTower& tower, const ProductPoint& p, std::uint64_t steps);

/// Grid search with a Lipschitz cell bound. In verdicts carry a witness whose
/// distance is verified exactly; Out verdicts hold for every point.
CertifiedMembership return_membership(const SkewTower& tower, std::uint64_t m, const Rational& eps,
                                      const MembershipOptions& opts = {});

struct ReturnWindow {
  WindowSet in;
  WindowSet out;
  WindowSet unknown;
  std::optional<std::uint64_t> max_gap_in;
  std::uint64_t horizon() const { return in.horizon(); }
};

/// Pointwise return_membership over {1..N}; data-parallel over m.
ReturnWindow return_window(const SkewTower& tower, const Rational& eps, std::uint64_t horizon,
                           const MembershipOptions& opts = {});

/// { m <= N/2 : max_{n <= N - m} ||f(n + m) - f(n)|| < eps } for f on {0..N}.
/// The sup runs over the window only.
WindowSet almost_periods(std::span<const TorusPoint> f, const Rational& eps);
/// Real-valued variant with |f(n + m) - f(n)|.
WindowSet almost_periods(std::span<const Rational> f, const Rational& eps);

/// Least n with |sum_{i<m} f(n+i) - m beta| < eps, or nullopt.
std::optional<std::uint64_t> prop32_witness(std::span<const Rational> f, std::uint64_t m, const Rational& beta,
                                            const Rational& eps);

struct PowerCheckReport {
  std::uint64_t k = 1;
  std::uint64_t compared = 0;
  std::uint64_t in_mismatches = 0;
  std::uint64_t out_mismatches = 0;
  std::uint64_t unknown_base = 0;
  std::uint64_t unknown_power = 0;
  bool passed() const { return in_mismatches == 0 && out_mismatches == 0; }
};

/// Compares the windows of (X, T^k) on {1..N/k} with those of (X, T) divided
/// by k. Indices undecided on either side are excluded and counted.
PowerCheckReport power_return_check(const SkewTower& tower, std::uint64_t k, const Rational& eps,
                                    std::uint64_t horizon, const MembershipOptions& opts = {});

/// Dilation inclusions for C = {||n a|| < d}, D = {||n a/m|| < d},
/// E = {||n m a|| < d}: (D cap mN) subset mC and E subset C/m on {1..N}.
struct DilationReport {
  bool d_in_mc = false;
  bool e_in_c_over_m = false;
  bool holds() const { return d_in_mc && e_in_c_over_m; }
};
DilationReport check_dilation_inclusions(const std::vector<Rational>& alpha, const Rational& delta,
                                         std::uint64_t m, std::uint64_t horizon);

}  // namespace reclab
