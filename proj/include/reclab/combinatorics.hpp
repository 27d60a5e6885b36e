#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <vector>

#include "reclab/rational.hpp"
#include "reclab/recurrence.hpp"
#include "reclab/torus.hpp"

namespace reclab {

/// Positive differences { a - b > 0 : a, b in A }, horizon preserved.
WindowSet diff_set(const WindowSet& a);

/// Finite coloring of {1..N}; color[n - 1] is the color of n, in [1, r].
struct Coloring {
  std::uint64_t horizon = 0;
  std::uint32_t colors = 0;
  std::vector<std::uint32_t> color;

  void validate() const;
  /// The cells A_1, ..., A_r as windows on {1..N}.
  std::vector<WindowSet> cells() const;
};

struct Dichotomy {
  enum class Kind {
    Covers,         ///< every n <= N/2 lies in (A1 - A1) u (A2 - A2)
    Period,         ///< 2d N cap [1, N/2] lies in (A1 - A1) n (A2 - A2)
    WindowArtifact  ///< d is missing but the inclusion fails on the window
  };
  Kind kind = Kind::Covers;
  /// Least n <= N/2 outside the union (Period / WindowArtifact only).
  std::uint64_t witness = 0;
  /// 2 * witness.
  std::uint64_t period = 0;
};

/// Two-coloring dichotomy on the window {1..N}; requires r = 2.
Dichotomy two_color_dichotomy(const Coloring& c);

/// Z/kZ-valued sequence on the window {0..N-1}.
struct CyclicSeq {
  std::uint64_t modulus = 2;
  std::vector<std::uint64_t> values;

  void validate() const;
};

/// { m : some block f(n) + ... + f(n+m-1) is 0 mod k }, horizon N, via the
/// prefix sums g(n) = f(0) + ... + f(n-1).
WindowSet zero_sum_lengths(const CyclicSeq& f);

/// { m : some block has ||f(n) + ... + f(n+m-1)|| < eps }, horizon N.
WindowSet eps_sum_lengths(std::span<const Rational> f, const Rational& eps);

/// sum_i d_i(n) / 2^i over the binary digits of n (d_0 least significant).
Rational phi_binary(std::uint64_t n);

struct Example48Result {
  WindowSet a;
  std::optional<std::uint64_t> max_gap;
  WindowSet diff;
};

/// A = { n <= N : ||phi(1) + ... + phi(n)|| < eps } with exact dyadic prefix sums.
Example48Result example48_window(const Rational& eps, std::uint64_t horizon);

/// { m <= N : inf_n ||2^(n+m) alpha - 2^n alpha|| < eps } for rational alpha.
/// The orbit of alpha under doubling is eventually periodic, so the inf is a
/// minimum over the preperiod and one period.
WindowSet doubling_orbit_set(const Rational& alpha, const Rational& eps, std::uint64_t horizon);

struct ColorabilityResult {
  enum class Status { Colorable, NotColorable, BudgetExceeded };
  Status status = Status::BudgetExceeded;
  /// Proper coloring (colors 1..r) of 1..N when colorable.
  std::vector<std::uint32_t> coloring;
  /// Search nodes visited; the exhaustion certificate for NotColorable.
  std::uint64_t nodes = 0;
};

/// Backtracking r-coloring of {1..N} with edges (n, n + d), d in R. Vertices
/// in increasing order, colors lowest first; vertex 1 is fixed to color 1.
ColorabilityResult gr_colorability(const WindowSet& r_set, std::uint64_t horizon, std::uint32_t colors,
                                   std::uint64_t node_budget = 10'000'000);

/// CSV "index,value" rows (header optional). Colorings use indices 1..N,
/// cyclic sequences 0..N-1; indices must be contiguous.
Coloring load_coloring_csv(std::istream& in);
CyclicSeq load_cyclic_csv(std::istream& in, std::uint64_t modulus);
std::vector<Rational> load_rational_csv(std::istream& in);

}  // namespace reclab
