#pragma once

#include <cstdint>
#include <vector>

#include "reclab/torus.hpp"

namespace reclab {

/// The +1 map with carry on prod_i Z/b_i Z. The base list is cycled, so
/// {2} is the dyadic odometer and {2, 3} alternates.
struct Odometer {
  std::vector<std::uint32_t> bases;

  explicit Odometer(std::vector<std::uint32_t> b);

  std::uint32_t base(std::size_t i) const { return bases[i % bases.size()]; }
  /// b_1 * ... * b_j, the number of depth-j cylinders.
  std::uint64_t cylinder_count(std::size_t depth) const;
  /// Mixed-radix value of the first `depth` digits of x.
  std::uint64_t prefix_index(const OdometerPoint& x, std::size_t depth) const;
  /// Point whose first `depth` digits encode `index` (higher digits zero).
  OdometerPoint from_index(std::uint64_t index, std::size_t depth) const;
  /// x + n with carry propagation.
  OdometerPoint add(const OdometerPoint& x, std::uint64_t n) const;
  /// Largest j with b_1...b_j dividing n; x and x + n then share exactly j
  /// leading digits. n must be positive.
  std::size_t agreement_depth(std::uint64_t n) const;
};

}  // namespace reclab
