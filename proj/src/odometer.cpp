#include "reclab/odometer.hpp"

namespace reclab {

Odometer::Odometer(std::vector<std::uint32_t> b) : bases(std::move(b)) {
  if (bases.empty()) throw DomainError("odometer needs at least one base");
  for (auto v : bases) {
    if (v < 2) throw DomainError("odometer bases must be >= 2");
  }
}

std::uint64_t Odometer::cylinder_count(std::size_t depth) const {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < depth; ++i) {
    if (count > (std::uint64_t{1} << 40)) throw DomainError("cylinder depth too large");
    count *= base(i);
  }
  return count;
}

std::uint64_t Odometer::prefix_index(const OdometerPoint& x, std::size_t depth) const {
  std::uint64_t index = 0, scale = 1;
  for (std::size_t i = 0; i < depth; ++i) {
    index += scale * x.digit(i);
    scale *= base(i);
  }
  return index;
}

OdometerPoint Odometer::from_index(std::uint64_t index, std::size_t depth) const {
  OdometerPoint x;
  x.digits.resize(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    x.digits[i] = static_cast<std::uint32_t>(index % base(i));
    index /= base(i);
  }
  if (index != 0) throw DomainError("index does not fit in the requested depth");
  return x;
}

OdometerPoint Odometer::add(const OdometerPoint& x, std::uint64_t n) const {
  OdometerPoint out = x;
  std::uint64_t carry = n;
  for (std::size_t i = 0; carry != 0; ++i) {
    if (i >= out.digits.size()) out.digits.push_back(0);
    const std::uint64_t b = base(i);
    const std::uint64_t s = out.digits[i] + carry;
    out.digits[i] = static_cast<std::uint32_t>(s % b);
    carry = s / b;
  }
  return out;
}

std::size_t Odometer::agreement_depth(std::uint64_t n) const {
  if (n == 0) throw DomainError("agreement depth of 0 is unbounded");
  std::size_t j = 0;
  while (n % base(j) == 0) {
    n /= base(j);
    ++j;
  }
  return j;
}

}  // namespace reclab
