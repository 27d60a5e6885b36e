#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reclab/cfrac.hpp"
#include "reclab/odometer.hpp"
#include "reclab/skew_map.hpp"
#include "reclab/torus.hpp"

namespace reclab {

/// x -> x + alpha on T^d. Continued-fraction coordinates are advanced with
/// their deepest convergent and carry the certified error as a radius.
struct TorusRotation {
  std::vector<RealSpec> alpha;
};

using BaseSystem = std::variant<TorusRotation, Odometer>;

void validate(const BaseSystem& base);
/// Shape check for a base point; throws ShapeError.
void check_point(const BaseSystem& base, const BasePoint& x);
/// The origin of the base (all zeros).
BasePoint base_origin(const BaseSystem& base);
/// T^n x.
BasePoint base_step(const BaseSystem& base, const BasePoint& x, std::uint64_t n);
/// d(x, T^n x); independent of x for rotations and odometers.
Interval base_return_distance(const BaseSystem& base, std::uint64_t n);
/// The rotation obtained as the k-th power of a rotation base.
BaseSystem base_power(const BaseSystem& base, std::uint64_t k);

/// h(x) for a base point. Rotation bases feed their first coordinate to h.
TorusPoint apply_on_base(const BaseSystem& base, const SkewMap& h, const BasePoint& x);

/// T_h(x, t_1, ..., t_d) = (Tx, t_1 + h_1(x), t_2 + h_2(t_1), ..., t_d + h_d(t_{d-1})).
/// A tower without h1 is the bare base system.
struct SkewTower {
  BaseSystem base;
  std::optional<SkewMap> h1;
  std::vector<SkewMap> fibers;

  /// Number of torus fibers.
  std::size_t depth() const { return h1 ? 1 + fibers.size() : 0; }
  /// Throws ShapeError/DomainError on domain mismatches.
  void validate() const;
  ProductPoint origin() const;
};

/// h_m(x) = sum_{i<m} h(T^i x), plus the exact lift sum H_m(x) when h has
/// zero winding, the map is exact and x is exact.
struct CocycleResult {
  TorusPoint value;
  std::optional<Rational> lift_sum;
};

/// Throws PrecisionError when the accumulated radius exceeds 1/2.
CocycleResult cocycle_sum(const BaseSystem& base, const SkewMap& h, std::uint64_t m, const BasePoint& x);

ProductPoint tower_step(const SkewTower& tower, const ProductPoint& p);
/// n-fold application of the tower map; throws ShapeError on shape mismatch.
ProductPoint tower_orbit(const SkewTower& tower, const ProductPoint& p, std::uint64_t n);

/// sum_{i<j} C(n, i) t_{j-i} mod 1 for t = (t_1, ..., t_j).
TorusPoint binom_poly(const std::vector<TorusPoint>& t, std::uint64_t n);

/// (x, t_1, ..., t_k) for the iterated identity skew over (base, h).
struct IteratedSkewState {
  BasePoint x;
  std::vector<TorusPoint> t;
};

/// T^n_{h,Id,...,Id}(x, t) computed coordinate-wise as p_{t_j}(n) + h_{j,n}(x).
ProductPoint iterated_id_closed_form(const BaseSystem& base, const SkewMap& h, const IteratedSkewState& state,
                                     std::uint64_t n);

/// The closed form for every n in [0, n_max]; shares the iterated prefix
/// sums h_{j,n} across n.
std::vector<ProductPoint> iterated_id_closed_form_series(const BaseSystem& base, const SkewMap& h,
                                                         const IteratedSkewState& state, std::uint64_t n_max);

/// The tower (base, h, Id, ..., Id) with k fibers.
SkewTower iterated_id_tower(const BaseSystem& base, const SkewMap& h, std::size_t k);

/// Declarative tower description, one `key = value` per line:
///   base = rotation | odometer
///   alpha = 1/4 ; 1/3         (p/q or cf:a1,a2,... or thmb:depth:a1)
///   bases = 2, 3              (odometer)
///   h1 = poly:0,0,1,-2,1       (see parse_skew_map)
///   fibers = linear:1 ; const:1/4
/// Lines starting with '#' are ignored.
SkewTower parse_tower_config(const std::string& text);
RealSpec parse_real_spec(const std::string& text);

}  // namespace reclab
