#include "reclab/dynsys.hpp"

namespace reclab {

namespace {

const Rational kHalf(1, 2);

const std::vector<TorusPoint>& torus_coords(const BasePoint& x) {
  const auto* v = std::get_if<std::vector<TorusPoint>>(&x);
  if (!v) throw ShapeError("expected a torus base point");
  return *v;
}

const OdometerPoint& odometer_point(const BasePoint& x) {
  const auto* v = std::get_if<OdometerPoint>(&x);
  if (!v) throw ShapeError("expected an odometer base point");
  return *v;
}

void check_shape(const SkewTower& tower, const ProductPoint& p) {
  check_point(tower.base, p.base);
  if (p.fibers.size() != tower.depth()) {
    throw ShapeError("point has " + std::to_string(p.fibers.size()) + " fibers, tower has depth " +
                     std::to_string(tower.depth()));
  }
}

}  // namespace

void validate(const BaseSystem& base) {
  if (const auto* r = std::get_if<TorusRotation>(&base)) {
    if (r->alpha.empty()) throw DomainError("rotation needs dimension >= 1");
  }
}

void check_point(const BaseSystem& base, const BasePoint& x) {
  if (const auto* r = std::get_if<TorusRotation>(&base)) {
    if (torus_coords(x).size() != r->alpha.size()) throw ShapeError("base point dimension mismatch");
  } else {
    (void)odometer_point(x);
  }
}

BasePoint base_origin(const BaseSystem& base) {
  if (const auto* r = std::get_if<TorusRotation>(&base)) return std::vector<TorusPoint>(r->alpha.size());
  return OdometerPoint{};
}

BasePoint base_step(const BaseSystem& base, const BasePoint& x, std::uint64_t n) {
  if (const auto* r = std::get_if<TorusRotation>(&base)) {
    const auto& coords = torus_coords(x);
    if (coords.size() != r->alpha.size()) throw ShapeError("base point dimension mismatch");
    std::vector<TorusPoint> out;
    out.reserve(coords.size());
    const Rational steps(BigInt(static_cast<unsigned long>(n)));
    for (std::size_t j = 0; j < coords.size(); ++j) {
      const Approximation a = approximate(r->alpha[j]);
      out.push_back(coords[j] + TorusPoint(a.value * steps, a.error_bound * steps));
    }
    return out;
  }
  return std::get<Odometer>(base).add(odometer_point(x), n);
}

Interval base_return_distance(const BaseSystem& base, std::uint64_t n) {
  if (const auto* r = std::get_if<TorusRotation>(&base)) {
    Interval sum = Interval::point(Rational(0));
    for (const auto& a : r->alpha) sum = sum + norm_multiple(a, BigInt(static_cast<unsigned long>(n)));
    return sum;
  }
  if (n == 0) return Interval::point(Rational(0));
  const std::size_t j = std::get<Odometer>(base).agreement_depth(n);
  return Interval::point(Rational(BigInt(1), pow(BigInt(2), static_cast<unsigned>(j))));
}

BaseSystem base_power(const BaseSystem& base, std::uint64_t k) {
  const auto* r = std::get_if<TorusRotation>(&base);
  if (!r) throw DomainError("algebraic powers are implemented for rotations only");
  TorusRotation out;
  for (const auto& a : r->alpha) {
    if (!is_exact(a)) throw DomainError("algebraic power needs rational rotation numbers");
    out.alpha.emplace_back((std::get<Rational>(a) * Rational(BigInt(static_cast<unsigned long>(k)))).frac());
  }
  return out;
}

TorusPoint apply_on_base(const BaseSystem& base, const SkewMap& h, const BasePoint& x) {
  if (const auto* odo = std::get_if<Odometer>(&base)) return apply(h, odometer_point(x), *odo);
  return apply(h, torus_coords(x).front());
}

void SkewTower::validate() const {
  reclab::validate(base);
  if (!h1) {
    if (!fibers.empty()) throw ShapeError("fiber maps need a first skewing map h1");
    return;
  }
  const bool odometer = std::holds_alternative<Odometer>(base);
  for (const auto& t : h1->terms()) {
    const bool cylinder = std::holds_alternative<SkewMap::Cylinder>(t);
    const bool constant = std::holds_alternative<SkewMap::Constant>(t);
    if (odometer && !cylinder && !constant) throw ShapeError("h1 over an odometer must be cylinder/constant");
    if (!odometer && cylinder) throw ShapeError("cylinder maps need an odometer base");
  }
  if (odometer) {
    const auto& odo = std::get<Odometer>(base);
    for (const auto& t : h1->terms()) {
      if (const auto* c = std::get_if<SkewMap::Cylinder>(&t)) {
        if (c->table.size() != odo.cylinder_count(c->depth)) throw ShapeError("cylinder table size mismatch");
      }
    }
  }
  for (const auto& f : fibers) {
    if (f.has_cylinder()) throw ShapeError("fiber maps act on the circle");
  }
}

ProductPoint SkewTower::origin() const { return {base_origin(base), std::vector<TorusPoint>(depth())}; }

CocycleResult cocycle_sum(const BaseSystem& base, const SkewMap& h, std::uint64_t m, const BasePoint& x) {
  check_point(base, x);
  TorusPoint acc;
  bool want_lift = !h.has_cylinder() && winding(h) == 0 && std::holds_alternative<TorusRotation>(base);
  std::optional<Lift> H;
  if (want_lift) {
    H.emplace(lift(h));
    want_lift = H->is_exact();
  }
  Rational lift_acc(0);
  BasePoint xi = x;
  for (std::uint64_t i = 0; i < m; ++i) {
    const TorusPoint v = apply_on_base(base, h, xi);
    acc = acc + v;
    if (want_lift) {
      const TorusPoint& coord = torus_coords(xi).front();
      if (coord.is_exact()) {
        lift_acc += H->exact(coord.value);
      } else {
        want_lift = false;
      }
    }
    xi = base_step(base, xi, 1);
  }
  if (acc.radius > kHalf) throw PrecisionError("cocycle sum enclosure is wider than the torus");
  CocycleResult out{acc, std::nullopt};
  if (want_lift) out.lift_sum = lift_acc;
  return out;
}

ProductPoint tower_step(const SkewTower& tower, const ProductPoint& p) {
  ProductPoint out;
  out.base = base_step(tower.base, p.base, 1);
  if (!tower.h1) return out;
  out.fibers.reserve(p.fibers.size());
  out.fibers.push_back(p.fibers[0] + apply_on_base(tower.base, *tower.h1, p.base));
  for (std::size_t j = 0; j < tower.fibers.size(); ++j) {
    out.fibers.push_back(p.fibers[j + 1] + apply(tower.fibers[j], p.fibers[j]));
  }
  return out;
}

ProductPoint tower_orbit(const SkewTower& tower, const ProductPoint& p, std::uint64_t n) {
  check_shape(tower, p);
  ProductPoint cur = p;
  for (std::uint64_t i = 0; i < n; ++i) cur = tower_step(tower, cur);
  return cur;
}

TorusPoint binom_poly(const std::vector<TorusPoint>& t, std::uint64_t n) {
  if (t.empty()) throw DomainError("binom_poly needs j >= 1");
  const std::size_t j = t.size();
  Rational value(0), radius(0);
  for (std::size_t i = 0; i < j; ++i) {
    BigInt c;
    mpz_bin_uiui(c.get_mpz_t(), n, i);
    const TorusPoint& ti = t[j - 1 - i];
    value += Rational(c) * ti.value;
    radius += Rational(c) * ti.radius;
  }
  return TorusPoint(value, radius);
}

namespace {

// levels[j][i] = h_{j,i}(x) for 0 <= i <= n_max; levels[0][i] = h(T^i x).
std::vector<std::vector<TorusPoint>> iterated_sums(const BaseSystem& base, const SkewMap& h, const BasePoint& x,
                                                   std::size_t k, std::uint64_t n_max) {
  std::vector<std::vector<TorusPoint>> levels(k + 1, std::vector<TorusPoint>(n_max + 1));
  BasePoint xi = x;
  for (std::uint64_t i = 0; i <= n_max; ++i) {
    levels[0][i] = apply_on_base(base, h, xi);
    if (i < n_max) xi = base_step(base, xi, 1);
  }
  for (std::size_t j = 1; j <= k; ++j) {
    TorusPoint running;
    for (std::uint64_t i = 0; i <= n_max; ++i) {
      levels[j][i] = running;
      running = running + levels[j - 1][i];
    }
  }
  return levels;
}

ProductPoint closed_form_at(const BaseSystem& base, const IteratedSkewState& state,
                            const std::vector<std::vector<TorusPoint>>& levels, std::uint64_t n) {
  ProductPoint out;
  out.base = base_step(base, state.x, n);
  for (std::size_t j = 1; j <= state.t.size(); ++j) {
    const std::vector<TorusPoint> prefix(state.t.begin(), state.t.begin() + static_cast<long>(j));
    out.fibers.push_back(binom_poly(prefix, n) + levels[j][n]);
  }
  return out;
}

}  // namespace

ProductPoint iterated_id_closed_form(const BaseSystem& base, const SkewMap& h, const IteratedSkewState& state,
                                     std::uint64_t n) {
  if (state.t.empty()) throw DomainError("iterated skew state needs k >= 1");
  check_point(base, state.x);
  const auto levels = iterated_sums(base, h, state.x, state.t.size(), n);
  return closed_form_at(base, state, levels, n);
}

std::vector<ProductPoint> iterated_id_closed_form_series(const BaseSystem& base, const SkewMap& h,
                                                         const IteratedSkewState& state, std::uint64_t n_max) {
  if (state.t.empty()) throw DomainError("iterated skew state needs k >= 1");
  check_point(base, state.x);
  const auto levels = iterated_sums(base, h, state.x, state.t.size(), n_max);
  std::vector<ProductPoint> out;
  out.reserve(n_max + 1);
  for (std::uint64_t n = 0; n <= n_max; ++n) out.push_back(closed_form_at(base, state, levels, n));
  return out;
}

SkewTower iterated_id_tower(const BaseSystem& base, const SkewMap& h, std::size_t k) {
  if (k == 0) throw DomainError("iterated skew needs k >= 1");
  SkewTower tower{base, h, std::vector<SkewMap>(k - 1, SkewMap::linear(1))};
  tower.validate();
  return tower;
}

}  // namespace reclab
