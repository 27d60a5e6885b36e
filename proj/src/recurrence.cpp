#include "reclab/recurrence.hpp"

#include <algorithm>

#include "reclab/parallel.hpp"

namespace reclab {

namespace {

BigInt big(std::uint64_t n) { return BigInt(static_cast<unsigned long>(n)); }

struct GridLayout {
  bool odometer = false;
  std::uint64_t base_count = 0;  // x values (grid or cylinder prefixes)
  std::size_t torus_fibers = 0;  // gridded t_1..t_{k-1}
  std::uint64_t grid = 0;
  std::uint64_t total = 0;
  std::size_t cylinder_depth = 0;
};

GridLayout layout_for(const SkewTower& tower, std::uint64_t grid) {
  GridLayout g;
  g.grid = grid;
  g.odometer = std::holds_alternative<Odometer>(tower.base);
  if (g.odometer) {
    g.cylinder_depth = tower.h1->cylinder_depth();
    g.base_count = std::get<Odometer>(tower.base).cylinder_count(g.cylinder_depth);
  } else {
    g.base_count = grid;
  }
  g.torus_fibers = tower.depth() - 1;
  g.total = g.base_count;
  for (std::size_t c = 0; c < g.torus_fibers; ++c) {
    if (g.total > (std::uint64_t{1} << 32) / grid) throw DomainError("return grid too large");
    g.total *= grid;
  }
  return g;
}

ProductPoint grid_point(const SkewTower& tower, const GridLayout& g, std::uint64_t index) {
  ProductPoint p = tower.origin();
  const std::uint64_t xi = index % g.base_count;
  index /= g.base_count;
  if (g.odometer) {
    p.base = std::get<Odometer>(tower.base).from_index(xi, g.cylinder_depth);
  } else {
    std::get<std::vector<TorusPoint>>(p.base)[0] = TorusPoint(Rational(big(xi), big(g.grid)));
  }
  for (std::size_t c = 0; c < g.torus_fibers; ++c) {
    p.fibers[c] = TorusPoint(Rational(big(index % g.grid), big(g.grid)));
    index /= g.grid;
  }
  return p;
}

// Bound on |D(p) - D(g)| for p within half a grid step of g in every gridded
// coordinate. Coordinate deviations propagate through the fiber maps.
Rational cell_slack(const SkewTower& tower, const GridLayout& g, std::uint64_t steps) {
  const std::size_t k = tower.depth();
  const Rational r(BigInt(1), big(2 * g.grid));
  std::vector<Rational> lip(k + 1);
  lip[1] = g.odometer ? Rational(0) : lipschitz_bound(*tower.h1);
  for (std::size_t c = 2; c <= k; ++c) lip[c] = lipschitz_bound(tower.fibers[c - 2]);
  // e[c]: deviation bound of coordinate c (0 = base) at the current step.
  std::vector<Rational> e(k + 1, r);
  if (g.odometer) e[0] = Rational(0);
  std::vector<Rational> acc(k + 1);
  for (std::uint64_t i = 0; i < steps; ++i) {
    for (std::size_t c = 1; c <= k; ++c) acc[c] += e[c - 1];
    for (std::size_t c = k; c >= 1; --c) e[c] += lip[c] * e[c - 1];
  }
  Rational slack(0);
  for (std::size_t c = 1; c <= k; ++c) slack += lip[c] * acc[c];
  return slack;
}

CertifiedMembership decide_membership(const SkewTower& tower, std::uint64_t m, const Rational& eps,
                                      const MembershipOptions& opts, bool parallel) {
  using Verdict = CertifiedMembership::Verdict;
  if (opts.grid == 0 || opts.power == 0) throw DomainError("grid and power must be positive");
  CertifiedMembership out;

  if (!tower.h1) {
    // Rotation powers go through the rotation by k alpha; everything else
    // iterates T^(m k).
    Interval d;
    const bool algebraic = opts.power > 1 && std::holds_alternative<TorusRotation>(tower.base) &&
                           std::ranges::all_of(std::get<TorusRotation>(tower.base).alpha,
                                               [](const RealSpec& a) { return is_exact(a); });
    if (algebraic) {
      d = base_return_distance(base_power(tower.base, opts.power), m);
    } else {
      d = base_return_distance(tower.base, m * opts.power);
    }
    if (d.hi < eps) {
      out.verdict = Verdict::In;
      out.witness = tower.origin();
      out.witness_distance = d.hi;
    } else {
      out.verdict = d.lo >= eps ? Verdict::Out : Verdict::Unknown;
    }
    out.lower_bound = d.lo;
    return out;
  }

  const std::uint64_t steps = m * opts.power;
  // The base term of the L1 distance does not depend on the point.
  const Rational base_lo = base_return_distance(tower.base, steps).lo;
  if (base_lo >= eps) {
    out.verdict = Verdict::Out;
    out.lower_bound = base_lo;
    return out;
  }
  const GridLayout g = layout_for(tower, opts.grid);
  auto eval = [&](std::size_t i) { return return_distance(tower, grid_point(tower, g, i), steps); };
  std::vector<Interval> dist;
  if (parallel) {
    dist = parallel_map<Interval>(g.total, eval);
  } else {
    dist.reserve(g.total);
    for (std::uint64_t i = 0; i < g.total; ++i) dist.push_back(eval(i));
  }
  for (std::uint64_t i = 0; i < g.total; ++i) {
    if (dist[i].hi < eps) {
      out.verdict = Verdict::In;
      out.witness = grid_point(tower, g, i);
      out.witness_distance = dist[i].hi;
      out.lower_bound = Rational(0);
      return out;
    }
  }
  Rational min_lo = dist.front().lo;
  for (const auto& d : dist) min_lo = min(min_lo, d.lo);
  out.lower_bound = max(min_lo - cell_slack(tower, g, steps), base_lo);
  out.verdict = out.lower_bound >= eps ? Verdict::Out : Verdict::Unknown;
  return out;
}

}  // namespace

WindowSet::WindowSet(std::uint64_t horizon, std::vector<std::uint64_t> members)
    : horizon_(horizon), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && (members_.front() < 1 || members_.back() > horizon_)) {
    throw DomainError("window member outside [1, N]");
  }
}

WindowSet WindowSet::from_predicate(std::uint64_t horizon, const std::function<bool(std::uint64_t)>& pred) {
  std::vector<std::uint64_t> members;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    if (pred(n)) members.push_back(n);
  }
  return WindowSet(horizon, std::move(members));
}

bool WindowSet::contains(std::uint64_t n) const { return std::binary_search(members_.begin(), members_.end(), n); }

std::optional<std::uint64_t> max_gap(const WindowSet& s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t prev = 0, gap = 0;
  for (auto v : s.members()) {
    gap = std::max(gap, v - prev);
    prev = v;
  }
  return gap;
}

void BohrSpec::validate() const {
  if (alpha.empty()) throw DomainError("Bohr set needs d >= 1");
  if (delta.sign() <= 0 || delta > Rational(1, 2)) throw DomainError("Bohr radius must lie in (0, 1/2]");
}

WindowSet bohr_window(const BohrSpec& spec, std::uint64_t horizon) {
  spec.validate();
  auto decide = [&](std::size_t idx) -> char {
    const BigInt n = big(idx + 1);
    Interval sum = Interval::point(Rational(0));
    for (const auto& a : spec.alpha) sum = sum + norm_multiple(a, n);
    if (sum.hi < spec.delta) return 1;
    if (sum.lo >= spec.delta) return 0;
    return 2;
  };
  const auto verdicts = parallel_map<char>(horizon, decide);
  std::vector<std::uint64_t> members;
  for (std::uint64_t i = 0; i < horizon; ++i) {
    if (verdicts[i] == 2) {
      throw PrecisionError("continued fraction too shallow to decide n = " + std::to_string(i + 1));
    }
    if (verdicts[i] == 1) members.push_back(i + 1);
  }
  return WindowSet(horizon, std::move(members));
}

WindowSet scale_set(const WindowSet& s, std::uint64_t m, ScaleMode mode) {
  if (m == 0) throw DomainError("scale factor must be positive");
  std::vector<std::uint64_t> members;
  if (mode == ScaleMode::Times) {
    for (auto v : s.members()) {
      if (v <= s.horizon() / m) members.push_back(v * m);
    }
    return WindowSet(s.horizon(), std::move(members));
  }
  for (auto v : s.members()) {
    if (v % m == 0) members.push_back(v / m);
  }
  return WindowSet(s.horizon() / m, std::move(members));
}

Interval return_distance(const SkewTower& tower, const ProductPoint& p, std::uint64_t steps) {
  const ProductPoint q = tower_orbit(tower, p, steps);
  Interval d = base_return_distance(tower.base, steps);
  // The base term is x-independent; for continued-fraction rotations it
  // already carries the approximation error.
  for (std::size_t c = 0; c < p.fibers.size(); ++c) d = d + torus_dist(q.fibers[c], p.fibers[c]);
  return d;
}

CertifiedMembership return_membership(const SkewTower& tower, std::uint64_t m, const Rational& eps,
                                      const MembershipOptions& opts) {
  tower.validate();
  return decide_membership(tower, m, eps, opts, true);
}

ReturnWindow return_window(const SkewTower& tower, const Rational& eps, std::uint64_t horizon,
                           const MembershipOptions& opts) {
  tower.validate();
  const auto verdicts = parallel_map<CertifiedMembership::Verdict>(
      horizon, [&](std::size_t i) { return decide_membership(tower, i + 1, eps, opts, false).verdict; });
  std::vector<std::uint64_t> in, out, unknown;
  for (std::uint64_t i = 0; i < horizon; ++i) {
    switch (verdicts[i]) {
      case CertifiedMembership::Verdict::In: in.push_back(i + 1); break;
      case CertifiedMembership::Verdict::Out: out.push_back(i + 1); break;
      case CertifiedMembership::Verdict::Unknown: unknown.push_back(i + 1); break;
    }
  }
  ReturnWindow w{WindowSet(horizon, std::move(in)), WindowSet(horizon, std::move(out)),
                 WindowSet(horizon, std::move(unknown)), std::nullopt};
  w.max_gap_in = max_gap(w.in);
  return w;
}

WindowSet almost_periods(std::span<const TorusPoint> f, const Rational& eps) {
  if (f.empty()) return WindowSet(0, {});
  const std::uint64_t N = f.size() - 1;
  return WindowSet::from_predicate(N / 2, [&](std::uint64_t m) {
    for (std::uint64_t n = 0; n + m <= N; ++n) {
      if (torus_dist(f[n + m], f[n]).hi >= eps) return false;
    }
    return true;
  });
}

WindowSet almost_periods(std::span<const Rational> f, const Rational& eps) {
  if (f.empty()) return WindowSet(0, {});
  const std::uint64_t N = f.size() - 1;
  return WindowSet::from_predicate(N / 2, [&](std::uint64_t m) {
    for (std::uint64_t n = 0; n + m <= N; ++n) {
      if ((f[n + m] - f[n]).abs() >= eps) return false;
    }
    return true;
  });
}

std::optional<std::uint64_t> prop32_witness(std::span<const Rational> f, std::uint64_t m, const Rational& beta,
                                            const Rational& eps) {
  if (m > f.size()) throw DomainError("block length exceeds the window");
  const Rational target = beta * Rational(big(m));
  Rational block(0);
  for (std::uint64_t i = 0; i < m; ++i) block += f[i];
  for (std::uint64_t n = 0;; ++n) {
    if ((block - target).abs() < eps) return n;
    if (n + m >= f.size()) return std::nullopt;
    block += f[n + m];
    block -= f[n];
  }
}

PowerCheckReport power_return_check(const SkewTower& tower, std::uint64_t k, const Rational& eps,
                                    std::uint64_t horizon, const MembershipOptions& opts) {
  if (k == 0) throw DomainError("power must be positive");
  PowerCheckReport report;
  report.k = k;
  const ReturnWindow base = return_window(tower, eps, horizon, {opts.grid, 1});
  MembershipOptions pow_opts = opts;
  pow_opts.power = k;
  const ReturnWindow powered = return_window(tower, eps, horizon / k, pow_opts);
  const WindowSet in_div = scale_set(base.in, k, ScaleMode::DividedBy);
  const WindowSet out_div = scale_set(base.out, k, ScaleMode::DividedBy);
  for (std::uint64_t m = 1; m <= horizon / k; ++m) {
    const bool base_unknown = base.unknown.contains(m * k);
    const bool pow_unknown = powered.unknown.contains(m);
    report.unknown_base += base_unknown;
    report.unknown_power += pow_unknown;
    if (base_unknown || pow_unknown) continue;
    ++report.compared;
    report.in_mismatches += powered.in.contains(m) != in_div.contains(m);
    report.out_mismatches += powered.out.contains(m) != out_div.contains(m);
  }
  return report;
}

DilationReport check_dilation_inclusions(const std::vector<Rational>& alpha, const Rational& delta,
                                         std::uint64_t m, std::uint64_t horizon) {
  BohrSpec c_spec{{}, delta}, d_spec{{}, delta}, e_spec{{}, delta};
  for (const auto& a : alpha) {
    const Rational rep = a.frac();
    c_spec.alpha.emplace_back(rep);
    d_spec.alpha.emplace_back(rep / Rational(big(m)));
    e_spec.alpha.emplace_back((rep * Rational(big(m))).frac());
  }
  const WindowSet C = bohr_window(c_spec, horizon);
  const WindowSet D = bohr_window(d_spec, horizon);
  const WindowSet E = bohr_window(e_spec, horizon / m);
  const WindowSet mC = scale_set(C, m, ScaleMode::Times);
  const WindowSet C_over_m = scale_set(C, m, ScaleMode::DividedBy);
  DilationReport r;
  r.d_in_mc = std::ranges::all_of(D.members(), [&](std::uint64_t n) { return n % m != 0 || mC.contains(n); });
  r.e_in_c_over_m = std::ranges::all_of(E.members(), [&](std::uint64_t n) { return C_over_m.contains(n); });
  return r;
}

}  // namespace reclab
