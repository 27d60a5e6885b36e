// One line per acceptance criterion: PASS/FAIL, elapsed time and a short detail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "reclab/combinatorics.hpp"
#include "reclab/counterexample.hpp"
#include "reclab/dynsys.hpp"
#include "reclab/json_io.hpp"
#include "reclab/recurrence.hpp"

using namespace reclab;

namespace {

Rational q(const char* s) { return Rational::parse(s); }
Rational r(long n, long d) { return Rational(n, d); }
Rational big_r(std::uint64_t n) { return Rational(BigInt(static_cast<unsigned long>(n))); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string str(const Rational& x) { return x.str(); }

// ---------------------------------------------------------------- 1

// sum_{i<n} H(x + i/n) with integer arithmetic: x = a/b, y_i = (a n + i b)/(b n).
Rational direct_riemann(std::uint64_t n, const Rational& x) {
  const BigInt D = x.den() * BigInt(static_cast<unsigned long>(n));
  BigInt y = x.num() * BigInt(static_cast<unsigned long>(n));
  BigInt total = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const BigInt u = y * (D - y);
    total += u * u;
    y += x.den();
  }
  return Rational(total, pow(D, 4)) - Rational(BigInt(static_cast<unsigned long>(n)), BigInt(30));
}

Outcome riemann_identity() {
  std::mt19937_64 rng(101);
  std::uint64_t checked = 0, bounded = 0;
  for (std::uint64_t n = 1; n <= 256; ++n) {
    for (int s = 0; s < 64; ++s) {
      const long den = 1 + static_cast<long>(rng() % 100000);
      const Rational x = r(static_cast<long>(rng() % (den + 1)), den) / big_r(n);
      const Rational closed = riemann_closed_form(n, x);
      if (closed != direct_riemann(n, x)) return {false, "mismatch at n=" + std::to_string(n) + " x=" + str(x)};
      ++checked;
      if (n >= 4) {
        const Rational bound = riemann_bound(n);
        if (!(closed.abs() <= bound && bound < q("1/12"))) {
          return {false, "bound fails at n=" + std::to_string(n) + " x=" + str(x)};
        }
        ++bounded;
      }
    }
  }
  return {true, std::to_string(checked) + " identities exact, " + std::to_string(bounded) + " bounds below 1/12"};
}

// ---------------------------------------------------------------- 2

Outcome desk_certification() {
  const TheoremBConfig c = make_theoremB_config(3, BigInt(3), q("1/145"));
  if (c.alpha.quotient(2) != 6561 || c.alpha.quotient(3) != pow(BigInt(19684), 8)) return {false, "schedule"};
  if (c.lipschitz != 12) return {false, "L = " + str(c.lipschitz)};
  bool selected = false;
  for (auto i : c.selected_indices) selected |= i == 2;
  if (!selected) return {false, "beta " + str(c.beta) + " does not pass index 2"};
  const GapCertificate cert = certify_gap(c, 2);
  if (!cert.success()) return {false, "failed link " + cert.failed_link};
  if (!(cert.margin->margin > q("1/6"))) return {false, "margin " + str(cert.margin->margin)};
  const SpotCheckReport spot = spot_check_gap(c, 2, 1000, 2024);
  if (!spot.minimum || !(*spot.minimum > q("1/6"))) return {false, "spot minimum not above 1/6"};
  return {true, "beta=" + str(c.beta) + " m=19684 margin=" + str(cert.margin->margin) + " spot min ~" +
                    std::to_string(spot.minimum->to_double()) + " over 1000 samples"};
}

// ---------------------------------------------------------------- 3

Outcome power_windows() {
  std::mt19937_64 rng(303);
  const std::uint64_t N = 10000;
  std::uint64_t comparisons = 0;
  for (int trial = 0; trial < 50; ++trial) {
    TorusRotation rot;
    const int dim = 1 + static_cast<int>(rng() % 2);
    for (int d = 0; d < dim; ++d) {
      const long den = 2 + static_cast<long>(rng() % 60);
      rot.alpha.emplace_back(r(static_cast<long>(rng() % den), den));
    }
    const SkewTower tower{rot, std::nullopt, {}};
    for (const Rational eps : {q("1/10"), q("1/5")}) {
      const ReturnWindow base = return_window(tower, eps, N);
      if (!base.unknown.empty()) return {false, "unknown verdicts for T"};
      for (std::uint64_t k : {2, 3, 5}) {
        const ReturnWindow powered = return_window(tower, eps, N / k, {64, k});
        if (!powered.unknown.empty()) return {false, "unknown verdicts for T^k"};
        if (powered.in != scale_set(base.in, k, ScaleMode::DividedBy) ||
            powered.out != scale_set(base.out, k, ScaleMode::DividedBy)) {
          return {false, "partition mismatch at trial " + std::to_string(trial) + " k=" + std::to_string(k)};
        }
        ++comparisons;
      }
    }
  }
  return {true, std::to_string(comparisons) + " (rotation, eps, k) windows equal, zero unknowns"};
}

// ---------------------------------------------------------------- 4

Outcome dilation() {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> alpha;
    const int dim = 1 + static_cast<int>(rng() % 2);
    for (int d = 0; d < dim; ++d) {
      const long den = 2 + static_cast<long>(rng() % 200);
      alpha.push_back(r(static_cast<long>(rng() % den), den));
    }
    const Rational delta = r(1 + static_cast<long>(rng() % 10), 25);
    const std::uint64_t m = 2 + rng() % 9;
    const DilationReport rep = check_dilation_inclusions(alpha, delta, m, 10000);
    if (!rep.holds()) return {false, "inclusion fails at trial " + std::to_string(trial)};
  }
  return {true, "20 configurations, both inclusions hold on N=10000"};
}

// ---------------------------------------------------------------- 5

SkewMap random_zero_winding_map(std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0: return htilde();
    case 1: return SkewMap::constant(r(static_cast<long>(rng() % 17), 17));
    default: {
      // c x (1 - x) + d vanishes to d at both ends.
      const Rational c = r(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 5));
      const Rational d = r(static_cast<long>(rng() % 7), 7);
      return SkewMap::poly({d, c, -c});
    }
  }
}

Outcome iterated_closed_form() {
  std::mt19937_64 rng(505);
  std::uint64_t states = 0;
  for (std::size_t k = 1; k <= 4; ++k) {
    for (int trial = 0; trial < 20; ++trial) {
      const long den = 2 + static_cast<long>(rng() % 40);
      TorusRotation rot;
      rot.alpha.emplace_back(r(static_cast<long>(rng() % den), den));
      const BaseSystem base = rot;
      const SkewMap h = random_zero_winding_map(rng);
      IteratedSkewState s{std::vector<TorusPoint>{TorusPoint(r(static_cast<long>(rng() % 31), 31))}, {}};
      for (std::size_t j = 0; j < k; ++j) s.t.emplace_back(r(static_cast<long>(rng() % 23), 23));
      const auto closed = iterated_id_closed_form_series(base, h, s, 2000);
      const SkewTower tower = iterated_id_tower(base, h, k);
      ProductPoint p{s.x, s.t};
      for (std::uint64_t n = 0; n <= 2000; ++n) {
        if (!(closed[n] == p)) {
          return {false, "k=" + std::to_string(k) + " trial " + std::to_string(trial) + " n=" + std::to_string(n)};
        }
        p = tower_step(tower, p);
        ++states;
      }
    }
  }
  return {true, std::to_string(states) + " states equal coordinate-wise"};
}

// ---------------------------------------------------------------- 6

Outcome prop32() {
  std::mt19937_64 rng(606);
  const Rational eps = q("1/50");
  std::uint64_t witnesses = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const long period = 3 + static_cast<long>(rng() % 48);
    long num = 1 + static_cast<long>(rng() % (period - 1));
    while (std::gcd(num, period) != 1) num = 1 + static_cast<long>(rng() % (period - 1));
    const Rational alpha = r(num, period);
    const Rational x0 = r(static_cast<long>(rng() % 1000), 1000);
    const std::uint64_t N = 4 * static_cast<std::uint64_t>(period) + 40;
    std::vector<Rational> f;
    for (std::uint64_t n = 0; n <= N; ++n) f.push_back(H_eval((x0 + alpha * big_r(n)).frac()));
    Rational beta(0);
    for (long n = 0; n < period; ++n) beta += f[n];
    beta /= Rational(period);
    const WindowSet ap = almost_periods(f, eps / Rational(2));
    if (!ap.contains(static_cast<std::uint64_t>(period))) return {false, "period missing from almost periods"};
    for (auto m : ap.members()) {
      const auto w = prop32_witness(f, m, beta, eps);
      if (!w) return {false, "no witness for m=" + std::to_string(m)};
      Rational sum(0);
      for (std::uint64_t i = 0; i < m; ++i) sum += f[*w + i];
      if (!((sum - big_r(m) * beta).abs() < eps)) return {false, "witness does not re-verify"};
      ++witnesses;
    }
  }
  return {true, std::to_string(witnesses) + " almost periods, each with a verified witness"};
}

// ---------------------------------------------------------------- 7

std::vector<char> brute_diffs(const std::vector<std::uint32_t>& color, std::uint32_t which) {
  std::vector<std::uint64_t> cell;
  for (std::size_t i = 0; i < color.size(); ++i) {
    if (color[i] == which) cell.push_back(i + 1);
  }
  std::vector<char> d(color.size() + 1, 0);
  for (std::size_t a = 0; a < cell.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) d[cell[a] - cell[b]] = 1;
  }
  return d;
}

Outcome dichotomy() {
  std::mt19937_64 rng(707);
  const std::uint64_t N = 2000;
  std::uint64_t covers = 0, periods = 0, artifacts = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Coloring c{N, 2, {}};
    const int family = trial % 3;
    const std::uint64_t d = 1 + rng() % 40;
    std::vector<std::uint32_t> pattern(2 + rng() % 11);
    for (auto& p : pattern) p = 1 + static_cast<std::uint32_t>(rng() % 2);
    for (std::uint64_t n = 1; n <= N; ++n) {
      if (family == 0) {
        c.color.push_back(1 + static_cast<std::uint32_t>(rng() % 2));
      } else if (family == 1) {
        c.color.push_back(1 + static_cast<std::uint32_t>(((n - 1) / d) % 2));
      } else {
        c.color.push_back(pattern[n % pattern.size()]);
      }
    }
    const Dichotomy v = two_color_dichotomy(c);
    const auto d1 = brute_diffs(c.color, 1), d2 = brute_diffs(c.color, 2);
    const std::uint64_t half = N / 2;
    if (v.kind == Dichotomy::Kind::Covers) {
      for (std::uint64_t n = 1; n <= half; ++n) {
        if (!d1[n] && !d2[n]) return {false, "Covers verdict misses n=" + std::to_string(n)};
      }
      ++covers;
      continue;
    }
    if (d1[v.witness] || d2[v.witness]) return {false, "witness lies in a difference set"};
    for (std::uint64_t n = 1; n < v.witness; ++n) {
      if (!d1[n] && !d2[n]) return {false, "witness is not the least missing difference"};
    }
    bool all = true;
    for (std::uint64_t n = v.period; n <= half; n += v.period) all = all && d1[n] && d2[n];
    if (v.kind == Dichotomy::Kind::Period && !all) return {false, "Period verdict fails brute force"};
    if (v.kind == Dichotomy::Kind::WindowArtifact && all) return {false, "artifact verdict is wrong"};
    (v.kind == Dichotomy::Kind::Period ? periods : artifacts) += 1;
  }
  return {true, std::to_string(covers) + " covers, " + std::to_string(periods) + " periods, " +
                    std::to_string(artifacts) + " window artifacts, all re-verified"};
}

// ---------------------------------------------------------------- 8

Outcome zero_sum() {
  std::mt19937_64 rng(808);
  const std::uint64_t ks[] = {2, 3, 5, 7};
  for (int trial = 0; trial < 100; ++trial) {
    CyclicSeq f{ks[trial % 4], {}};
    for (int n = 0; n < 500; ++n) f.values.push_back(rng() % f.modulus);
    std::vector<std::uint64_t> found;
    std::vector<char> hit(501, 0);
    for (std::size_t n = 0; n < 500; ++n) {
      std::uint64_t s = 0;
      for (std::size_t m = 1; n + m <= 500; ++m) {
        s = (s + f.values[n + m - 1]) % f.modulus;
        if (s == 0) hit[m] = 1;
      }
    }
    for (std::uint64_t m = 1; m <= 500; ++m) {
      if (hit[m]) found.push_back(m);
    }
    if (zero_sum_lengths(f) != WindowSet(500, found)) return {false, "mismatch at trial " + std::to_string(trial)};
  }
  return {true, "100 sequences agree with the direct block scan"};
}

// ---------------------------------------------------------------- 9

// Frozen after the first run of this suite.
constexpr std::uint64_t kExample48MaxGap = 42;
constexpr std::size_t kExample48Size10k = 2030;

Outcome example48() {
  const Rational eps = q("1/10");
  const Example48Result a = example48_window(eps, 10000);
  const Example48Result b = example48_window(eps, 20000);
  if (a.a.empty() || b.a.empty()) return {false, "empty window"};
  if (!a.max_gap || a.max_gap != b.max_gap) return {false, "max gap changes when N doubles"};
  if (*a.max_gap != kExample48MaxGap || a.a.size() != kExample48Size10k) {
    return {false, "regression: max gap " + std::to_string(*a.max_gap) + ", |A| = " + std::to_string(a.a.size())};
  }
  std::vector<BohrSpec> windows;
  windows.push_back({{q("1/3")}, q("1/10")});
  windows.push_back({{q("2/7")}, q("1/20")});
  windows.push_back({{q("1/5"), q("1/7")}, q("1/10")});
  windows.push_back({{q("13/97")}, q("1/50")});
  windows.push_back({{ContinuedFraction(std::vector<BigInt>(30, BigInt(1)))}, q("1/20")});
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const WindowSet w = bohr_window(windows[i], 10000);
    bool meets = false;
    for (auto n : w.members()) meets = meets || a.diff.contains(n);
    if (!meets) return {false, "difference set misses Bohr window " + std::to_string(i + 1)};
  }
  return {true, "|A|=" + std::to_string(a.a.size()) + " (N=1e4), " + std::to_string(b.a.size()) +
                    " (N=2e4), max gap " + std::to_string(*a.max_gap) + ", meets 5 Bohr windows"};
}

// ---------------------------------------------------------------- 10

ProductPoint random_point(std::mt19937_64& rng, const SkewTower& t) {
  const BigInt scale = pow(BigInt(2), 30);
  auto coord = [&] { return TorusPoint(Rational(BigInt(static_cast<unsigned long>(rng() >> 34)), scale)); };
  ProductPoint p;
  if (const auto* rot = std::get_if<TorusRotation>(&t.base)) {
    std::vector<TorusPoint> x;
    for (std::size_t j = 0; j < rot->alpha.size(); ++j) x.push_back(coord());
    p.base = x;
  } else {
    OdometerPoint x;
    for (int j = 0; j < 24; ++j) x.digits.push_back(static_cast<std::uint32_t>(rng() % std::get<Odometer>(t.base).base(j)));
    p.base = x;
  }
  for (std::size_t j = 0; j < t.depth(); ++j) p.fibers.push_back(coord());
  return p;
}

Outcome soundness() {
  struct Audit {
    const char* text;
    Rational eps;
    std::uint64_t horizon;
  };
  const std::vector<Audit> audits = {
      {"base = rotation\nalpha = 1/4\nh1 = poly:-1/30,0,1,-2,1\n", q("1/20"), 6},
      {"base = rotation\nalpha = 2/5\nh1 = linear:1\n", q("1/10"), 6},
      {"base = odometer\nbases = 2\nh1 = cylinder:1:0,1/2\n", q("1/5"), 8},
      {"base = rotation\nalpha = 1/3 ; 1/4\n", q("1/5"), 12},
  };
  std::mt19937_64 rng(1010);
  std::uint64_t ins = 0, outs = 0, unknowns = 0, samples = 0;
  for (const auto& a : audits) {
    const SkewTower t = parse_tower_config(a.text);
    for (std::uint64_t m = 1; m <= a.horizon; ++m) {
      const CertifiedMembership c = return_membership(t, m, a.eps);
      if (c.verdict == CertifiedMembership::Verdict::In) {
        const ProductPoint w = c.witness ? *c.witness : t.origin();
        const Interval d = l1_dist(w, tower_orbit(t, w, m));
        if (!d.is_exact() || !(d.hi < a.eps)) return {false, "In witness fails at m=" + std::to_string(m)};
        ++ins;
      } else if (c.verdict == CertifiedMembership::Verdict::Out) {
        for (int s = 0; s < 100000; ++s) {
          const ProductPoint p = random_point(rng, t);
          if (l1_dist(p, tower_orbit(t, p, m)).lo < c.lower_bound) {
            return {false, "sample beats the Out bound at m=" + std::to_string(m)};
          }
        }
        samples += 100000;
        ++outs;
      } else {
        ++unknowns;
      }
    }
  }
  std::uint64_t links = 0;
  for (auto [a1, index] : std::vector<std::pair<long, std::size_t>>{{3, 2}, {3, 1}, {2, 2}, {5, 1}, {5, 2}}) {
    const TheoremBConfig c = make_theoremB_config(3, BigInt(a1), q("1/145"));
    const json transcript = json::parse(to_json(certify_gap(c, index)).dump());
    if (!reverify_transcript(transcript)) return {false, "transcript link does not re-verify"};
    links += transcript["links"].size();
  }
  return {true, std::to_string(ins) + " In witnesses exact, " + std::to_string(outs) + " Out verdicts survive " +
                    std::to_string(samples) + " samples (" + std::to_string(unknowns) + " unknown), " +
                    std::to_string(links) + " transcript links re-verified"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "riemann closed form and bound", 30, riemann_identity},
      {2, "desk-scale gap certification", 300, desk_certification},
      {3, "return windows of powers", 10, power_windows},
      {4, "dilation inclusions", 10, dilation},
      {5, "iterated skew closed form", 60, iterated_closed_form},
      {6, "block sums along almost periods", 30, prop32},
      {7, "two-coloring dichotomy", 60, dichotomy},
      {8, "zero-sum oracle equivalence", 10, zero_sum},
      {9, "binary digit window regression", 30, example48},
      {10, "soundness audits", 120, soundness},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s budget)";
    }
    failures += !o.pass;
    std::printf("[%s] %2d %-34s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
