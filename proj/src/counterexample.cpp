#include "reclab/counterexample.hpp"

#include <numeric>
#include <random>

#include "reclab/parallel.hpp"

namespace reclab {

namespace {

BigInt big(std::uint64_t n) { return BigInt(static_cast<unsigned long>(n)); }

const Rational kOneSixth(1, 6);
const Rational kOneTwelfth(1, 12);
const Rational kOneThird(1, 3);

// True when a_{j+1} = q_j^8 for every known j, i.e. alpha follows the minimal
// schedule and can be extended without guessing.
bool follows_minimal_schedule(const ContinuedFraction& cf) {
  for (std::size_t j = 1; j < cf.depth(); ++j) {
    if (cf.quotient(j + 1) != pow(cf.convergent(j).q, 8)) return false;
  }
  return true;
}

struct SumContext {
  BigInt p;  // alpha ~ p/q
  BigInt q;
  std::uint64_t m;
  Rational m_beta;
  Rational perturbation;
};

SumContext sum_context(const TheoremBConfig& config, std::size_t index) {
  ContinuedFraction cf = config.alpha;
  if (index + 1 > cf.depth()) throw DomainError("convergent depth too small for the requested index");
  if (follows_minimal_schedule(cf)) cf = build_theoremB_quotients(cf.depth() + 1, cf.quotient(1));
  const std::size_t J = cf.depth() - 1;
  const Approximation a = approx_with_error(cf, J);
  const BigInt& m_big = config.alpha.convergent(index).q;
  if (!m_big.fits_ulong_p()) throw DomainError("m too large for direct summation");
  SumContext ctx{cf.convergent(J).p, cf.convergent(J).q, m_big.get_ui(), config.beta * Rational(m_big), Rational(0)};
  // |x + i alpha - (x + i p/q)| <= i * err, summed over i < m, times L.
  ctx.perturbation = config.lipschitz * a.error_bound * Rational(BigInt(big(ctx.m) * big(ctx.m - 1) / 2));
  return ctx;
}

// Exact sum_{i<m} H(x + i p/q) with H(y) = y^2 (1 - y)^2 - 1/30 on [0, 1).
Rational direct_cocycle_sum(const SumContext& ctx, const Rational& x) {
  const Rational xr = x.frac();
  const BigInt D = xr.den() * ctx.q;
  const BigInt step = ctx.p * xr.den();
  BigInt y = xr.num() * ctx.q;
  BigInt total = 0, t, u;
  for (std::uint64_t i = 0; i < ctx.m; ++i) {
    mpz_sub(t.get_mpz_t(), D.get_mpz_t(), y.get_mpz_t());
    mpz_mul(u.get_mpz_t(), y.get_mpz_t(), t.get_mpz_t());
    mpz_addmul(total.get_mpz_t(), u.get_mpz_t(), u.get_mpz_t());
    mpz_add(y.get_mpz_t(), y.get_mpz_t(), step.get_mpz_t());
    if (y >= D) mpz_sub(y.get_mpz_t(), y.get_mpz_t(), D.get_mpz_t());
  }
  return Rational(total, pow(D, 4)) - Rational(big(ctx.m), BigInt(30));
}

Rational gap_lower(const SumContext& ctx, const Rational& x) {
  return norm(direct_cocycle_sum(ctx, x) + ctx.m_beta) - ctx.perturbation;
}

}  // namespace

SkewMap htilde() {
  return SkewMap::poly({Rational(-1, 30), Rational(0), Rational(1), Rational(-2), Rational(1)});
}

Rational H_eval(const Rational& x) {
  if (x.sign() < 0 || x > Rational(1)) throw DomainError("H is evaluated on [0, 1]");
  const Rational x2 = x * x;
  return x2 * x2 - Rational(2) * x2 * x + x2 - Rational(1, 30);
}

Rational riemann_closed_form(std::uint64_t n, const Rational& x) {
  if (n == 0) throw DomainError("n must be positive");
  const Rational nn(big(n));
  if (x.sign() < 0 || x > Rational(1) / nn) throw DomainError("closed form needs 0 <= x <= 1/n");
  const Rational x2 = x * x;
  return nn * x2 * x2 - Rational(2) * x2 * x + x2 / nn - Rational(1) / (Rational(30) * nn * nn * nn);
}

Rational riemann_bound(std::uint64_t n) {
  if (n < 4) throw DomainError("Riemann sum bound needs n >= 4");
  const Rational nn(big(n));
  const Rational bound = Rational(121) / (Rational(30) * nn * nn * nn);
  if (!(bound < kOneTwelfth)) throw DomainError("Riemann bound is not below 1/12");
  return bound;
}

BetaSelection select_beta(std::span<const BigInt> n_list, const Rational& threshold, std::uint64_t denominator_cap,
                          std::uint64_t modulus) {
  if (n_list.empty()) throw DomainError("select_beta needs a nonempty list");
  BetaSelection best{Rational(0), {}};
  std::vector<std::uint64_t> residues(n_list.size());
  for (std::uint64_t c = 2; c <= denominator_cap; ++c) {
    if (std::gcd(c, modulus) != 1) continue;
    for (std::size_t j = 0; j < n_list.size(); ++j) {
      BigInt r;
      mpz_fdiv_r_ui(r.get_mpz_t(), n_list[j].get_mpz_t(), c);
      residues[j] = r.get_ui();
    }
    for (std::uint64_t b = 1; b < c; ++b) {
      if (std::gcd(b, c) != 1) continue;
      std::vector<std::size_t> hits;
      for (std::size_t j = 0; j < n_list.size(); ++j) {
        const std::uint64_t r = residues[j] * b % c;
        if (Rational(big(std::min(r, c - r)), big(c)) > threshold) hits.push_back(j);
      }
      if (hits.size() > best.satisfied.size()) {
        best = {Rational(big(b), big(c)), std::move(hits)};
        if (best.satisfied.size() == n_list.size()) return best;
      }
    }
  }
  if (best.satisfied.empty()) throw DomainError("no beta within the denominator cap satisfies any index");
  return best;
}

TheoremBConfig make_theoremB_config(std::size_t depth, const BigInt& a1, const Rational& delta,
                                    std::uint64_t beta_denominator_cap) {
  ContinuedFraction cf = build_theoremB_quotients(depth, a1);
  std::vector<BigInt> n_list;
  for (std::size_t i = 1; i < depth; ++i) n_list.push_back(cf.convergent(i).q);
  const BetaSelection sel = select_beta(n_list, kOneThird, beta_denominator_cap);
  TheoremBConfig config{cf, sel.beta, delta, lipschitz_bound(htilde()), {}};
  for (std::size_t pos : sel.satisfied) {
    const std::size_t i = pos + 1;
    const Approximation a = approx_with_error(cf, i);
    const Rational m(cf.convergent(i).q);
    if (m * m * a.error_bound < delta) config.selected_indices.push_back(i);
  }
  return config;
}

std::string relation_symbol(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::LessEq: return "<=";
    case Relation::Equal: return "==";
    case Relation::Greater: return ">";
    case Relation::GreaterEq: return ">=";
  }
  return "?";
}

bool evaluate(Relation r, const Rational& lhs, const Rational& rhs) {
  switch (r) {
    case Relation::Less: return lhs < rhs;
    case Relation::LessEq: return lhs <= rhs;
    case Relation::Equal: return lhs == rhs;
    case Relation::Greater: return lhs > rhs;
    case Relation::GreaterEq: return lhs >= rhs;
  }
  return false;
}

GapCertificate certify_gap(const TheoremBConfig& config, std::size_t index) {
  GapCertificate cert;
  cert.index = index;
  auto link = [&](std::string name, Rational lhs, Relation rel, Rational rhs) {
    const bool holds = evaluate(rel, lhs, rhs);
    if (!holds && cert.failed_link.empty()) cert.failed_link = name;
    cert.links.push_back({std::move(name), std::move(lhs), rel, std::move(rhs), holds});
    return holds;
  };

  const ContinuedFraction& cf = config.alpha;
  const Rational depth_needed(big(index + 1));
  if (index == 0 || !link("convergent_depth", depth_needed, Relation::LessEq, Rational(big(cf.depth())))) {
    if (cert.failed_link.empty()) cert.failed_link = "convergent_depth";
    return cert;
  }
  const BigInt& m = cf.convergent(index).q;
  const BigInt& k = cf.convergent(index).p;
  const Rational mr(m);
  const Rational err = approx_with_error(cf, index).error_bound;
  const Rational& L = config.lipschitz;
  const Rational& delta = config.delta;

  const bool riemann_ok = link("riemann_threshold", mr, Relation::GreaterEq, Rational(4));
  link("lipschitz_valid", L, Relation::GreaterEq, lipschitz_bound(htilde()));
  link("delta_below_1_over_12L", delta, Relation::Less, Rational(1) / (Rational(12) * L));

  BigInt g;
  mpz_gcd(g.get_mpz_t(), k.get_mpz_t(), m.get_mpz_t());
  link("coprime", Rational(g), Relation::Equal, Rational(1));
  // |m alpha - k| <= m err, so k is the nearest integer once this is < 1/2.
  link("nearest_integer", mr * err, Relation::Less, Rational(1, 2));
  link("alpha_approximation", err, Relation::Less, delta / (mr * mr));
  link("recurrence_in_base", mr * mr * err, Relation::Less, delta);

  // sigma(i) = i k mod m must be a permutation of {0, ..., m-1}.
  if (!m.fits_ulong_p()) throw DomainError("m too large for the permutation check");
  const std::uint64_t mm = m.get_ui();
  BigInt k_mod;
  mpz_fdiv_r_ui(k_mod.get_mpz_t(), k.get_mpz_t(), mm);
  const unsigned __int128 kk = k_mod.get_ui();
  std::vector<bool> seen(mm, false);
  std::uint64_t distinct = 0;
  for (std::uint64_t i = 0; i < mm; ++i) {
    const auto s = static_cast<std::uint64_t>(kk * i % mm);
    if (!seen[s]) {
      seen[s] = true;
      ++distinct;
    }
  }
  link("permutation", Rational(big(distinct)), Relation::Equal, mr);

  // ||i alpha - sigma(i)/m|| = ||i (alpha - k/m)|| <= i err for each i < m.
  BigInt index_sum = 0;
  for (std::uint64_t i = 0; i < mm; ++i) index_sum += big(i);
  const Rational rearrangement = Rational(index_sum) * err;
  link("rearrangement", rearrangement, Relation::LessEq, delta);
  link("lipschitz_transfer", L * rearrangement, Relation::LessEq, L * delta);

  if (riemann_ok) {
    link("riemann_bound", Rational(121) / (Rational(30) * mr * mr * mr), Relation::Less, kOneTwelfth);
  }
  const Rational sup_bound = L * delta + kOneTwelfth;
  link("sup_Hm", sup_bound, Relation::Less, kOneSixth);
  const Rational beta_norm = norm(config.beta * mr);
  link("beta_norm", beta_norm, Relation::Greater, kOneThird);
  const Rational margin = beta_norm - sup_bound;
  link("margin", margin, Relation::Greater, kOneSixth);

  if (cert.success()) cert.margin = CertifiedMargin{m, sup_bound, beta_norm, margin};
  return cert;
}

Rational gap_at(const TheoremBConfig& config, std::size_t index, const Rational& x) {
  return gap_lower(sum_context(config, index), x);
}

SpotCheckReport spot_check_gap(const TheoremBConfig& config, std::size_t index, std::size_t sample_count,
                               std::uint64_t seed) {
  SpotCheckReport report;
  report.samples = sample_count;
  if (sample_count == 0) return report;
  const SumContext ctx = sum_context(config, index);
  report.alpha_perturbation = ctx.perturbation;
  std::mt19937_64 rng(seed);
  std::vector<Rational> xs;
  xs.reserve(sample_count);
  xs.emplace_back(0);
  const BigInt two32 = pow(BigInt(2), 32);
  while (xs.size() < sample_count) xs.emplace_back(BigInt(static_cast<unsigned long>(rng() >> 32)), two32);
  const auto values = parallel_map<Rational>(xs.size(), [&](std::size_t i) { return gap_lower(ctx, xs[i]); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  report.minimum = values[best];
  report.argmin = xs[best];
  return report;
}

}  // namespace reclab
