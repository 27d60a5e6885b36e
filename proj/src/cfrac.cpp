#include "reclab/cfrac.hpp"

#include <sstream>

namespace reclab {

std::vector<Convergent> convergents(std::span<const BigInt> quotients) {
  if (quotients.empty()) throw DomainError("continued fraction needs at least one quotient");
  std::vector<Convergent> out;
  out.reserve(quotients.size() + 1);
  // p_{-1}/q_{-1} = 1/0, p_0/q_0 = 0/1 for [0; a_1, a_2, ...].
  BigInt p_prev = 1, q_prev = 0;
  out.push_back({BigInt(0), BigInt(1)});
  for (const BigInt& a : quotients) {
    if (a < 1) throw DomainError("partial quotients must be positive, got " + a.get_str());
    const Convergent& last = out.back();
    Convergent next{a * last.p + p_prev, a * last.q + q_prev};
    p_prev = last.p;
    q_prev = last.q;
    out.push_back(std::move(next));
  }
  return out;
}

ContinuedFraction::ContinuedFraction(std::vector<BigInt> quotients)
    : quotients_(std::move(quotients)), convergents_(convergents(quotients_)) {}

const BigInt& ContinuedFraction::quotient(std::size_t i) const {
  if (i == 0 || i > quotients_.size()) throw DomainError("quotient index out of range");
  return quotients_[i - 1];
}

const Convergent& ContinuedFraction::convergent(std::size_t i) const {
  if (i >= convergents_.size()) throw DomainError("convergent index out of range");
  return convergents_[i];
}

std::vector<std::string> ContinuedFraction::to_strings() const {
  std::vector<std::string> out;
  out.reserve(quotients_.size());
  for (const auto& a : quotients_) out.push_back(a.get_str());
  return out;
}

ContinuedFraction ContinuedFraction::from_strings(const std::vector<std::string>& quotients) {
  std::vector<BigInt> a;
  a.reserve(quotients.size());
  for (const auto& s : quotients) a.push_back(parse_bigint(s));
  return ContinuedFraction(std::move(a));
}

Approximation approx_with_error(const ContinuedFraction& cf, std::size_t index) {
  if (index + 1 > cf.depth()) {
    throw DomainError("convergent " + std::to_string(index) + " needs q_" + std::to_string(index + 1) +
                      " but depth is " + std::to_string(cf.depth()));
  }
  const Convergent& c = cf.convergent(index);
  const Convergent& next = cf.convergent(index + 1);
  return {c.value(), Rational(BigInt(1), c.q * next.q)};
}

Approximation best_approximation(const ContinuedFraction& cf) { return approx_with_error(cf, cf.depth() - 1); }

Approximation approximate(const RealSpec& x) {
  if (const auto* r = std::get_if<Rational>(&x)) return {*r, Rational(0)};
  return best_approximation(std::get<ContinuedFraction>(x));
}

bool is_exact(const RealSpec& x) { return std::holds_alternative<Rational>(x); }

std::string describe(const RealSpec& x) {
  if (const auto* r = std::get_if<Rational>(&x)) return r->str();
  std::ostringstream os;
  os << "cf:[";
  const auto& a = std::get<ContinuedFraction>(x).quotients();
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i].get_str();
  os << "]";
  return os.str();
}

Interval norm_multiple(const Rational& alpha, const BigInt& n) { return Interval::point(norm(alpha * Rational(n))); }

Interval norm_multiple(const ContinuedFraction& alpha, const BigInt& n, const Rational& tolerance) {
  const Interval out = norm_multiple(RealSpec(alpha), n);
  if (out.width() > tolerance) {
    throw PrecisionError("convergent depth " + std::to_string(alpha.depth()) + " cannot resolve ||n alpha|| for n = " +
                         n.get_str() + " to the requested tolerance");
  }
  return out;
}

Interval norm_multiple(const RealSpec& alpha, const BigInt& n) {
  const Approximation a = approximate(alpha);
  const Rational centre = a.value * Rational(n);
  if (a.error_bound.is_zero()) return Interval::point(norm(centre));
  return dist_to_zero(TorusPoint(centre, a.error_bound * Rational(BigInt(abs(n)))));
}

bool GrowthReport::all() const {
  for (bool h : holds) {
    if (!h) return false;
  }
  return true;
}

GrowthReport check_growth(const ContinuedFraction& cf, GrowthMode mode, unsigned smoothness_order) {
  const unsigned exponent = mode == GrowthMode::TheoremB ? 8u : 2u * smoothness_order;
  GrowthReport report;
  for (std::size_t i = 1; i < cf.depth(); ++i) {
    report.holds.push_back(cf.quotient(i + 1) >= pow(cf.convergent(i).q, exponent));
  }
  return report;
}

ContinuedFraction build_theoremB_quotients(std::size_t depth, const BigInt& a1) {
  if (depth < 2) throw DomainError("theorem B schedule needs depth >= 2");
  if (a1 < 1) throw DomainError("a_1 must be positive");
  std::vector<BigInt> a{a1};
  BigInt q_prev = 1, q = a1;
  while (a.size() < depth) {
    BigInt next = pow(q, 8);
    BigInt q_next = next * q + q_prev;
    a.push_back(std::move(next));
    q_prev = q;
    q = std::move(q_next);
  }
  return ContinuedFraction(std::move(a));
}

}  // namespace reclab
