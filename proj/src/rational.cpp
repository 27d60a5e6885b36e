#include "reclab/rational.hpp"

#include <cctype>

namespace reclab {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

BigInt parse_bigint(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!is_integer_literal(text)) throw DomainError("not an integer: '" + std::string(text) + "'");
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  const BigInt num = parse_bigint(text.substr(0, slash));
  const BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string Rational::str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

Rational Rational::abs() const {
  Rational r;
  mpq_abs(r.q_.get_mpq_t(), q_.get_mpq_t());
  return r;
}

BigInt Rational::floor() const {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return out;
}

Rational Rational::frac() const {
  BigInt rem;
  mpz_fdiv_r(rem.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return Rational(rem, q_.get_den());
}

Rational& Rational::operator+=(const Rational& o) {
  mpq_add(q_.get_mpq_t(), q_.get_mpq_t(), o.q_.get_mpq_t());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  mpq_sub(q_.get_mpq_t(), q_.get_mpq_t(), o.q_.get_mpq_t());
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  mpq_mul(q_.get_mpq_t(), q_.get_mpq_t(), o.q_.get_mpq_t());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  mpq_div(q_.get_mpq_t(), q_.get_mpq_t(), o.q_.get_mpq_t());
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  mpq_neg(r.q_.get_mpq_t(), q_.get_mpq_t());
  return r;
}

BigInt pow(const BigInt& base, unsigned exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow(const Rational& base, unsigned exponent) {
  return Rational(pow(base.num(), exponent), pow(base.den(), exponent));
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace reclab
