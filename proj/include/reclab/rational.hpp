#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace reclab {

using BigInt = mpz_class;

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inputs violate an operation's precondition.
struct DomainError : Error {
  using Error::Error;
};

/// Operands have incompatible shapes (fiber counts, base kinds).
struct ShapeError : Error {
  using Error::Error;
};

/// An error-tracked quantity is too wide to decide the requested question.
struct PrecisionError : Error {
  using Error::Error;
};

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value wrapper around mpq_class; it exists so that the rest of the code
/// never sees GMP expression templates and always gets canonical values.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(implicit)
  Rational(int n) : q_(static_cast<long>(n)) {}  // NOLINT(implicit)
  Rational(const BigInt& n) : q_(n) {}  // NOLINT(implicit)
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "p/q" or "p" (optional leading sign). Throws DomainError.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return q_; }
  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }

  /// Canonical "num/den" text; integers render as "n/1".
  std::string str() const;
  double to_double() const { return q_.get_d(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational abs() const;
  BigInt floor() const;
  /// Fractional part in [0, 1).
  Rational frac() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

Rational pow(const Rational& base, unsigned exponent);
BigInt pow(const BigInt& base, unsigned exponent);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Parses a decimal integer, throwing DomainError on junk.
BigInt parse_bigint(std::string_view text);

}  // namespace reclab
