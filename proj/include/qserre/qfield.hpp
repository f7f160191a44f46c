#pragma once

// Exact coefficient field Q(s) with q = s^2.
//
// Everything in the engine carries coefficients from this field. Integer
// powers of q are even powers of s; the quantum-coordinate algebra needs
// q^{1/2} = s, which is why the base indeterminate is s rather than q.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qserre {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Sparse polynomial in s with integer coefficients.
///
/// Terms are kept with strictly increasing exponents and no zero
/// coefficients; the zero polynomial has no terms.
class QPoly {
 public:
  struct Term {
    std::uint32_t exp;
    Integer coeff;
    bool operator==(const Term&) const = default;
  };

  QPoly() = default;
  QPoly(long long c);  // NOLINT: integers embed implicitly
  QPoly(Integer c);    // NOLINT

  /// c * s^exp
  static QPoly monomial(Integer c, std::uint32_t exp);
  /// c * q^exp = c * s^(2 exp)
  static QPoly q_power(std::uint32_t exp, Integer c = 1) { return monomial(std::move(c), 2 * exp); }
  /// Builds from arbitrary (exp, coeff) pairs; combines duplicates, drops zeros.
  static QPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == 0); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// True when only even powers of s occur (a polynomial in q).
  bool is_even() const;

  /// Highest exponent; -1 for zero.
  long degree() const { return terms_.empty() ? -1 : static_cast<long>(terms_.back().exp); }
  /// Lowest exponent (s-adic valuation); 0 for zero.
  std::uint32_t valuation() const { return terms_.empty() ? 0 : terms_.front().exp; }
  const Integer& leading_coeff() const;
  Integer content() const;  // nonnegative gcd of coefficients
  Integer constant_coeff() const;

  QPoly operator-() const;
  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly scaled(const Integer& c) const;
  /// Exact division of every coefficient; throws if not exact.
  QPoly div_integer(const Integer& c) const;
  /// Multiplies by s^k.
  QPoly shifted_up(std::uint32_t k) const;
  /// Divides by s^k; requires k <= valuation().
  QPoly shifted_down(std::uint32_t k) const;
  /// p(s) -> p(-s)
  QPoly reflected() const;

  /// Exact quotient in Z[s]; throws ArithmeticError when b does not divide *this.
  QPoly div_exact(const QPoly& b) const;
  /// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
  QPoly pseudo_rem(const QPoly& b) const;

  Rational eval(const Rational& s) const;

  bool operator==(const QPoly&) const = default;

  /// Canonical text; uses q when all exponents are even, s otherwise.
  std::string to_string() const;
  /// Text in a fixed variable: 'q' requires is_even().
  std::string to_string(char var) const;

 private:
  std::vector<Term> terms_;
};

QPoly primitive_part(const QPoly& p);
/// gcd in Z[s]: integer content included, leading coefficient positive.
QPoly gcd(const QPoly& a, const QPoly& b);

/// Element of Q(s): num/den in lowest terms.
///
/// gcd(num, den) = 1 in Z[s] (integer content included) and the leading
/// coefficient of den is positive, which makes the representation unique
/// and equality field-wise.
class QRat {
 public:
  QRat() : num_(), den_(1) {}
  QRat(long long c) : num_(c), den_(1) {}  // NOLINT
  QRat(Integer c) : num_(std::move(c)), den_(1) {}  // NOLINT
  QRat(QPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
  QRat(QPoly num, QPoly den);

  static QRat q() { return QRat(QPoly::q_power(1)); }
  static QRat s() { return QRat(QPoly::monomial(1, 1)); }
  /// q^k for any integer k (negative powers land in the denominator).
  static QRat q_pow(long k);
  /// s^k for any integer k.
  static QRat s_pow(long k);
  static QRat fraction(Integer n, Integer d);

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_integer() const { return den_.is_one() && num_.is_constant(); }
  bool is_rational_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Even in s: lies in Q(q).
  bool is_even() const { return num_.is_even() && den_.is_even(); }
  /// Sign convention for rendering: sign of the numerator's leading coefficient.
  bool looks_negative() const;

  QRat operator-() const;
  QRat& operator+=(const QRat& o);
  QRat& operator-=(const QRat& o);
  QRat& operator*=(const QRat& o);
  QRat& operator/=(const QRat& o);
  friend QRat operator+(QRat a, const QRat& b) { return a += b; }
  friend QRat operator-(QRat a, const QRat& b) { return a -= b; }
  friend QRat operator*(QRat a, const QRat& b) { return a *= b; }
  friend QRat operator/(QRat a, const QRat& b) { return a /= b; }
  QRat inverse() const;
  QRat pow(long k) const;

  /// Exact value at s = point; throws ArithmeticError when den vanishes there.
  Rational eval(const Rational& point) const;

  bool operator==(const QRat& o) const { return num_ == o.num_ && den_ == o.den_; }
  /// Equality by cross-multiplication, independent of normalization.
  bool cross_equal(const QRat& o) const { return num_ * o.den_ == o.num_ * den_; }

  std::string to_string() const;

 private:
  struct Normalized {};
  QRat(QPoly num, QPoly den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}
  static QRat normalized(QPoly num, QPoly den);

  QPoly num_;
  QPoly den_;
};

std::string to_string(const Integer& i);
std::string to_string(const Rational& r);

}  // namespace qserre
