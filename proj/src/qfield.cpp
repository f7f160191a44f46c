#include "qserre/qfield.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qserre {

namespace {

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

Integer gcd_int(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

// Dense coefficient vector, index = exponent.
std::vector<Integer> to_dense(const QPoly& p) {
  std::vector<Integer> d(static_cast<std::size_t>(p.degree() + 1));
  for (const auto& t : p.terms()) d[t.exp] = t.coeff;
  return d;
}

QPoly from_dense(const std::vector<Integer>& d) {
  std::vector<QPoly::Term> out;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) out.push_back({static_cast<std::uint32_t>(i), d[i]});
  return QPoly::from_terms(std::move(out));
}

Rational rational_pow(Rational base, std::uint32_t e) {
  Rational r = 1;
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(long long c) {
  if (c != 0) terms_.push_back({0, Integer(c)});
}

QPoly::QPoly(Integer c) {
  if (c != 0) terms_.push_back({0, std::move(c)});
}

QPoly QPoly::monomial(Integer c, std::uint32_t exp) {
  QPoly p;
  if (c != 0) p.terms_.push_back({exp, std::move(c)});
  return p;
}

QPoly QPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  QPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool QPoly::is_one() const { return terms_.size() == 1 && terms_[0].exp == 0 && terms_[0].coeff == 1; }

bool QPoly::is_even() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.exp % 2 == 0; });
}

const Integer& QPoly::leading_coeff() const {
  static const Integer zero = 0;
  return terms_.empty() ? zero : terms_.back().coeff;
}

Integer QPoly::content() const {
  Integer g = 0;
  for (const auto& t : terms_) {
    g = gcd_int(g, t.coeff);
    if (g == 1) break;
  }
  return abs_int(g);
}

Integer QPoly::constant_coeff() const {
  if (!terms_.empty() && terms_.front().exp == 0) return terms_.front().coeff;
  return 0;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->exp < b->exp)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exp < a->exp) {
      out.push_back(*b++);
    } else {
      Integer c = a->coeff + b->coeff;
      if (c != 0) out.push_back({a->exp, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) { return *this += -o; }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1 && b.terms_.size() == 1)
    return QPoly::monomial(a.terms_[0].coeff * b.terms_[0].coeff, a.terms_[0].exp + b.terms_[0].exp);
  const auto span = static_cast<std::size_t>(a.degree() + b.degree() + 1);
  if (span <= 64 * a.terms_.size() * b.terms_.size() + 64) {
    std::vector<Integer> acc(span);
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) acc[x.exp + y.exp] += x.coeff * y.coeff;
    return from_dense(acc);
  }
  std::map<std::uint32_t, Integer> acc;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) acc[x.exp + y.exp] += x.coeff * y.coeff;
  std::vector<QPoly::Term> out;
  for (auto& [e, c] : acc)
    if (c != 0) out.push_back({e, std::move(c)});
  QPoly r;
  r.terms_ = std::move(out);
  return r;
}

QPoly QPoly::scaled(const Integer& c) const {
  if (c == 0) return {};
  QPoly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

QPoly QPoly::div_integer(const Integer& c) const {
  if (c == 0) throw ArithmeticError("division of polynomial by integer zero");
  QPoly r = *this;
  for (auto& t : r.terms_) {
    Integer rem;
    boost::multiprecision::divide_qr(t.coeff, c, t.coeff, rem);
    if (rem != 0) throw ArithmeticError("inexact integer division of polynomial");
  }
  return r;
}

QPoly QPoly::shifted_up(std::uint32_t k) const {
  QPoly r = *this;
  for (auto& t : r.terms_) t.exp += k;
  return r;
}

QPoly QPoly::shifted_down(std::uint32_t k) const {
  if (!terms_.empty() && k > valuation()) throw ArithmeticError("shift below s^0");
  QPoly r = *this;
  for (auto& t : r.terms_) t.exp -= k;
  return r;
}

QPoly QPoly::reflected() const {
  QPoly r = *this;
  for (auto& t : r.terms_)
    if (t.exp % 2) t.coeff = -t.coeff;
  return r;
}

QPoly QPoly::div_exact(const QPoly& b) const {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (is_zero()) return {};
  if (b.is_monomial()) {
    if (valuation() < b.valuation()) throw ArithmeticError("inexact polynomial division");
    return shifted_down(b.valuation()).div_integer(b.leading_coeff());
  }
  if (degree() < b.degree()) throw ArithmeticError("inexact polynomial division");
  std::vector<Integer> rem = to_dense(*this);
  const std::vector<Integer> den = to_dense(b);
  const long db = b.degree();
  std::vector<Integer> quot(static_cast<std::size_t>(degree() - db + 1));
  for (long i = degree(); i >= db; --i) {
    if (rem[i] == 0) continue;
    Integer qc, r;
    boost::multiprecision::divide_qr(rem[i], den[db], qc, r);
    if (r != 0) throw ArithmeticError("inexact polynomial division");
    for (long j = 0; j <= db; ++j) rem[i - db + j] -= qc * den[j];
    quot[i - db] = std::move(qc);
  }
  for (const auto& c : rem)
    if (c != 0) throw ArithmeticError("inexact polynomial division");
  return from_dense(quot);
}

QPoly QPoly::pseudo_rem(const QPoly& b) const {
  if (b.is_zero()) throw ArithmeticError("pseudo-remainder by zero");
  if (degree() < b.degree()) return *this;
  std::vector<Integer> rem = to_dense(*this);
  const std::vector<Integer> den = to_dense(b);
  const long db = b.degree();
  const Integer& lc = den[db];
  for (long i = degree(); i >= db; --i) {
    const Integer factor = rem[i];
    for (auto& c : rem) c *= lc;
    if (factor != 0)
      for (long j = 0; j <= db; ++j) rem[i - db + j] -= factor * den[j];
  }
  rem.resize(static_cast<std::size_t>(db));
  return from_dense(rem);
}

Rational QPoly::eval(const Rational& s) const {
  Rational acc = 0;
  for (const auto& t : terms_) acc += Rational(t.coeff) * rational_pow(s, t.exp);
  return acc;
}

std::string QPoly::to_string() const { return to_string(is_even() ? 'q' : 's'); }

std::string QPoly::to_string(char var) const {
  if (terms_.empty()) return "0";
  const bool in_q = var == 'q';
  if (in_q && !is_even()) throw std::invalid_argument("odd power of s cannot be written in q");
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const std::uint32_t e = in_q ? t.exp / 2 : t.exp;
    Integer c = t.coeff;
    if (c < 0) {
      os << "-";
      c = -c;
    } else if (!first) {
      os << "+";
    }
    if (e == 0) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << var;
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

QPoly primitive_part(const QPoly& p) {
  if (p.is_zero()) return p;
  Integer c = p.content();
  if (p.leading_coeff() < 0) c = -c;
  return c == 1 ? p : p.div_integer(c);
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero()) return b.leading_coeff() < 0 ? -b : b;
  if (b.is_zero()) return a.leading_coeff() < 0 ? -a : a;
  if (a.is_one() || b.is_one()) return QPoly(1);

  const std::uint32_t v = std::min(a.valuation(), b.valuation());
  const Integer c = gcd_int(a.content(), b.content());
  QPoly x = primitive_part(a.shifted_down(a.valuation()));
  QPoly y = primitive_part(b.shifted_down(b.valuation()));
  if (x.is_constant() || y.is_constant()) return QPoly::monomial(c, v);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.is_constant()) {
      x = QPoly(1);
      break;
    }
    QPoly r = primitive_part(x.pseudo_rem(y));
    x = std::move(y);
    y = std::move(r);
  }
  return primitive_part(x).shifted_up(v).scaled(c);
}

// ---------------------------------------------------------------- QRat

QRat::QRat(QPoly num, QPoly den) : QRat(normalized(std::move(num), std::move(den))) {}

QRat QRat::normalized(QPoly num, QPoly den) {
  if (den.is_zero()) throw ArithmeticError("division by zero");
  if (num.is_zero()) return QRat();
  if (!den.is_one()) {
    QPoly g = gcd(num, den);
    if (!g.is_one()) {
      num = num.div_exact(g);
      den = den.div_exact(g);
    }
    if (den.leading_coeff() < 0) {
      num = -num;
      den = -den;
    }
  }
  return QRat(std::move(num), std::move(den), Normalized{});
}

QRat QRat::q_pow(long k) { return s_pow(2 * k); }

QRat QRat::s_pow(long k) {
  if (k >= 0) return QRat(QPoly::monomial(1, static_cast<std::uint32_t>(k)), QPoly(1), Normalized{});
  return QRat(QPoly(1), QPoly::monomial(1, static_cast<std::uint32_t>(-k)), Normalized{});
}

QRat QRat::fraction(Integer n, Integer d) { return QRat(QPoly(std::move(n)), QPoly(std::move(d))); }

bool QRat::looks_negative() const { return num_.leading_coeff() < 0; }

QRat QRat::operator-() const { return QRat(-num_, den_, Normalized{}); }

QRat& QRat::operator+=(const QRat& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    return *this = normalized(num_ + o.num_, den_);
  }
  QPoly g = gcd(den_, o.den_);
  if (g.is_one()) {
    QPoly n = num_ * o.den_ + o.num_ * den_;
    if (n.is_zero()) return *this = QRat();
    return *this = QRat(std::move(n), den_ * o.den_, Normalized{});
  }
  QPoly b1 = den_.div_exact(g);
  QPoly d1 = o.den_.div_exact(g);
  QPoly n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) return *this = QRat();
  QPoly d = b1 * o.den_;
  QPoly g2 = gcd(n, g);
  if (!g2.is_one()) {
    n = n.div_exact(g2);
    d = d.div_exact(g2);
  }
  return *this = QRat(std::move(n), std::move(d), Normalized{});
}

QRat& QRat::operator-=(const QRat& o) { return *this += -o; }

QRat& QRat::operator*=(const QRat& o) {
  if (is_zero() || o.is_zero()) return *this = QRat();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  QPoly g1 = gcd(num_, o.den_);
  QPoly g2 = gcd(o.num_, den_);
  QPoly n = (g1.is_one() ? num_ : num_.div_exact(g1)) * (g2.is_one() ? o.num_ : o.num_.div_exact(g2));
  QPoly d = (g2.is_one() ? den_ : den_.div_exact(g2)) * (g1.is_one() ? o.den_ : o.den_.div_exact(g1));
  if (d.leading_coeff() < 0) {
    n = -n;
    d = -d;
  }
  num_ = std::move(n);
  den_ = std::move(d);
  return *this;
}

QRat& QRat::operator/=(const QRat& o) { return *this *= o.inverse(); }

QRat QRat::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  if (num_.leading_coeff() < 0) return QRat(-den_, -num_, Normalized{});
  return QRat(den_, num_, Normalized{});
}

QRat QRat::pow(long k) const {
  QRat base = k < 0 ? inverse() : *this;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  QRat r(1);
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

Rational QRat::eval(const Rational& point) const {
  const Rational d = den_.eval(point);
  if (d == 0)
    throw ArithmeticError("denominator " + den_.to_string() + " vanishes at s = " + qserre::to_string(point));
  return num_.eval(point) / d;
}

std::string QRat::to_string() const {
  if (den_.is_one()) return num_.to_string();
  const char var = is_even() ? 'q' : 's';
  auto atom = [](const QPoly& p, char v, bool allow_single_term) {
    std::string t = p.to_string(v);
    const bool single = p.terms().size() == 1;
    const bool bare = single && (p.is_constant() ? p.leading_coeff() > 0 : p.leading_coeff() == 1);
    if (bare || (allow_single_term && single)) return t;
    return "(" + t + ")";
  };
  return atom(num_, var, true) + "/" + atom(den_, var, false);
}

std::string to_string(const Integer& i) { return i.str(); }

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace qserre
