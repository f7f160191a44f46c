#include "qserre/freealg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qserre {

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<Family> families) : families_(std::move(families)) {
  for (const auto& f : families_) {
    if (f.count < 1) throw AlphabetError("family " + f.name + " must have rank >= 1");
    if (f.name.empty() || std::isdigit(static_cast<unsigned char>(f.name.back())))
      throw AlphabetError("invalid family name '" + f.name + "'");
    for (int i = 1; i <= f.count; ++i) {
      std::string n = f.name + std::to_string(i);
      if (std::find(names_.begin(), names_.end(), n) != names_.end())
        throw AlphabetError("duplicate letter " + n);
      names_.push_back(std::move(n));
    }
  }
  if (names_.size() > 250) throw AlphabetError("alphabet too large");
}

AlphabetPtr Alphabet::x_family(int rank) { return std::make_shared<const Alphabet>(std::vector<Family>{{"x", rank}}); }

AlphabetPtr Alphabet::chi_e(int rank) {
  return std::make_shared<const Alphabet>(std::vector<Family>{{"chi", rank}, {"e", rank}});
}

Letter Alphabet::letter(std::string_view family, int index) const {
  int offset = 0;
  for (const auto& f : families_) {
    if (f.name == family) {
      if (index < 1 || index > f.count)
        throw AlphabetError(std::string(family) + std::to_string(index) + " is outside the alphabet");
      return static_cast<Letter>(offset + index - 1);
    }
    offset += f.count;
  }
  throw AlphabetError("no letter family '" + std::string(family) + "'");
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Letter>(i);
  return std::nullopt;
}

bool Alphabet::has_family(std::string_view family) const {
  return std::any_of(families_.begin(), families_.end(), [&](const Family& f) { return f.name == family; });
}

int Alphabet::family_count(std::string_view family) const {
  for (const auto& f : families_)
    if (f.name == family) return f.count;
  throw AlphabetError("no letter family '" + std::string(family) + "'");
}

// ---------------------------------------------------------------- Word

Word::Word(std::initializer_list<Letter> letters) {
  for (Letter l : letters) push_back(l);
}

std::vector<int> Word::content(int alphabet_size) const {
  std::vector<int> c(static_cast<std::size_t>(alphabet_size), 0);
  for (char ch : letters_) ++c[static_cast<Letter>(ch)];
  return c;
}

std::string Word::to_string(const Alphabet& a) const {
  if (empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += ' ';
    out += a.name((*this)[i]);
  }
  return out;
}

// ---------------------------------------------------------------- NcPoly

NcPoly::NcPoly(AlphabetPtr alphabet, const QRat& scalar) : alphabet_(std::move(alphabet)) {
  if (!scalar.is_zero()) terms_.emplace(Word{}, scalar);
}

NcPoly::NcPoly(AlphabetPtr alphabet, const Word& w, const QRat& coeff) : alphabet_(std::move(alphabet)) {
  if (!coeff.is_zero()) terms_.emplace(w, coeff);
}

QRat NcPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? QRat() : it->second;
}

void NcPoly::add_term(const Word& w, const QRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void NcPoly::add_scaled(const NcPoly& p, const QRat& c, const Word& left, const Word& right) {
  check_alphabet(p);
  if (c.is_zero()) return;
  const bool unit = c.is_one();
  for (const auto& [w, a] : p.terms_) {
    const Word key = left.empty() && right.empty() ? w : left * w * right;
    add_term(key, unit ? a : a * c);
  }
}

void NcPoly::check_alphabet(const NcPoly& o) const {
  if (alphabet_ != o.alphabet_ && !(*alphabet_ == *o.alphabet_))
    throw AlphabetError("polynomials over different alphabets");
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
  check_alphabet(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
  check_alphabet(o);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NcPoly& NcPoly::operator*=(const QRat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& [w, a] : terms_) a *= c;
  return *this;
}

NcPoly NcPoly::operator-() const {
  NcPoly r = *this;
  for (auto& [w, a] : r.terms_) a = -a;
  return r;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
  a.check_alphabet(b);
  NcPoly r(a.alphabet_);
  for (const auto& [u, x] : a.terms_)
    for (const auto& [v, y] : b.terms_) r.add_term(u * v, x * y);
  return r;
}

NcPoly NcPoly::truncated(int max_degree) const {
  NcPoly r(alphabet_);
  for (const auto& [w, c] : terms_) {
    if (static_cast<int>(w.size()) > max_degree) break;
    r.terms_.emplace_hint(r.terms_.end(), w, c);
  }
  return r;
}

NcPoly NcPoly::homogeneous_part(int d) const {
  NcPoly r(alphabet_);
  for (const auto& [w, c] : terms_)
    if (static_cast<int>(w.size()) == d) r.terms_.emplace_hint(r.terms_.end(), w, c);
  return r;
}

NcPoly NcPoly::map_coefficients(const std::function<QRat(const QRat&)>& f) const {
  NcPoly r(alphabet_);
  for (const auto& [w, c] : terms_) {
    QRat v = f(c);
    if (!v.is_zero()) r.terms_.emplace_hint(r.terms_.end(), w, std::move(v));
  }
  return r;
}

bool NcPoly::operator==(const NcPoly& o) const {
  check_alphabet(o);
  return terms_ == o.terms_;
}

std::string NcPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Word& w = it->first;
    QRat c = it->second;
    const bool negative = c.looks_negative();
    if (negative) c = -c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (w.empty()) {
      const std::string t = c.to_string();
      os << (!c.num().is_monomial() || !c.is_polynomial() ? "(" + t + ")" : t);
      continue;
    }
    if (!c.is_one()) {
      if (c.is_polynomial() && c.num().is_monomial())
        os << c.to_string() << "*";
      else
        os << "(" << c.to_string() << ")*";
    }
    os << w.to_string(*alphabet_);
  }
  return os.str();
}

NcPoly substitute(const NcPoly& p, const AlphabetPtr& target, const std::vector<NcPoly>& images) {
  if (images.size() != static_cast<std::size_t>(p.alphabet()->size()))
    throw AlphabetError("substitution needs one image per letter");
  NcPoly out(target);
  for (const auto& [w, c] : p.terms()) {
    NcPoly term(target, c);
    for (std::size_t i = 0; i < w.size(); ++i) term = term * images[w[i]];
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------- elements

SpectralWindow::SpectralWindow(long lambda_, long mu_) : lambda(lambda_), mu(mu_) {
  if (lambda < mu)
    throw WindowError("spectral window requires lambda >= mu (got lambda=" + std::to_string(lambda) +
                      ", mu=" + std::to_string(mu) + ")");
}

namespace {

NcPoly one(const AlphabetPtr& a) { return NcPoly(a, QRat(1)); }

NcPoly qproduct_factor(const AlphabetPtr& a, Letter g, long j) {
  NcPoly f = one(a);
  f.add_term(Word{g}, -QRat::q_pow(j));
  return f;
}

Letter x_letter(const Alphabet& a, int n) { return a.letter("x", n); }

}  // namespace

NcPoly qproduct(const AlphabetPtr& alphabet, Letter g, SpectralWindow w) {
  if (g >= alphabet->size()) throw AlphabetError("letter outside the alphabet");
  NcPoly p = one(alphabet);
  for (long j = w.mu; j < w.lambda; ++j) p = p * qproduct_factor(alphabet, g, j);
  return p;
}

NcPoly qproduct_descending(const AlphabetPtr& alphabet, Letter g, SpectralWindow w) {
  if (g >= alphabet->size()) throw AlphabetError("letter outside the alphabet");
  NcPoly p = one(alphabet);
  for (long j = w.lambda - 1; j >= w.mu; --j) p = p * qproduct_factor(alphabet, g, j);
  return p;
}

NcPoly k_element(const AlphabetPtr& alphabet, int n) {
  const Letter a = x_letter(*alphabet, n);
  const Letter b = x_letter(*alphabet, n + 1);
  const QRat inv = QRat(1) / (QRat(1) - QRat::q());
  NcPoly k(alphabet);
  k.add_term(Word{a, b}, inv);
  k.add_term(Word{b, a}, -inv);
  return k;
}

NcPoly c_element(const AlphabetPtr& alphabet, int n) {
  const Letter a = x_letter(*alphabet, n);
  const Letter b = x_letter(*alphabet, n + 1);
  const QRat inv = QRat(1) / (QRat(1) - QRat::q());
  NcPoly c(alphabet);
  c.add_term(Word{a, b}, inv);
  c.add_term(Word{b, a}, -QRat::q() * inv);
  return c;
}

NcPoly lemma_product(const AlphabetPtr& alphabet, SpectralWindow w, ExponentChoice e, int n) {
  const Letter a = x_letter(*alphabet, n);
  const Letter b = x_letter(*alphabet, n + 1);
  const NcPoly k = k_element(alphabet, n);
  const NcPoly c = c_element(alphabet, n);
  const long exponent = e == ExponentChoice::lambda ? w.lambda : w.mu;

  NcPoly linear = NcPoly::letter(alphabet, a) + NcPoly::letter(alphabet, b) + k * QRat::q_pow(exponent);
  NcPoly p = one(alphabet);
  for (long j = w.mu; j < w.lambda; ++j) {
    NcPoly factor = one(alphabet) + c * QRat::q_pow(2 * j) - linear * QRat::q_pow(j);
    p = p * factor;
  }
  return p;
}

NcPoly big_q(const AlphabetPtr& alphabet, int rank, SpectralWindow w) {
  if (rank < 1) throw AlphabetError("rank must be >= 1");
  NcPoly p = one(alphabet);
  for (int i = rank; i >= 1; --i) p = p * qproduct(alphabet, x_letter(*alphabet, i), w);
  return p;
}

AybSides ayb_sides(const AlphabetPtr& alphabet, int n, long lambda, long mu, long nu) {
  if (!(lambda >= mu && mu >= nu))
    throw WindowError("AYB windows require lambda >= mu >= nu");
  const Letter lo = x_letter(*alphabet, n);
  const Letter hi = x_letter(*alphabet, n + 1);
  NcPoly lhs = qproduct(alphabet, hi, {lambda, mu}) * qproduct(alphabet, lo, {lambda, nu}) *
               qproduct(alphabet, hi, {mu, nu});
  NcPoly rhs = qproduct(alphabet, lo, {mu, nu}) * qproduct(alphabet, hi, {lambda, nu}) *
               qproduct(alphabet, lo, {lambda, mu});
  return {std::move(lhs), std::move(rhs)};
}

}  // namespace qserre
