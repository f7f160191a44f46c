#pragma once

// Free associative algebra over Q(s) and the named elements built in it.

#include "qserre/qfield.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qserre {

class AlphabetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class WindowError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Letter identifier; identifiers double as precedence ranks (0 smallest).
using Letter = std::uint8_t;

/// Families of generators, e.g. x1..xr or chi1..chir followed by e1..er.
/// Letters are numbered family by family, which fixes the total order.
class Alphabet {
 public:
  struct Family {
    std::string name;
    int count;
    bool operator==(const Family&) const = default;
  };

  explicit Alphabet(std::vector<Family> families);

  static std::shared_ptr<const Alphabet> x_family(int rank);
  static std::shared_ptr<const Alphabet> chi_e(int rank);

  const std::vector<Family>& families() const { return families_; }
  int size() const { return static_cast<int>(names_.size()); }
  /// Letter of the given family with 1-based index.
  Letter letter(std::string_view family, int index) const;
  std::optional<Letter> find(std::string_view name) const;
  const std::string& name(Letter l) const { return names_.at(l); }
  bool has_family(std::string_view family) const;
  /// Rank of a family; throws if absent.
  int family_count(std::string_view family) const;

  bool operator==(const Alphabet& o) const { return families_ == o.families_; }

 private:
  std::vector<Family> families_;
  std::vector<std::string> names_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Noncommutative monomial: a finite sequence of letters. Empty is the unit.
class Word {
 public:
  Word() = default;
  explicit Word(std::string letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return static_cast<Letter>(letters_[i]); }
  const std::string& raw() const { return letters_; }

  Word sub(std::size_t pos, std::size_t len = std::string::npos) const { return Word(letters_.substr(pos, len)); }
  /// Position of the first occurrence of w at or after pos, or npos.
  std::size_t find(const Word& w, std::size_t pos = 0) const { return letters_.find(w.letters_, pos); }
  bool contains(const Word& w) const { return find(w) != std::string::npos; }

  Word& operator*=(const Word& o) {
    letters_ += o.letters_;
    return *this;
  }
  friend Word operator*(Word a, const Word& b) { return a *= b; }
  void push_back(Letter l) { letters_.push_back(static_cast<char>(l)); }
  void pop_back() { letters_.pop_back(); }

  /// Number of occurrences of each letter (length = alphabet size).
  std::vector<int> content(int alphabet_size) const;

  bool operator==(const Word&) const = default;

  std::string to_string(const Alphabet& a) const;

 private:
  std::string letters_;
};

/// Degree-lexicographic order: shorter words first, then letter by letter
/// from the left using letter precedence.
struct DegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.raw() < b.raw();
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const { return std::hash<std::string>{}(w.raw()); }
};

/// Element of the free algebra: finite map Word -> Q(s), no zero coefficients.
class NcPoly {
 public:
  using Terms = std::map<Word, QRat, DegLexLess>;

  explicit NcPoly(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}
  NcPoly(AlphabetPtr alphabet, const QRat& scalar);
  NcPoly(AlphabetPtr alphabet, const Word& w, const QRat& coeff = QRat(1));

  static NcPoly letter(AlphabetPtr alphabet, Letter l) { return NcPoly(std::move(alphabet), Word{l}); }

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Maximum word length; -1 for zero.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size()); }
  /// Minimum word length; -1 for zero.
  int low_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.size()); }
  bool is_homogeneous() const { return degree() == low_degree(); }
  /// True when only the empty word occurs (or zero).
  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  QRat coefficient(const Word& w) const;
  /// Largest word under deg-lex with its coefficient; requires nonzero.
  const std::pair<const Word, QRat>& leading() const { return *terms_.rbegin(); }

  void add_term(const Word& w, const QRat& c);
  void add_scaled(const NcPoly& p, const QRat& c, const Word& left = {}, const Word& right = {});

  NcPoly& operator+=(const NcPoly& o);
  NcPoly& operator-=(const NcPoly& o);
  NcPoly& operator*=(const QRat& c);
  NcPoly operator-() const;
  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
  friend NcPoly operator*(NcPoly a, const QRat& c) { return a *= c; }
  friend NcPoly operator*(const QRat& c, NcPoly a) { return a *= c; }

  /// Terms of word length <= max_degree.
  NcPoly truncated(int max_degree) const;
  /// Terms of word length exactly d.
  NcPoly homogeneous_part(int d) const;
  /// Applies f to every coefficient, dropping zeros.
  NcPoly map_coefficients(const std::function<QRat(const QRat&)>& f) const;

  bool operator==(const NcPoly& o) const;

  /// Canonical rendering: leading (deg-lex largest) term first, `(coeff)*x1 x2` form.
  std::string to_string() const;

 private:
  void check_alphabet(const NcPoly& o) const;

  AlphabetPtr alphabet_;
  Terms terms_;
};

/// Algebra map from p's free algebra into `target`, sending letter i to images[i].
NcPoly substitute(const NcPoly& p, const AlphabetPtr& target, const std::vector<NcPoly>& images);

/// Integer spectral window (lambda, mu) with lambda >= mu.
struct SpectralWindow {
  long lambda;
  long mu;

  SpectralWindow(long lambda_, long mu_);
  long length() const { return lambda - mu; }
};

/// Ascending product over j = mu .. lambda-1 of (1 - g q^j).
NcPoly qproduct(const AlphabetPtr& alphabet, Letter g, SpectralWindow w);
/// Same product with the factors multiplied in descending j (test aid for
/// the factor-commutativity invariant).
NcPoly qproduct_descending(const AlphabetPtr& alphabet, Letter g, SpectralWindow w);

/// k = (x_n x_{n+1} - x_{n+1} x_n)/(1 - q) on the pair starting at x_n.
NcPoly k_element(const AlphabetPtr& alphabet, int n = 1);
/// c = (x_n x_{n+1} - q x_{n+1} x_n)/(1 - q).
NcPoly c_element(const AlphabetPtr& alphabet, int n = 1);

enum class ExponentChoice { lambda, mu };

/// Ascending product over j of (1 + c q^{2j} - (x_n + x_{n+1} + k q^e) q^j),
/// e = lambda or mu.
NcPoly lemma_product(const AlphabetPtr& alphabet, SpectralWindow w, ExponentChoice e, int n = 1);

/// Ordered product (x_rank)^mu_lambda ... (x_1)^mu_lambda.
NcPoly big_q(const AlphabetPtr& alphabet, int rank, SpectralWindow w);

struct AybSides {
  NcPoly lhs;
  NcPoly rhs;
};

/// LHS = (x_{n+1})^mu_lambda (x_n)^nu_lambda (x_{n+1})^nu_mu,
/// RHS = (x_n)^nu_mu (x_{n+1})^nu_lambda (x_n)^mu_lambda.
AybSides ayb_sides(const AlphabetPtr& alphabet, int n, long lambda, long mu, long nu);

}  // namespace qserre
