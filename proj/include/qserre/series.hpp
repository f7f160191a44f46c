#pragma once

// Truncated formal power series in the x-letters with coefficients that are
// polynomials in three central indeterminates L, M, N (standing for q^lambda,
// q^mu, q^nu) over Q(s).

#include "qserre/verify.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qserre {

/// Exponents of (L, M, N).
using ParamExp = std::array<std::uint16_t, 3>;

enum Param : std::size_t { kLambda = 0, kMu = 1, kNu = 2 };

class SeriesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Polynomial in L, M, N over Q(s); zero coefficients are never stored.
class ParamPoly {
 public:
  ParamPoly() = default;
  explicit ParamPoly(const QRat& c);
  static ParamPoly variable(Param p);

  const std::map<ParamExp, QRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Nonzero and free of L, M, N.
  bool is_constant() const;
  QRat constant_term() const;

  ParamPoly& operator+=(const ParamPoly& o);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  friend ParamPoly operator*(const QRat& c, const ParamPoly& a);
  bool operator==(const ParamPoly&) const = default;

  QRat eval(const std::array<QRat, 3>& at) const;

 private:
  void add(const ParamExp& e, const QRat& c);
  std::map<ParamExp, QRat> terms_;
};

/// Series truncated above x-degree `cutoff`, stored as one NcPoly per L,M,N monomial.
class FormalSeries {
 public:
  using Parts = std::map<ParamExp, NcPoly>;

  FormalSeries(AlphabetPtr alphabet, int cutoff);
  FormalSeries(const NcPoly& p, int cutoff);
  static FormalSeries scalar(AlphabetPtr alphabet, const ParamPoly& c, int cutoff);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  int cutoff() const { return cutoff_; }
  const Parts& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }
  NcPoly part(const ParamExp& e) const;

  void add_part(const ParamExp& e, const NcPoly& p);
  FormalSeries& operator+=(const FormalSeries& o);
  FormalSeries& operator-=(const FormalSeries& o);
  friend FormalSeries operator+(FormalSeries a, const FormalSeries& b) { return a += b; }
  friend FormalSeries operator-(FormalSeries a, const FormalSeries& b) { return a -= b; }
  friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);
  bool operator==(const FormalSeries& o) const;

  /// Sets (L, M, N) to the given scalars.
  NcPoly specialize(const std::array<QRat, 3>& at) const;
  /// Constant part (x-degree 0) as a polynomial in L, M, N.
  ParamPoly constant_term() const;

  std::string to_string() const;

 private:
  void check_compatible(const FormalSeries& o) const;

  AlphabetPtr alphabet_;
  int cutoff_;
  Parts parts_;
};

/// prod_{j>=0} (1 - scale gen q^j) up to x-degree D.
FormalSeries pochhammer_inf(const AlphabetPtr& alphabet, Letter gen, const ParamPoly& scale, int cutoff);

/// Throws SeriesError unless the constant term is a nonzero scalar free of L, M, N.
FormalSeries series_inverse(const FormalSeries& a);

/// (gen q^mu)_inf / (gen q^lambda)_inf for central scales.
FormalSeries ratio_series(const AlphabetPtr& alphabet, Letter gen, const ParamPoly& upper_scale,
                          const ParamPoly& lower_scale, int cutoff);

/// (x)^mu_lambda against the truncated ratio of infinite products, in one letter.
VerificationReport check_ratio_identity(long mu, long lambda, int cutoff);

struct FormalAybSides {
  FormalSeries lhs;
  FormalSeries rhs;
};

/// Both AYB sides with R_n(L, M) = pochhammer_inf(x_n, M) / pochhammer_inf(x_n, L).
FormalAybSides formal_ayb_sides(const AlphabetPtr& alphabet, int n, int cutoff);

/// Formal AYB modulo the ideal: every L,M,N coefficient of LHS - RHS reduces
/// to zero, LHS - RHS vanishes in the ideal at `specializations` random
/// rational points for (L, M, N), and the integer points L = q^lambda etc.
/// reproduce the truncated polynomial sides exactly.
VerificationReport check_ayb_formal(const AlgebraContext& ctx, int n, int cutoff, int specializations,
                                    const VerifyOptions& opts);

}  // namespace qserre
