#pragma once

// Test-side oracles and generators. Nothing here calls the code under test
// beyond constructing values.

#include "qserre/freealg.hpp"

#include <random>
#include <vector>

namespace qserre::testing {

/// Taylor coefficients of a in s up to s^order (den(0) must be nonzero).
inline std::vector<Rational> s_series(const QRat& a, int order) {
  auto coeffs = [order](const QPoly& p) {
    std::vector<Rational> v(static_cast<std::size_t>(order + 1));
    for (const auto& t : p.terms())
      if (static_cast<int>(t.exp) <= order) v[t.exp] = Rational(t.coeff);
    return v;
  };
  const auto n = coeffs(a.num());
  const auto d = coeffs(a.den());
  if (d[0] == 0) throw std::invalid_argument("den vanishes at s = 0");
  std::vector<Rational> out(n.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    Rational acc = n[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= d[j] * out[k - j];
    out[k] = acc / d[0];
  }
  return out;
}

/// Coefficients of t^0..t^n in prod_h (1 - t^h)^(-mult[h]), h >= 1.
inline std::vector<std::uint64_t> inverse_product_series(const std::vector<std::pair<int, int>>& height_mult, int n) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(n + 1), 0);
  c[0] = 1;
  for (auto [h, m] : height_mult)
    for (int rep = 0; rep < m; ++rep)
      for (int k = h; k <= n; ++k) c[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k - h)];
  return c;
}

inline QRat random_qrat(std::mt19937_64& rng, bool allow_odd = false) {
  std::uniform_int_distribution<int> coeff(-3, 3), deg(0, 3), terms(1, 3);
  auto poly = [&](bool nonzero) {
    std::vector<QPoly::Term> t;
    for (int i = terms(rng); i > 0; --i) {
      const auto e = static_cast<std::uint32_t>(allow_odd ? deg(rng) : 2 * deg(rng));
      t.push_back({e, Integer(coeff(rng))});
    }
    QPoly p = QPoly::from_terms(std::move(t));
    if (nonzero && p.is_zero()) p = QPoly(1);
    return p;
  };
  return QRat(poly(false), poly(true));
}

inline Word random_word(std::mt19937_64& rng, int alphabet_size, int length) {
  std::uniform_int_distribution<int> letter(0, alphabet_size - 1);
  Word w;
  for (int i = 0; i < length; ++i) w.push_back(static_cast<Letter>(letter(rng)));
  return w;
}

inline NcPoly random_poly(std::mt19937_64& rng, const AlphabetPtr& a, int max_degree, int max_terms) {
  std::uniform_int_distribution<int> len(0, max_degree), n(0, max_terms);
  NcPoly p(a);
  for (int i = n(rng); i > 0; --i) p.add_term(random_word(rng, a->size(), len(rng)), random_qrat(rng));
  return p;
}

}  // namespace qserre::testing
