#pragma once

// Rewriting modulo the q-Serre presentations.
//
// Rules are oriented by deg-lex (letter ids give precedence). All defining
// relations are homogeneous, so completion runs degree by degree and a rule
// set certified to degree d yields canonical normal forms for every
// polynomial of degree <= d.

#include "qserre/freealg.hpp"

#include <climits>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

namespace qserre {

constexpr int kUnboundedDegree = INT_MAX;

/// lhs -> rhs with every word of rhs strictly below lhs.
struct RewriteRule {
  Word lhs;
  NcPoly rhs;
};

class RuleSet {
 public:
  RuleSet(AlphabetPtr alphabet, std::vector<RewriteRule> rules, int completed_degree);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  /// Critical pairs are certified to resolve up to this degree.
  int completed_degree() const { return completed_degree_; }

  struct Match {
    std::size_t pos;
    std::size_t rule;
  };
  /// Leftmost occurrence of any lhs in w.
  std::optional<Match> leftmost_match(const Word& w) const;
  /// Index of the rule whose lhs is a suffix of w, if any.
  std::optional<std::size_t> suffix_match(const Word& w) const;
  bool is_normal(const Word& w) const { return !leftmost_match(w).has_value(); }

 private:
  AlphabetPtr alphabet_;
  std::vector<RewriteRule> rules_;
  int completed_degree_;
  std::unordered_map<std::string, std::size_t> by_lhs_;
  std::vector<std::size_t> lhs_lengths_;  // distinct, ascending
};

using RuleSetPtr = std::shared_ptr<const RuleSet>;

/// Coefficients of x_n x_n x_{n+1} + outer x_{n+1} x_n x_n = middle x_n x_{n+1} x_n
/// (and its mirror). The defaults are the q-Serre values.
struct SerreCoefficients {
  QRat outer = QRat::q();
  QRat middle = QRat(1) + QRat::q();
};

/// Relations (as polynomials equal to zero) of the rank-r x-algebra.
std::vector<NcPoly> x_relations(const AlphabetPtr& alphabet, const SerreCoefficients& coeffs = {});
/// Relations of the chi/e algebra: e-Serre with q^{1/2}+q^{-1/2}, chi_n chi_{n+1} = q^{1/2} chi_{n+1} chi_n,
/// distant chi's and distant e's commute, every chi commutes with every e.
std::vector<NcPoly> chi_e_relations(const AlphabetPtr& alphabet);

/// Orients homogeneous relations by their leading words and inter-reduces.
/// The certified degree is one less than the smallest critical-pair degree.
RuleSet rules_from_relations(const AlphabetPtr& alphabet, const std::vector<NcPoly>& relations);

RuleSet base_rules(int rank);
RuleSet chi_e_rules(int rank);

/// Non-thread-safe normal-form engine with a per-word memo.
class Rewriter {
 public:
  explicit Rewriter(RuleSetPtr rules) : rules_(std::move(rules)) {}

  const RuleSet& rules() const { return *rules_; }
  /// Switches to an extended rule set; memoized forms of words shorter than
  /// min_affected_length stay valid and are kept.
  void rebind(RuleSetPtr rules, std::size_t min_affected_length);
  const NcPoly& normal_form(const Word& w);
  NcPoly reduce(const NcPoly& p);
  std::size_t cache_size() const { return cache_.size(); }

 private:
  RuleSetPtr rules_;
  std::unordered_map<Word, NcPoly, WordHash> cache_;
};

struct ReduceResult {
  NcPoly value;
  /// False when deg(p) exceeds the certified degree: value is then a valid
  /// remainder modulo the ideal but possibly not canonical.
  bool certified;
};

/// Thread-safe reducer over an immutable rule set.
class Reducer {
 public:
  explicit Reducer(RuleSetPtr rules) : rules_(rules), engine_(std::move(rules)) {}

  const RuleSet& rules() const { return *rules_; }
  const RuleSetPtr& rules_ptr() const { return rules_; }
  NcPoly reduce(const NcPoly& p) const;
  ReduceResult reduce_checked(const NcPoly& p) const;

 private:
  RuleSetPtr rules_;
  mutable std::mutex mutex_;
  mutable Rewriter engine_;
};

struct CriticalPair {
  std::size_t first;   // rule whose lhs is the prefix
  std::size_t second;  // rule whose lhs is the suffix
  std::size_t overlap;
  Word word;
};

/// All proper overlaps lhs_first = u w, lhs_second = w v with |u w v| in [min_degree, max_degree].
std::vector<CriticalPair> critical_pairs(const RuleSet& rules, int min_degree, int max_degree);
/// rhs_first * v - u * rhs_second for the pair.
NcPoly s_polynomial(const RuleSet& rules, const CriticalPair& pair);
/// Pairs up to max_degree whose S-polynomial does not reduce to zero.
std::vector<CriticalPair> unresolved_pairs(const RuleSet& rules, int max_degree);

struct CompletionStats {
  std::size_t pairs_examined = 0;
  std::size_t rules_added = 0;
};

/// Critical-pair completion of a homogeneous rule set up to max_degree.
RuleSet complete(const RuleSet& rules, int max_degree, CompletionStats* stats = nullptr);

/// Number of words of each degree 0..d_max containing no lhs.
std::vector<std::uint64_t> normal_word_counts(const RuleSet& rules, int d_max);

}  // namespace qserre
