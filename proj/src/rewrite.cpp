#include "qserre/rewrite.hpp"

#include <algorithm>
#include <stdexcept>

namespace qserre {

// ---------------------------------------------------------------- RuleSet

RuleSet::RuleSet(AlphabetPtr alphabet, std::vector<RewriteRule> rules, int completed_degree)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)), completed_degree_(completed_degree) {
  const DegLexLess less;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& r = rules_[i];
    if (r.lhs.empty()) throw std::invalid_argument("rule with empty left-hand side");
    if (!(*r.rhs.alphabet() == *alphabet_)) throw AlphabetError("rule over a different alphabet");
    for (const auto& [w, c] : r.rhs.terms())
      if (!less(w, r.lhs))
        throw std::invalid_argument("rule " + r.lhs.to_string(*alphabet_) + " has a non-smaller rhs word");
    if (!by_lhs_.emplace(r.lhs.raw(), i).second)
      throw std::invalid_argument("duplicate rule for " + r.lhs.to_string(*alphabet_));
    if (std::find(lhs_lengths_.begin(), lhs_lengths_.end(), r.lhs.size()) == lhs_lengths_.end())
      lhs_lengths_.push_back(r.lhs.size());
  }
  std::sort(lhs_lengths_.begin(), lhs_lengths_.end());
}

std::optional<RuleSet::Match> RuleSet::leftmost_match(const Word& w) const {
  const std::string& raw = w.raw();
  std::string key;
  for (std::size_t pos = 0; pos < raw.size(); ++pos) {
    for (std::size_t len : lhs_lengths_) {
      if (pos + len > raw.size()) break;
      key.assign(raw, pos, len);
      auto it = by_lhs_.find(key);
      if (it != by_lhs_.end()) return Match{pos, it->second};
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> RuleSet::suffix_match(const Word& w) const {
  const std::string& raw = w.raw();
  std::string key;
  for (std::size_t len : lhs_lengths_) {
    if (len > raw.size()) break;
    key.assign(raw, raw.size() - len, len);
    auto it = by_lhs_.find(key);
    if (it != by_lhs_.end()) return it->second;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- presentations

namespace {

NcPoly word_poly(const AlphabetPtr& a, std::initializer_list<Letter> letters, const QRat& c = QRat(1)) {
  return NcPoly(a, Word(letters), c);
}

NcPoly commutator(const AlphabetPtr& a, Letter u, Letter v) { return word_poly(a, {u, v}) - word_poly(a, {v, u}); }

}  // namespace

std::vector<NcPoly> x_relations(const AlphabetPtr& alphabet, const SerreCoefficients& coeffs) {
  const int rank = alphabet->family_count("x");
  std::vector<NcPoly> rels;
  for (int n = 1; n < rank; ++n) {
    const Letter a = alphabet->letter("x", n);
    const Letter b = alphabet->letter("x", n + 1);
    rels.push_back(word_poly(alphabet, {a, a, b}) + word_poly(alphabet, {b, a, a}, coeffs.outer) -
                   word_poly(alphabet, {a, b, a}, coeffs.middle));
    rels.push_back(word_poly(alphabet, {a, b, b}) + word_poly(alphabet, {b, b, a}, coeffs.outer) -
                   word_poly(alphabet, {b, a, b}, coeffs.middle));
  }
  for (int m = 1; m <= rank; ++m)
    for (int n = m + 2; n <= rank; ++n)
      rels.push_back(commutator(alphabet, alphabet->letter("x", n), alphabet->letter("x", m)));
  return rels;
}

std::vector<NcPoly> chi_e_relations(const AlphabetPtr& alphabet) {
  const int rank = alphabet->family_count("chi");
  if (alphabet->family_count("e") != rank) throw AlphabetError("chi and e families must have equal rank");
  const QRat half = QRat::s();
  const QRat quantum_two = QRat::s() + QRat::s_pow(-1);
  auto chi = [&](int i) { return alphabet->letter("chi", i); };
  auto e = [&](int i) { return alphabet->letter("e", i); };

  std::vector<NcPoly> rels;
  for (int n = 1; n < rank; ++n) {
    rels.push_back(word_poly(alphabet, {chi(n), chi(n + 1)}) - word_poly(alphabet, {chi(n + 1), chi(n)}, half));
    const Letter a = e(n);
    const Letter b = e(n + 1);
    rels.push_back(word_poly(alphabet, {a, a, b}) + word_poly(alphabet, {b, a, a}) -
                   word_poly(alphabet, {a, b, a}, quantum_two));
    rels.push_back(word_poly(alphabet, {a, b, b}) + word_poly(alphabet, {b, b, a}) -
                   word_poly(alphabet, {b, a, b}, quantum_two));
  }
  for (int m = 1; m <= rank; ++m)
    for (int n = m + 2; n <= rank; ++n) {
      rels.push_back(commutator(alphabet, chi(n), chi(m)));
      rels.push_back(commutator(alphabet, e(n), e(m)));
    }
  for (int m = 1; m <= rank; ++m)
    for (int n = 1; n <= rank; ++n) rels.push_back(commutator(alphabet, e(n), chi(m)));
  return rels;
}

namespace {

RewriteRule orient(const NcPoly& relation) {
  const auto& [lead, c] = relation.leading();
  NcPoly rhs = relation * (-c.inverse());
  rhs.add_term(lead, QRat(1));
  return {lead, std::move(rhs)};
}

int smallest_pair_degree(const RuleSet& rs) {
  int best = kUnboundedDegree;
  for (const auto& a : rs.rules())
    for (const auto& b : rs.rules())
      for (std::size_t k = 1; k < std::min(a.lhs.size(), b.lhs.size()); ++k)
        if (a.lhs.sub(a.lhs.size() - k) == b.lhs.sub(0, k))
          best = std::min(best, static_cast<int>(a.lhs.size() + b.lhs.size() - k));
  return best;
}

}  // namespace

RuleSet rules_from_relations(const AlphabetPtr& alphabet, const std::vector<NcPoly>& relations) {
  std::vector<NcPoly> pending;
  for (const auto& r : relations) {
    if (r.is_zero()) continue;
    if (!r.is_homogeneous()) throw std::invalid_argument("relation is not homogeneous: " + r.to_string());
    pending.push_back(r);
  }
  std::vector<RewriteRule> rules;
  while (!pending.empty()) {
    auto pick = std::min_element(pending.begin(), pending.end(), [](const NcPoly& a, const NcPoly& b) {
      if (a.degree() != b.degree()) return a.degree() < b.degree();
      return DegLexLess{}(a.leading().first, b.leading().first);
    });
    NcPoly p = std::move(*pick);
    pending.erase(pick);
    Rewriter rw(std::make_shared<const RuleSet>(alphabet, rules, 0));
    p = rw.reduce(p);
    if (p.is_zero()) continue;
    RewriteRule rule = orient(p);
    for (auto it = rules.begin(); it != rules.end();) {
      if (it->lhs.contains(rule.lhs)) {
        NcPoly back(alphabet, it->lhs);
        back -= it->rhs;
        pending.push_back(std::move(back));
        it = rules.erase(it);
      } else {
        ++it;
      }
    }
    rules.push_back(std::move(rule));
  }
  {
    Rewriter rw(std::make_shared<const RuleSet>(alphabet, rules, 0));
    for (auto& r : rules) r.rhs = rw.reduce(r.rhs);
  }
  std::sort(rules.begin(), rules.end(),
            [](const RewriteRule& a, const RewriteRule& b) { return DegLexLess{}(a.lhs, b.lhs); });
  RuleSet provisional(alphabet, rules, 0);
  const int first_pair = smallest_pair_degree(provisional);
  return RuleSet(alphabet, std::move(rules), first_pair == kUnboundedDegree ? kUnboundedDegree : first_pair - 1);
}

RuleSet base_rules(int rank) {
  auto alphabet = Alphabet::x_family(rank);
  return rules_from_relations(alphabet, x_relations(alphabet));
}

RuleSet chi_e_rules(int rank) {
  auto alphabet = Alphabet::chi_e(rank);
  return rules_from_relations(alphabet, chi_e_relations(alphabet));
}

// ---------------------------------------------------------------- reduction

void Rewriter::rebind(RuleSetPtr rules, std::size_t min_affected_length) {
  rules_ = std::move(rules);
  std::erase_if(cache_, [&](const auto& kv) { return kv.first.size() >= min_affected_length; });
}

const NcPoly& Rewriter::normal_form(const Word& w) {
  if (auto it = cache_.find(w); it != cache_.end()) return it->second;
  NcPoly result(rules_->alphabet());
  if (auto m = rules_->leftmost_match(w)) {
    const RewriteRule& rule = rules_->rules()[m->rule];
    const Word prefix = w.sub(0, m->pos);
    const Word suffix = w.sub(m->pos + rule.lhs.size());
    for (const auto& [rw, c] : rule.rhs.terms()) {
      const NcPoly& nf = normal_form(prefix * rw * suffix);
      result.add_scaled(nf, c);
    }
  } else {
    result.add_term(w, QRat(1));
  }
  return cache_.emplace(w, std::move(result)).first->second;
}

NcPoly Rewriter::reduce(const NcPoly& p) {
  NcPoly result(rules_->alphabet());
  for (const auto& [w, c] : p.terms()) result.add_scaled(normal_form(w), c);
  return result;
}

NcPoly Reducer::reduce(const NcPoly& p) const {
  std::lock_guard lock(mutex_);
  return engine_.reduce(p);
}

ReduceResult Reducer::reduce_checked(const NcPoly& p) const {
  return {reduce(p), p.degree() <= rules_->completed_degree()};
}

// ---------------------------------------------------------------- completion

std::vector<CriticalPair> critical_pairs(const RuleSet& rules, int min_degree, int max_degree) {
  std::vector<CriticalPair> pairs;
  const auto& rs = rules.rules();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = 0; j < rs.size(); ++j) {
      const Word& a = rs[i].lhs;
      const Word& b = rs[j].lhs;
      for (std::size_t k = 1; k < std::min(a.size(), b.size()); ++k) {
        const int deg = static_cast<int>(a.size() + b.size() - k);
        if (deg < min_degree || deg > max_degree) continue;
        if (a.raw().compare(a.size() - k, k, b.raw(), 0, k) == 0)
          pairs.push_back({i, j, k, a * b.sub(k)});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const CriticalPair& x, const CriticalPair& y) {
    if (x.word != y.word) return DegLexLess{}(x.word, y.word);
    return std::tie(x.first, x.second, x.overlap) < std::tie(y.first, y.second, y.overlap);
  });
  return pairs;
}

NcPoly s_polynomial(const RuleSet& rules, const CriticalPair& pair) {
  const RewriteRule& a = rules.rules()[pair.first];
  const RewriteRule& b = rules.rules()[pair.second];
  const Word right = b.lhs.sub(pair.overlap);
  const Word left = a.lhs.sub(0, a.lhs.size() - pair.overlap);
  NcPoly s(rules.alphabet());
  s.add_scaled(a.rhs, QRat(1), {}, right);
  s.add_scaled(b.rhs, QRat(-1), left, {});
  return s;
}

std::vector<CriticalPair> unresolved_pairs(const RuleSet& rules, int max_degree) {
  auto shared = std::make_shared<const RuleSet>(rules);
  Rewriter rw(shared);
  std::vector<CriticalPair> bad;
  for (auto& pair : critical_pairs(*shared, 0, max_degree))
    if (!rw.reduce(s_polynomial(*shared, pair)).is_zero()) bad.push_back(std::move(pair));
  return bad;
}

RuleSet complete(const RuleSet& rules, int max_degree, CompletionStats* stats) {
  if (max_degree <= rules.completed_degree()) return rules;
  const AlphabetPtr alphabet = rules.alphabet();
  std::vector<RewriteRule> current = rules.rules();
  auto snapshot = std::make_shared<const RuleSet>(alphabet, current, rules.completed_degree());
  Rewriter rw(snapshot);

  constexpr std::size_t kStepBudget = 50'000'000;
  std::size_t steps = 0;
  for (int d = std::max(rules.completed_degree() + 1, 2); d <= max_degree; ++d) {
    const auto at_start = snapshot;
    const std::size_t first_new = current.size();
    for (const auto& pair : critical_pairs(*at_start, d, d)) {
      if (++steps > kStepBudget) throw std::runtime_error("completion step budget exhausted");
      if (stats) ++stats->pairs_examined;
      NcPoly r = rw.reduce(s_polynomial(*at_start, pair));
      if (r.is_zero()) continue;
      current.push_back(orient(r));
      if (stats) ++stats->rules_added;
      snapshot = std::make_shared<const RuleSet>(alphabet, current, d - 1);
      rw.rebind(snapshot, static_cast<std::size_t>(d));
    }
    if (current.size() != first_new) {
      for (std::size_t i = first_new; i < current.size(); ++i) current[i].rhs = rw.reduce(current[i].rhs);
    }
    snapshot = std::make_shared<const RuleSet>(alphabet, current, d);
    rw.rebind(snapshot, current.size() != first_new ? static_cast<std::size_t>(d) : kUnboundedDegree);
  }
  return RuleSet(alphabet, std::move(current), max_degree);
}

// ---------------------------------------------------------------- counting

std::vector<std::uint64_t> normal_word_counts(const RuleSet& rules, int d_max) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max(d_max, -1) + 1), 0);
  if (d_max < 0) return counts;
  const int letters = rules.alphabet()->size();
  Word w;
  auto dfs = [&](auto&& self, int depth) -> void {
    ++counts[static_cast<std::size_t>(depth)];
    if (depth == d_max) return;
    for (int l = 0; l < letters; ++l) {
      w.push_back(static_cast<Letter>(l));
      if (!rules.suffix_match(w)) self(self, depth + 1);
      w.pop_back();
    }
  };
  dfs(dfs, 0);
  return counts;
}

}  // namespace qserre
