// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "qserre/oracle.hpp"
#include "qserre/rewrite.hpp"
#include "qserre/series.hpp"
#include "qserre/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qserre;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::ostringstream failures;
};

using Clock = std::chrono::steady_clock;

bool uses(const VerificationReport& r, Method m) {
  return std::find(r.methods.begin(), r.methods.end(), m) != r.methods.end();
}

/// Accumulates one report into the outcome; `need_oracle` demands the oracle path ran.
void record(Outcome& o, const VerificationReport& r, bool need_oracle, int& count) {
  ++count;
  const bool ok = r.pass && r.residual.is_zero() && r.certified && (!need_oracle || uses(r, Method::oracle));
  if (!ok) {
    o.pass = false;
    o.failures << "\n    failed: " << r.identity << " " << r.params_string() << (r.note.empty() ? "" : " (" + r.note + ")");
  }
}

const ContextPtr& x_context(int rank) {
  // completion degrees: max r(lambda+mu) over the qq windows of criterion 4
  static const ContextPtr r2 = AlgebraContext::x_algebra(2, 10);
  static const ContextPtr r3 = AlgebraContext::x_algebra(3, 9);
  return rank == 2 ? r2 : r3;
}

const ContextPtr& chi_e_context(int rank) {
  static const ContextPtr r2 = AlgebraContext::chi_e(2, 6);
  static const ContextPtr r3 = AlgebraContext::chi_e(3, 6);
  return rank == 2 ? r2 : r3;
}

const VerifyOptions kBoth{Mode::both, 2, 1};

Outcome lemma_suite() {
  Outcome o;
  int n = 0;
  for (long mu = 0; mu <= 3; ++mu)
    for (long lambda = mu + 1; lambda <= 3; ++lambda)
      for (auto ord : {LemmaOrdering::x1_first, LemmaOrdering::x2_first})
        record(o, check_lemma(*x_context(2), mu, lambda, ord, kBoth), 2 * (lambda - mu) <= 8, n);
  o.detail << n << " checks";
  return o;
}

Outcome centrality() {
  Outcome o;
  int n = 0;
  for (const auto& r : check_central_c(*x_context(2), kBoth)) record(o, r, true, n);
  int caught = 0;
  for (int i = 1; i <= 2; ++i)
    if (!check_central(*x_context(2), i, kBoth, CentralCandidate::k).pass) ++caught;
  if (caught != 2) {
    o.pass = false;
    o.failures << "\n    k passed as central for " << (2 - caught) << " generator(s)";
  }
  o.detail << n << " checks, mutation caught " << caught << "/2";
  return o;
}

Outcome ayb_suite() {
  Outcome o;
  int n = 0;
  for (long nu = 0; nu <= 3; ++nu)
    for (long mu = nu; mu <= 3; ++mu)
      for (long lambda = mu; lambda <= 3; ++lambda)
        record(o, check_ayb(*x_context(2), 1, lambda, mu, nu, kBoth), 2 * (lambda - nu) <= 8, n);
  for (int k = 1; k <= 2; ++k)
    for (long nu = 0; nu <= 2; ++nu)
      for (long mu = nu; mu <= 2; ++mu)
        for (long lambda = mu; lambda <= 2; ++lambda)
          record(o, check_ayb(*x_context(3), k, lambda, mu, nu, kBoth), 2 * (lambda - nu) <= 8, n);
  o.detail << n << " checks";
  return o;
}

Outcome qq_suite() {
  Outcome o;
  int n = 0;
  const std::vector<std::array<long, 3>> rank2{{2, 1, 0}, {3, 1, 0}, {3, 2, 0}, {3, 2, 1}};
  for (const auto& [lambda, mu, nu] : rank2) {
    const bool cross = lambda == 2 && mu == 1 && nu == 0;
    if (x_context(2)->rules().completed_degree() < 2 * (lambda + mu)) o.pass = false;
    record(o, check_qq(*x_context(2), lambda, mu, nu, cross ? kBoth : VerifyOptions{Mode::rewrite, 0, 1}), cross, n);
  }
  if (x_context(3)->rules().completed_degree() < 9) o.pass = false;
  record(o, check_qq(*x_context(3), 2, 1, 0, VerifyOptions{Mode::rewrite, 0, 1}), false, n);
  o.detail << n << " checks";
  return o;
}

Outcome hilbert_anchor() {
  Outcome o;
  for (int rank : {2, 3}) {
    const auto counts = normal_word_counts(x_context(rank)->rules(), 8);
    IdealOracle oracle(x_context(rank)->alphabet(), x_context(rank)->relations());
    std::vector<std::uint64_t> dims;
    for (int d = 0; d <= 8; ++d) dims.push_back(oracle.quotient_dimension(d));
    o.detail << (rank == 2 ? "" : "; ") << "rank " << rank << ":";
    for (auto c : counts) o.detail << " " << c;
    if (counts != dims) {
      o.pass = false;
      o.detail << " (oracle:";
      for (auto d : dims) o.detail << " " << d;
      o.detail << ")";
    }
  }
  return o;
}

Outcome agreement() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  int members = 0, non_members = 0, disagreements = 0;
  for (int rank : {2, 3}) {
    const auto& ctx = *x_context(rank);
    const auto& a = ctx.alphabet();
    const auto& rels = ctx.relations();
    std::uniform_int_distribution<std::size_t> pick_rel(0, rels.size() - 1);
    std::uniform_int_distribution<int> letter(0, static_cast<int>(a->size()) - 1), small(-5, 5), coin(0, 1);
    auto random_word = [&](int len) {
      Word w;
      for (int i = 0; i < len; ++i) w.push_back(static_cast<Letter>(letter(rng)));
      return w;
    };
    auto random_scalar = [&] {
      int num = small(rng);
      if (num == 0) num = 1;
      return QRat(num) * QRat::q_pow(small(rng) / 2);
    };
    for (int i = 0; i < 600; ++i) {
      NcPoly p(a);
      const bool build_member = coin(rng) == 1;
      const int terms = 1 + static_cast<int>(rng() % 4);
      for (int t = 0; t < terms; ++t) {
        if (build_member) {
          const NcPoly& rel = rels[pick_rel(rng)];
          const int room = 6 - rel.degree();
          const int lu = static_cast<int>(rng() % static_cast<unsigned>(room + 1));
          const int lv = static_cast<int>(rng() % static_cast<unsigned>(room - lu + 1));
          p.add_scaled(rel, random_scalar(), random_word(lu), random_word(lv));
        } else {
          p.add_term(random_word(static_cast<int>(rng() % 7)), random_scalar());
        }
      }
      const bool by_rewrite = ctx.reducer().reduce(p).is_zero();
      const bool by_oracle = ctx.oracle().member(p);
      (by_oracle ? members : non_members)++;
      if (by_rewrite != by_oracle) ++disagreements;
    }
  }
  o.pass = disagreements == 0 && members > 0 && non_members > 0;
  o.detail << members + non_members << " polynomials, " << members << " members, " << non_members
           << " non-members, " << disagreements << " disagreements";
  return o;
}

Outcome confluence() {
  Outcome o;
  auto check = [&](const std::string& name, const RuleSet& rs, int degree) {
    const bool ok = rs.completed_degree() >= degree && unresolved_pairs(rs, degree).empty();
    o.pass = o.pass && ok;
    o.detail << (o.detail.tellp() > 0 ? "; " : "") << name << " to " << degree << (ok ? " ok" : " UNRESOLVED");
  };
  check("x rank 2", x_context(2)->rules(), 10);
  check("x rank 3", x_context(3)->rules(), 9);
  check("chi/e rank 2", chi_e_context(2)->rules(), 6);
  check("chi/e rank 3", chi_e_context(3)->rules(), 6);
  return o;
}

Outcome chi_e_embedding() {
  Outcome o;
  int n = 0;
  for (int rank : {2, 3})
    for (const auto& r : check_chi_e_all(*chi_e_context(rank), kBoth)) record(o, r, false, n);
  o.detail << n << " checks";
  return o;
}

Outcome free_identities() {
  Outcome o;
  const auto a = Alphabet::x_family(2);
  int n = 0;
  for (Letter g : {Letter{0}, Letter{1}})
    for (long nu = 0; nu <= 4; ++nu)
      for (long mu = nu; mu <= 4; ++mu)
        for (long lambda = mu; lambda <= 4; ++lambda) {
          record(o, check_telescoping(a, g, lambda, mu, nu), false, n);
          record(o, check_factor_commutativity(a, g, {lambda, mu}), false, n);
        }
  o.detail << n << " checks";
  return o;
}

Outcome series() {
  Outcome o;
  int n = 0;
  for (auto [mu, lambda] : {std::pair{0L, 1L}, {0L, 2L}, {1L, 3L}}) record(o, check_ratio_identity(mu, lambda, 6), false, n);
  record(o, check_ayb_formal(*x_context(2), 1, 4, 3, kBoth), false, n);
  for (int k = 1; k <= 2; ++k) record(o, check_ayb_formal(*x_context(3), k, 4, 3, kBoth), false, n);
  o.detail << n << " checks";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"lemma suite", lemma_suite},
      {"centrality", centrality},
      {"AYB suite", ayb_suite},
      {"Q-commutativity", qq_suite},
      {"Hilbert series anchor", hilbert_anchor},
      {"rewriter/oracle agreement", agreement},
      {"confluence certificate", confluence},
      {"chi/e embedding", chi_e_embedding},
      {"telescoping and factor order", free_identities},
      {"series identities", series},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail.str()
              << " (" << std::fixed << std::setprecision(1) << secs << " s)" << o.failures.str() << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
