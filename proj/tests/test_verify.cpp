#include "qserre/verify.hpp"

#include <catch_amalgamated.hpp>

using namespace qserre;

namespace {

QRat q() { return QRat::q(); }

const ContextPtr& x2() {
  static const ContextPtr ctx = AlgebraContext::x_algebra(2, 10);
  return ctx;
}

const ContextPtr& x3() {
  static const ContextPtr ctx = AlgebraContext::x_algebra(3, 9);
  return ctx;
}

bool used(const VerificationReport& r, Method m) {
  return std::find(r.methods.begin(), r.methods.end(), m) != r.methods.end();
}

ContextPtr mutated_x(const std::vector<NcPoly>& relations, int degree) {
  const auto& a = relations.front().alphabet();
  return std::make_shared<const AlgebraContext>(relations, complete(rules_from_relations(a, relations), degree), 8);
}

// The small suite a mutation has to break.
bool suite_passes(const AlgebraContext& ctx) {
  VerifyOptions o;
  bool ok = true;
  for (const auto& r : check_central_c(ctx, o)) ok = ok && r.pass;
  for (long mu = 0; mu < 2; ++mu)
    for (long lambda = mu + 1; lambda <= 2; ++lambda)
      for (auto ord : {LemmaOrdering::x1_first, LemmaOrdering::x2_first})
        ok = ok && check_lemma(ctx, mu, lambda, ord, o).pass;
  ok = ok && check_ayb(ctx, 1, 2, 1, 0, o).pass;
  ok = ok && check_qq(ctx, 2, 1, 0, o).pass;
  if (ctx.rank() >= 3) ok = ok && check_far_commutation(ctx, 3, 1, 1, 0, o).pass;
  return ok;
}

}  // namespace

TEST_CASE("telescoping in the free algebra") {
  auto a = Alphabet::x_family(1);
  auto r = check_telescoping(a, 0, 2, 1, 0);
  CHECK(r.pass);
  CHECK(r.methods == std::vector<Method>{Method::free_algebra});
  CHECK(check_telescoping(a, 0, 3, 3, 1).pass);
  CHECK(check_telescoping(a, 0, 3, 1, 1).pass);
  CHECK_THROWS_AS(check_telescoping(a, 0, 1, 2, 0), WindowError);
  CHECK(check_factor_commutativity(a, 0, {4, 0}).pass);
}

TEST_CASE("lemma") {
  VerifyOptions o;
  for (long mu = 0; mu <= 2; ++mu) {
    // one-factor windows hold before any reduction
    auto a = x2()->alphabet();
    const SpectralWindow w(mu + 1, mu);
    const NcPoly diff = qproduct(a, 0, w) * qproduct(a, 1, w) - lemma_product(a, w, ExponentChoice::lambda);
    CHECK(check_in_free_algebra("lemma", {}, diff).pass);
  }
  for (auto ord : {LemmaOrdering::x1_first, LemmaOrdering::x2_first}) {
    auto r = check_lemma(*x2(), 0, 2, ord, o);
    CHECK(r.pass);
    CHECK(used(r, Method::oracle));
    CHECK(r.residual.is_zero());
    CHECK(check_lemma(*x2(), 1, 3, ord, o).pass);
  }
  CHECK_THROWS_AS(check_lemma(*x2(), 2, 1, LemmaOrdering::x1_first, o), WindowError);
  CHECK(check_lemma(*x3(), 0, 2, LemmaOrdering::x2_first, o, 2).pass);
}

TEST_CASE("the exponent choice is tied to the ordering") {
  auto a = x2()->alphabet();
  const SpectralWindow w(2, 0);
  const NcPoly lo = qproduct(a, 0, w), hi = qproduct(a, 1, w);
  VerifyOptions o;
  CHECK_FALSE(check_in_ideal("swap", {}, lo * hi - lemma_product(a, w, ExponentChoice::mu), *x2(), o).pass);
  CHECK_FALSE(check_in_ideal("swap", {}, hi * lo - lemma_product(a, w, ExponentChoice::lambda), *x2(), o).pass);
}

TEST_CASE("lemma factors commute modulo the ideal") {
  auto a = x2()->alphabet();
  const NcPoly one(a, QRat(1)), k = k_element(a), c = c_element(a);
  const NcPoly sum = NcPoly::letter(a, 0) + NcPoly::letter(a, 1);
  VerifyOptions o;
  for (long e = 0; e <= 2; ++e) {
    auto factor = [&](long j) { return one + QRat::q_pow(2 * j) * c - QRat::q_pow(j) * (sum + QRat::q_pow(e) * k); };
    for (long i = 0; i <= 2; ++i)
      for (long j = i + 1; j <= 2; ++j)
        CHECK(check_in_ideal("factors", {}, factor(i) * factor(j) - factor(j) * factor(i), *x2(), o).pass);
  }
}

TEST_CASE("c is central and k is not") {
  VerifyOptions o;
  const auto rs = check_central_c(*x2(), o);
  REQUIRE(rs.size() == 2);
  for (const auto& r : rs) {
    CHECK(r.pass);
    CHECK(used(r, Method::oracle));
  }
  auto k = check_central(*x2(), 1, o, CentralCandidate::k);
  CHECK_FALSE(k.pass);
  CHECK(k.methods_agree);
  CHECK(x2()->oracle().randomized_precheck(k_element(x2()->alphabet()) * NcPoly::letter(x2()->alphabet(), 0) -
                                               NcPoly::letter(x2()->alphabet(), 0) * k_element(x2()->alphabet()),
                                           2, 1) == false);
  CHECK(check_central(*x3(), 2, o, CentralCandidate::c, 2).pass);
}

TEST_CASE("AYB") {
  VerifyOptions o;
  auto r = check_ayb(*x2(), 1, 2, 1, 0, o);
  CHECK(r.pass);
  CHECK(used(r, Method::oracle));
  CHECK(check_ayb(*x2(), 1, 3, 2, 1, o).pass);
  auto degenerate = ayb_sides(x2()->alphabet(), 1, 2, 2, 0);
  CHECK(degenerate.lhs == degenerate.rhs);
  CHECK(check_ayb(*x3(), 2, 2, 1, 0, o).pass);
  CHECK_THROWS_AS(check_ayb(*x2(), 2, 2, 1, 0, o), WindowError);
}

TEST_CASE("far commutation") {
  VerifyOptions o;
  CHECK(check_far_commutation(*x3(), 3, 1, 1, 0, o).pass);
  CHECK(check_far_commutation(*x3(), 2, 2, 2, 0, o).pass);
  CHECK(check_far_commutation(*x3(), 1, 3, 2, 2, o).pass);
  CHECK_THROWS_AS(check_far_commutation(*x3(), 1, 2, 1, 0, o), WindowError);
}

TEST_CASE("Q-commutativity") {
  VerifyOptions o;
  auto r = check_qq(*x2(), 2, 1, 0, o);
  CHECK(r.pass);
  CHECK(used(r, Method::oracle));
  auto big = check_qq(*x2(), 3, 2, 0, o);
  CHECK(big.pass);
  CHECK(big.certified);
  CHECK_FALSE(used(big, Method::oracle));
  CHECK(check_qq(*x2(), 2, 2, 1, o).pass);
  CHECK(check_qq(*x3(), 2, 1, 0, o).pass);
  CHECK_THROWS_AS(check_qq(*x2(), 0, 1, 1, o), WindowError);
}

TEST_CASE("chi/e embedding") {
  auto c2 = AlgebraContext::chi_e(2, 6);
  auto c3 = AlgebraContext::chi_e(3, 6);
  VerifyOptions o;
  CHECK(check_chi_e(*c2, XRelationFamily::serre_first, 1, 2, o).pass);
  CHECK(check_chi_e(*c2, XRelationFamily::serre_second, 1, 2, o).pass);
  CHECK(check_chi_e(*c3, XRelationFamily::distant, 1, 3, o).pass);
  const auto all = check_chi_e_all(*c3, o);
  CHECK(all.size() == 5);
  for (const auto& r : all) CHECK(r.pass);
  CHECK_THROWS_AS(check_chi_e(*c3, XRelationFamily::distant, 1, 2, o), WindowError);
}

TEST_CASE("modes") {
  VerifyOptions rewrite_only{Mode::rewrite, 0, 1};
  auto r = check_ayb(*x2(), 1, 2, 1, 0, rewrite_only);
  CHECK(r.methods == std::vector<Method>{Method::rewrite});
  VerifyOptions oracle_only{Mode::oracle, 2, 1};
  auto s = check_ayb(*x2(), 1, 2, 1, 0, oracle_only);
  CHECK(s.methods == std::vector<Method>{Method::oracle});
  CHECK(s.pass);
  CHECK_THROWS_AS(check_qq(*x2(), 3, 2, 0, oracle_only), OracleCapError);
  VerifyOptions no_precheck{Mode::both, 0, 1};
  CHECK(check_central(*x2(), 2, no_precheck).pass);
  CHECK_FALSE(check_central(*x2(), 2, no_precheck, CentralCandidate::k).pass);
}

TEST_CASE("disagreeing methods fail the check") {
  auto a = Alphabet::x_family(2);
  // rules from the true relations, oracle from a wrong presentation
  SerreCoefficients wrong;
  wrong.middle = QRat(1) + QRat::q_pow(2);
  auto ctx = std::make_shared<const AlgebraContext>(x_relations(a, wrong), complete(base_rules(2), 6), 8);
  auto r = check_central(*ctx, 1, VerifyOptions{});
  CHECK_FALSE(r.methods_agree);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("an uncertified nonzero residual is flagged") {
  auto ctx = AlgebraContext::x_algebra(2, 3);
  VerifyOptions o{Mode::rewrite, 0, 1};
  auto r = check_central(*ctx, 1, o, CentralCandidate::k);
  CHECK(r.certified);
  auto big = check_in_ideal("x", {}, NcPoly(ctx->alphabet(), Word{1, 1, 1, 1, 1}), *ctx, o);
  CHECK_FALSE(big.pass);
  CHECK_FALSE(big.certified);
  CHECK_FALSE(big.note.empty());
}

TEST_CASE("mutations of the presentation break the suite") {
  auto a2 = Alphabet::x_family(2);
  CHECK(suite_passes(*x2()));
  for (int which = 0; which < 4; ++which) {
    SerreCoefficients c;
    if (which == 0) c.outer = QRat::q_pow(2);
    if (which == 1) c.outer = QRat(1);
    if (which == 2) c.middle = QRat(1) + QRat::q_pow(2);
    if (which == 3) c.middle = QRat(2) + q();
    CAPTURE(which);
    CHECK_FALSE(suite_passes(*mutated_x(x_relations(a2, c), 6)));
  }
  auto a3 = Alphabet::x_family(3);
  std::vector<NcPoly> no_distant;
  for (const auto& r : x_relations(a3))
    if (r.degree() != 2) no_distant.push_back(r);
  CHECK_FALSE(suite_passes(*mutated_x(no_distant, 6)));
}

TEST_CASE("mutations of the q-powers break the suite") {
  auto a = x2()->alphabet();
  VerifyOptions o;
  // lemma product with c q^{2j+1} instead of c q^{2j}
  const SpectralWindow w(2, 0);
  const NcPoly one(a, QRat(1)), k = k_element(a), c = c_element(a);
  const NcPoly sum = NcPoly::letter(a, 0) + NcPoly::letter(a, 1);
  NcPoly bad = one;
  for (long j = 0; j < 2; ++j) bad = bad * (one + QRat::q_pow(2 * j + 1) * c - QRat::q_pow(j) * (sum + QRat::q_pow(2) * k));
  CHECK_FALSE(check_in_ideal("m", {}, qproduct(a, 0, w) * qproduct(a, 1, w) - bad, *x2(), o).pass);
  // AYB with one factor window shifted
  const auto sides = ayb_sides(a, 1, 2, 1, 0);
  const NcPoly shifted = qproduct(a, 0, {1, 0}) * qproduct(a, 1, {2, 0}) * qproduct(a, 0, {3, 1});
  CHECK_FALSE(check_in_ideal("m", {}, sides.lhs - shifted, *x2(), o).pass);
  // c built with q^2 in place of q
  const NcPoly x12(a, Word{0, 1}), x21(a, Word{1, 0});
  const NcPoly c_bad = (x12 - QRat::q_pow(2) * x21) * (QRat(1) - q()).inverse();
  const NcPoly x1 = NcPoly::letter(a, 0);
  CHECK_FALSE(check_in_ideal("m", {}, c_bad * x1 - x1 * c_bad, *x2(), o).pass);
}

TEST_CASE("mutated chi relations break the embedding") {
  auto a = Alphabet::chi_e(2);
  std::vector<NcPoly> rels;
  const Letter chi1 = a->letter("chi", 1), chi2 = a->letter("chi", 2);
  for (const auto& r : chi_e_relations(a)) {
    if (r.coefficient(Word{chi1, chi2}).is_one()) {
      rels.push_back(NcPoly(a, Word{chi1, chi2}) - q() * NcPoly(a, Word{chi2, chi1}));
    } else {
      rels.push_back(r);
    }
  }
  auto ctx = std::make_shared<const AlgebraContext>(rels, complete(rules_from_relations(a, rels), 6), 8);
  bool all = true;
  for (const auto& r : check_chi_e_all(*ctx, VerifyOptions{})) all = all && r.pass;
  CHECK_FALSE(all);
}
