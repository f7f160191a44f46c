#include "qserre/verify.hpp"

#include <chrono>
#include <sstream>

namespace qserre {

std::string to_string(Method m) {
  switch (m) {
    case Method::free_algebra: return "free";
    case Method::rewrite: return "rewrite";
    case Method::oracle: return "oracle";
  }
  return "?";
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::rewrite: return "rewrite";
    case Mode::oracle: return "oracle";
    case Mode::both: return "both";
  }
  return "?";
}

// ---------------------------------------------------------------- contexts

AlgebraContext::AlgebraContext(std::vector<NcPoly> relations, RuleSet completed, int oracle_cap)
    : alphabet_(completed.alphabet()),
      relations_(std::move(relations)),
      reducer_(std::make_shared<const RuleSet>(std::move(completed))),
      oracle_(alphabet_, relations_, oracle_cap) {}

std::shared_ptr<const AlgebraContext> AlgebraContext::x_algebra(int rank, int completion_degree, int oracle_cap) {
  auto alphabet = Alphabet::x_family(rank);
  auto relations = x_relations(alphabet);
  RuleSet rules = complete(rules_from_relations(alphabet, relations), completion_degree);
  return std::make_shared<const AlgebraContext>(std::move(relations), std::move(rules), oracle_cap);
}

std::shared_ptr<const AlgebraContext> AlgebraContext::chi_e(int rank, int completion_degree, int oracle_cap) {
  auto alphabet = Alphabet::chi_e(rank);
  auto relations = chi_e_relations(alphabet);
  RuleSet rules = complete(rules_from_relations(alphabet, relations), completion_degree);
  return std::make_shared<const AlgebraContext>(std::move(relations), std::move(rules), oracle_cap);
}

int AlgebraContext::rank() const {
  return alphabet_->has_family("x") ? alphabet_->family_count("x") : alphabet_->family_count("chi");
}

std::string VerificationReport::params_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < params.size(); ++i) os << (i ? " " : "") << params[i].first << "=" << params[i].second;
  return os.str();
}

// ---------------------------------------------------------------- deciders

namespace {

using Clock = std::chrono::steady_clock;
using Params = std::vector<std::pair<std::string, long>>;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Letter x_at(const AlgebraContext& ctx, int n) { return ctx.alphabet()->letter("x", n); }

void require_pair(const AlgebraContext& ctx, int n) {
  if (n < 1 || n + 1 > ctx.rank())
    throw WindowError("pair (x" + std::to_string(n) + ", x" + std::to_string(n + 1) + ") is outside rank " +
                      std::to_string(ctx.rank()));
}

}  // namespace

VerificationReport check_in_ideal(std::string identity, Params params, const NcPoly& difference,
                                  const AlgebraContext& ctx, const VerifyOptions& opts) {
  const auto t0 = Clock::now();
  VerificationReport r{std::move(identity), std::move(params), NcPoly(ctx.alphabet()), {}, false, true, true, {}, 0};
  r.certified = difference.degree() <= ctx.rules().completed_degree();

  bool rewrite_zero = true;
  bool oracle_member = true;
  bool ran_rewrite = false;
  bool ran_oracle = false;

  if (opts.mode != Mode::oracle) {
    r.residual = ctx.reducer().reduce(difference);
    r.methods.push_back(Method::rewrite);
    ran_rewrite = true;
    rewrite_zero = r.residual.is_zero();
  }
  if (opts.mode != Mode::rewrite) {
    if (difference.degree() > ctx.oracle().degree_cap()) {
      if (opts.mode == Mode::oracle)
        throw OracleCapError("degree " + std::to_string(difference.degree()) + " exceeds the oracle cap " +
                             std::to_string(ctx.oracle().degree_cap()) + "; use the rewriting path");
      r.note = "oracle skipped (degree above cap)";
    } else {
      r.methods.push_back(Method::oracle);
      ran_oracle = true;
      const bool plausible =
          opts.precheck_points <= 0 || ctx.oracle().randomized_precheck(difference, opts.precheck_points, opts.seed);
      oracle_member = plausible && ctx.oracle().member(difference);
      if (!ran_rewrite) r.residual = oracle_member ? NcPoly(ctx.alphabet()) : difference;
    }
  }

  r.methods_agree = !(ran_rewrite && ran_oracle) || rewrite_zero == oracle_member;
  r.pass = r.methods_agree && (!ran_rewrite || rewrite_zero) && (!ran_oracle || oracle_member);
  if (!r.methods_agree) r.note = "rewrite and oracle disagree";
  else if (ran_rewrite && !rewrite_zero && !r.certified)
    r.note = "nonzero residual above the certified degree; raise --completion-degree";
  r.millis = elapsed_ms(t0);
  return r;
}

VerificationReport check_in_free_algebra(std::string identity, Params params, const NcPoly& difference) {
  VerificationReport r{std::move(identity), std::move(params), difference, {Method::free_algebra}, false, true, true,
                       {}, 0};
  r.pass = difference.is_zero();
  return r;
}

// ---------------------------------------------------------------- identities

VerificationReport check_telescoping(const AlphabetPtr& alphabet, Letter gen, long lambda, long mu, long nu) {
  const auto t0 = Clock::now();
  if (!(lambda >= mu && mu >= nu)) throw WindowError("telescoping requires lambda >= mu >= nu");
  NcPoly diff = qproduct(alphabet, gen, {lambda, nu}) - qproduct(alphabet, gen, {lambda, mu}) * qproduct(alphabet, gen, {mu, nu});
  auto r = check_in_free_algebra("telescoping", {{"gen", gen + 1}, {"lambda", lambda}, {"mu", mu}, {"nu", nu}}, diff);
  r.millis = elapsed_ms(t0);
  return r;
}

VerificationReport check_factor_commutativity(const AlphabetPtr& alphabet, Letter gen, SpectralWindow w) {
  const auto t0 = Clock::now();
  NcPoly diff = qproduct(alphabet, gen, w) - qproduct_descending(alphabet, gen, w);
  auto r = check_in_free_algebra("factor-commutativity", {{"gen", gen + 1}, {"lambda", w.lambda}, {"mu", w.mu}}, diff);
  r.millis = elapsed_ms(t0);
  return r;
}

VerificationReport check_lemma(const AlgebraContext& ctx, long mu, long lambda, LemmaOrdering ordering,
                               const VerifyOptions& opts, int n) {
  require_pair(ctx, n);
  const SpectralWindow w(lambda, mu);
  const auto& a = ctx.alphabet();
  const NcPoly lo = qproduct(a, x_at(ctx, n), w);
  const NcPoly hi = qproduct(a, x_at(ctx, n + 1), w);
  NcPoly diff = ordering == LemmaOrdering::x1_first ? lo * hi - lemma_product(a, w, ExponentChoice::lambda, n)
                                                    : hi * lo - lemma_product(a, w, ExponentChoice::mu, n);
  const char* name = ordering == LemmaOrdering::x1_first ? "lemma[x1-first]" : "lemma[x2-first]";
  return check_in_ideal(name, {{"rank", ctx.rank()}, {"n", n}, {"mu", mu}, {"lambda", lambda}}, diff, ctx, opts);
}

VerificationReport check_central(const AlgebraContext& ctx, int i, const VerifyOptions& opts,
                                 CentralCandidate element, int n) {
  require_pair(ctx, n);
  if (i != 1 && i != 2) throw std::invalid_argument("central check takes i = 1 or 2");
  const auto& a = ctx.alphabet();
  const NcPoly z = element == CentralCandidate::c ? c_element(a, n) : k_element(a, n);
  const NcPoly x = NcPoly::letter(a, x_at(ctx, n + i - 1));
  const char* name = element == CentralCandidate::c ? "central[c]" : "central[k]";
  return check_in_ideal(name, {{"rank", ctx.rank()}, {"n", n}, {"i", i}}, z * x - x * z, ctx, opts);
}

std::vector<VerificationReport> check_central_c(const AlgebraContext& ctx, const VerifyOptions& opts, int n) {
  return {check_central(ctx, 1, opts, CentralCandidate::c, n), check_central(ctx, 2, opts, CentralCandidate::c, n)};
}

VerificationReport check_ayb(const AlgebraContext& ctx, int n, long lambda, long mu, long nu,
                             const VerifyOptions& opts) {
  require_pair(ctx, n);
  auto sides = ayb_sides(ctx.alphabet(), n, lambda, mu, nu);
  return check_in_ideal("ayb", {{"rank", ctx.rank()}, {"n", n}, {"lambda", lambda}, {"mu", mu}, {"nu", nu}},
                        sides.lhs - sides.rhs, ctx, opts);
}

VerificationReport check_far_commutation(const AlgebraContext& ctx, int m, int n, long lambda, long mu,
                                         const VerifyOptions& opts) {
  if (std::abs(m - n) == 1) throw WindowError("far commutation needs |m - n| != 1");
  const SpectralWindow w(lambda, mu);
  const auto& a = ctx.alphabet();
  const NcPoly pm = qproduct(a, x_at(ctx, m), w);
  const NcPoly pn = qproduct(a, x_at(ctx, n), w);
  return check_in_ideal("far", {{"rank", ctx.rank()}, {"m", m}, {"n", n}, {"lambda", lambda}, {"mu", mu}},
                        pm * pn - pn * pm, ctx, opts);
}

VerificationReport check_qq(const AlgebraContext& ctx, long lambda, long mu, long nu, const VerifyOptions& opts) {
  if (lambda < nu || mu < nu) throw WindowError("Q-commutativity requires lambda, mu >= nu");
  const auto& a = ctx.alphabet();
  const NcPoly first = big_q(a, ctx.rank(), {lambda, nu});
  const NcPoly second = big_q(a, ctx.rank(), {mu, nu});
  return check_in_ideal("qq", {{"rank", ctx.rank()}, {"lambda", lambda}, {"mu", mu}, {"nu", nu}},
                        first * second - second * first, ctx, opts);
}

VerificationReport check_chi_e(const AlgebraContext& ctx, XRelationFamily family, int m, int n,
                               const VerifyOptions& opts) {
  const int rank = ctx.rank();
  const auto& target = ctx.alphabet();
  const auto xs = Alphabet::x_family(rank);
  auto x = [&](int i) { return xs->letter("x", i); };
  auto word = [&](std::initializer_list<int> idx, const QRat& c) {
    Word w;
    for (int i : idx) w.push_back(x(i));
    return NcPoly(xs, w, c);
  };

  NcPoly relation(xs);
  std::string name;
  Params params{{"rank", rank}};
  switch (family) {
    case XRelationFamily::serre_first:
    case XRelationFamily::serre_second: {
      if (m < 1 || m + 1 > rank || n != m + 1) throw WindowError("Serre family needs an adjacent pair (n, n+1)");
      const bool first = family == XRelationFamily::serre_first;
      const int a = first ? m : n;
      const int b = first ? n : m;
      // x_a x_a x_b + q x_b x_a x_a - (1+q) x_a x_b x_a; the second family is the mirror with a, b swapped roles.
      relation = first ? word({a, a, b}, 1) + word({b, a, a}, QRat::q()) - word({a, b, a}, QRat(1) + QRat::q())
                       : word({b, a, a}, 1) + word({a, a, b}, QRat::q()) - word({a, b, a}, QRat(1) + QRat::q());
      name = first ? "chie[serre1]" : "chie[serre2]";
      params.emplace_back("n", m);
      break;
    }
    case XRelationFamily::distant:
      if (std::abs(m - n) < 2 || m < 1 || n < 1 || m > rank || n > rank)
        throw WindowError("distant family needs |m - n| >= 2 within the rank");
      relation = word({m, n}, 1) - word({n, m}, 1);
      name = "chie[distant]";
      params.emplace_back("m", m);
      params.emplace_back("n", n);
      break;
  }

  std::vector<NcPoly> images;
  for (int i = 1; i <= rank; ++i)
    images.push_back(NcPoly(target, Word{target->letter("chi", i), target->letter("e", i)}));
  auto r = check_in_ideal(name, std::move(params), substitute(relation, target, images), ctx, opts);
  if (r.note.empty()) r.note = "assumes distant chi commute and every chi commutes with every e";
  return r;
}

std::vector<VerificationReport> check_chi_e_all(const AlgebraContext& ctx, const VerifyOptions& opts) {
  std::vector<VerificationReport> out;
  const int rank = ctx.rank();
  for (int n = 1; n < rank; ++n) {
    out.push_back(check_chi_e(ctx, XRelationFamily::serre_first, n, n + 1, opts));
    out.push_back(check_chi_e(ctx, XRelationFamily::serre_second, n, n + 1, opts));
  }
  for (int m = 1; m <= rank; ++m)
    for (int n = m + 2; n <= rank; ++n) out.push_back(check_chi_e(ctx, XRelationFamily::distant, m, n, opts));
  return out;
}

}  // namespace qserre
