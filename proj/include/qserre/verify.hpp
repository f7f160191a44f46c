#pragma once

// Instance checks of the identities satisfied by the q-products.
//
// Each check builds a difference in the free algebra and decides whether it
// vanishes: identically (free-algebra checks), or modulo the defining ideal
// by rewriting and, where the degree allows, by the linear-algebra oracle.
// The two ideal routes must agree; a disagreement fails the check.

#include "qserre/freealg.hpp"
#include "qserre/oracle.hpp"
#include "qserre/rewrite.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace qserre {

enum class Method { free_algebra, rewrite, oracle };
enum class Mode { rewrite, oracle, both };

std::string to_string(Method m);
std::string to_string(Mode m);

struct VerifyOptions {
  Mode mode = Mode::both;
  /// Random specializations tried before exact elimination; 0 disables.
  int precheck_points = 2;
  std::uint64_t seed = 1;
};

/// Presentation, completed rule set and oracle for one algebra.
/// Immutable after construction; shared between concurrent checks.
class AlgebraContext {
 public:
  AlgebraContext(std::vector<NcPoly> relations, RuleSet completed, int oracle_cap);

  static std::shared_ptr<const AlgebraContext> x_algebra(int rank, int completion_degree,
                                                         int oracle_cap = IdealOracle::kDefaultCap);
  static std::shared_ptr<const AlgebraContext> chi_e(int rank, int completion_degree,
                                                     int oracle_cap = IdealOracle::kDefaultCap);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::vector<NcPoly>& relations() const { return relations_; }
  const RuleSet& rules() const { return reducer_.rules(); }
  const Reducer& reducer() const { return reducer_; }
  const IdealOracle& oracle() const { return oracle_; }
  /// Rank of the x family (or of the chi family for the chi/e algebra).
  int rank() const;

 private:
  AlphabetPtr alphabet_;
  std::vector<NcPoly> relations_;
  Reducer reducer_;
  IdealOracle oracle_;
};

using ContextPtr = std::shared_ptr<const AlgebraContext>;

struct VerificationReport {
  std::string identity;
  std::vector<std::pair<std::string, long>> params;
  /// Rewrite residual (or the raw difference for free-algebra checks).
  NcPoly residual;
  std::vector<Method> methods;
  bool pass = false;
  bool methods_agree = true;
  /// The residual's degree is within the certified completion degree.
  bool certified = true;
  std::string note;
  double millis = 0;

  std::string params_string() const;
};

/// Decides difference == 0 modulo the context's ideal.
VerificationReport check_in_ideal(std::string identity, std::vector<std::pair<std::string, long>> params,
                                  const NcPoly& difference, const AlgebraContext& ctx, const VerifyOptions& opts);
/// Decides difference == 0 in the free algebra.
VerificationReport check_in_free_algebra(std::string identity, std::vector<std::pair<std::string, long>> params,
                                         const NcPoly& difference);

/// (x)^nu_lambda = (x)^mu_lambda (x)^nu_mu with no relations.
VerificationReport check_telescoping(const AlphabetPtr& alphabet, Letter gen, long lambda, long mu, long nu);
/// Ascending and descending factor orders of one q-product agree.
VerificationReport check_factor_commutativity(const AlphabetPtr& alphabet, Letter gen, SpectralWindow w);

enum class LemmaOrdering { x1_first, x2_first };

/// (x_n)^mu_lambda (x_{n+1})^mu_lambda against the lemma product with exponent
/// lambda (x1_first), or the reversed product against exponent mu (x2_first).
VerificationReport check_lemma(const AlgebraContext& ctx, long mu, long lambda, LemmaOrdering ordering,
                               const VerifyOptions& opts, int n = 1);

enum class CentralCandidate { c, k };

/// [element, x_i] for i in the pair (n, n+1).
VerificationReport check_central(const AlgebraContext& ctx, int i, const VerifyOptions& opts,
                                 CentralCandidate element = CentralCandidate::c, int n = 1);
std::vector<VerificationReport> check_central_c(const AlgebraContext& ctx, const VerifyOptions& opts, int n = 1);

VerificationReport check_ayb(const AlgebraContext& ctx, int n, long lambda, long mu, long nu,
                             const VerifyOptions& opts);
VerificationReport check_far_commutation(const AlgebraContext& ctx, int m, int n, long lambda, long mu,
                                         const VerifyOptions& opts);
/// Q(lambda,nu) Q(mu,nu) = Q(mu,nu) Q(lambda,nu) at the context's rank.
VerificationReport check_qq(const AlgebraContext& ctx, long lambda, long mu, long nu, const VerifyOptions& opts);

enum class XRelationFamily { serre_first, serre_second, distant };

/// The x-relation of the given family, evaluated on y_k = chi_k e_k, modulo
/// the chi/e relations. For distant, (m, n) with |m - n| >= 2.
VerificationReport check_chi_e(const AlgebraContext& chi_e_ctx, XRelationFamily family, int m, int n,
                               const VerifyOptions& opts);
/// Every family instance at the context's rank.
std::vector<VerificationReport> check_chi_e_all(const AlgebraContext& chi_e_ctx, const VerifyOptions& opts);

}  // namespace qserre
