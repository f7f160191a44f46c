#include "qserre/cli.hpp"

#include "qserre/parse.hpp"
#include "qserre/series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <thread>

namespace qserre {

namespace {

using Json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  int rank = 2;
  std::optional<int> completion_degree;
  int oracle_cap = IdealOracle::kDefaultCap;
  VerifyOptions verify;
  bool structured = false;
  std::string alphabet = "x";
  std::optional<long> lambda, mu, nu;
  long lambda_max = 3;
  std::optional<int> series_degree;
  int specializations = 3;
  int jobs = 1;
  bool timings = false;
  std::string dump_rules;
  std::string rules_file;
};

// ---------------------------------------------------------------- contexts

std::vector<NcPoly> relations_for(const AlphabetPtr& alphabet) {
  return alphabet->has_family("x") ? x_relations(alphabet) : chi_e_relations(alphabet);
}

AlphabetPtr alphabet_for(const Config& cfg, bool chie) {
  return chie ? Alphabet::chi_e(cfg.rank) : Alphabet::x_family(cfg.rank);
}

/// Builds (or loads) the rule set; `needed` is the degree the requested work must be certified to.
ContextPtr make_context(const Config& cfg, bool chie, int needed, bool strict) {
  const AlphabetPtr alphabet = alphabet_for(cfg, chie);
  if (!cfg.rules_file.empty()) {
    std::ifstream in(cfg.rules_file);
    if (!in) throw ConfigError("cannot read rule file " + cfg.rules_file);
    RuleSet loaded = read_rules(in);
    if (!(*loaded.alphabet() == *alphabet))
      throw ConfigError("rule file alphabet does not match --rank/--alphabet");
    if (strict && loaded.completed_degree() < needed)
      throw ConfigError("rule file is certified to degree " + std::to_string(loaded.completed_degree()) +
                        " but the requested checks need " + std::to_string(needed));
    return std::make_shared<const AlgebraContext>(relations_for(loaded.alphabet()), std::move(loaded), cfg.oracle_cap);
  }
  if (cfg.completion_degree && strict && *cfg.completion_degree < needed)
    throw ConfigError("--completion-degree " + std::to_string(*cfg.completion_degree) +
                      " is below the degree estimate " + std::to_string(needed) + " of the requested checks");
  const int degree = cfg.completion_degree.value_or(std::max(needed, 1));
  return chie ? AlgebraContext::chi_e(cfg.rank, degree, cfg.oracle_cap)
              : AlgebraContext::x_algebra(cfg.rank, degree, cfg.oracle_cap);
}

void dump_rules(const Config& cfg, const RuleSet& rules) {
  if (cfg.dump_rules.empty()) return;
  std::ofstream os(cfg.dump_rules);
  if (!os) throw ConfigError("cannot write rule file " + cfg.dump_rules);
  write_rules(os, rules);
}

// ---------------------------------------------------------------- suite plan

const std::vector<std::string> kSuites = {"telescoping", "lemma", "central", "ayb", "far",
                                          "qq", "chie", "ratio", "ayb-formal"};

struct Job {
  std::string suite;
  bool chie = false;
  /// Degree the rewrite path must be certified to; -1 for free-algebra checks.
  int degree = -1;
  std::function<VerificationReport()> run;
};

struct Plan {
  std::vector<Job> jobs;
  ContextPtr x;
  ContextPtr chi;
};

std::vector<long> grid(const std::optional<long>& fixed, long max) {
  if (fixed) return {*fixed};
  std::vector<long> v;
  for (long i = 0; i <= max; ++i) v.push_back(i);
  return v;
}

// Invalid combinations are skipped unless every parameter in them was given explicitly.
bool admit(bool valid, bool all_explicit, const std::string& what) {
  if (valid) return true;
  if (all_explicit) throw WindowError(what);
  return false;
}

void plan_suite(const std::string& suite, const Config& cfg, Plan& plan) {
  const int r = cfg.rank;
  const auto& o = cfg.verify;
  auto add = [&](bool chie, int degree, std::function<VerificationReport()> f) {
    plan.jobs.push_back({suite, chie, degree, std::move(f)});
  };
  const auto L = grid(cfg.lambda, cfg.lambda_max);
  const auto M = grid(cfg.mu, cfg.lambda_max);
  const auto N = grid(cfg.nu, cfg.lambda_max);
  const bool el = cfg.lambda.has_value(), em = cfg.mu.has_value(), en = cfg.nu.has_value();

  if (suite == "telescoping") {
    const auto alphabet = Alphabet::x_family(r);
    for (long l : L)
      for (long m : M) {
        if (!admit(l >= m, el && em, "window requires lambda >= mu")) continue;
        add(false, -1, [=] { return check_factor_commutativity(alphabet, 0, {l, m}); });
        for (long n : N)
          if (admit(m >= n, em && en, "window requires mu >= nu"))
            add(false, -1, [=] { return check_telescoping(alphabet, 0, l, m, n); });
      }
  } else if (suite == "lemma") {
    for (int p = 1; p < r; ++p)
      for (long m : M)
        for (long l : L) {
          if (!admit(l > m || (el && em && l == m), el && em, "lemma requires lambda >= mu")) continue;
          for (auto ord : {LemmaOrdering::x1_first, LemmaOrdering::x2_first})
            add(false, static_cast<int>(2 * (l - m)), [=, &plan] { return check_lemma(*plan.x, m, l, ord, o, p); });
        }
  } else if (suite == "central") {
    for (int p = 1; p < r; ++p)
      for (int i : {1, 2}) add(false, 3, [=, &plan] { return check_central(*plan.x, i, o, CentralCandidate::c, p); });
  } else if (suite == "ayb") {
    for (int p = 1; p < r; ++p)
      for (long l : L)
        for (long m : M)
          for (long n : N)
            if (admit(l >= m && m >= n, el && em && en, "AYB requires lambda >= mu >= nu"))
              add(false, static_cast<int>(2 * (l - n)), [=, &plan] { return check_ayb(*plan.x, p, l, m, n, o); });
  } else if (suite == "far") {
    for (int a = 1; a <= r; ++a)
      for (int b = a + 2; b <= r; ++b)
        for (long l : L)
          for (long m : M)
            if (admit(l > m || (el && em && l == m), el && em, "window requires lambda >= mu"))
              add(false, static_cast<int>(2 * (l - m)),
                  [=, &plan] { return check_far_commutation(*plan.x, b, a, l, m, o); });
  } else if (suite == "qq") {
    for (long l : L)
      for (long m : M) {
        if (!el || !em) {
          if (l <= m) continue;
        }
        for (long n : N)
          if (admit(l >= n && m >= n, el && em && en, "Q-commutativity requires lambda, mu >= nu"))
            add(false, static_cast<int>(r * (l + m)), [=, &plan] { return check_qq(*plan.x, l, m, n, o); });
      }
  } else if (suite == "chie") {
    for (int n = 1; n < r; ++n)
      for (auto f : {XRelationFamily::serre_first, XRelationFamily::serre_second})
        add(true, 6, [=, &plan] { return check_chi_e(*plan.chi, f, n, n + 1, o); });
    for (int a = 1; a <= r; ++a)
      for (int b = a + 2; b <= r; ++b)
        add(true, 6, [=, &plan] { return check_chi_e(*plan.chi, XRelationFamily::distant, a, b, o); });
  } else if (suite == "ratio") {
    const int d = cfg.series_degree.value_or(6);
    for (long m : M)
      for (long l : L)
        if (admit(l >= m, el && em, "ratio identity requires lambda >= mu"))
          add(false, -1, [=] { return check_ratio_identity(m, l, d); });
  } else if (suite == "ayb-formal") {
    const int d = cfg.series_degree.value_or(4);
    const int pts = cfg.specializations;
    for (int p = 1; p < r; ++p)
      add(false, d, [=, &plan] { return check_ayb_formal(*plan.x, p, d, pts, o); });
  } else {
    throw ConfigError("unknown suite '" + suite + "'");
  }
}

std::string methods_string(const VerificationReport& r) {
  std::string s;
  for (Method m : r.methods) s += (s.empty() ? "" : "+") + to_string(m);
  return s;
}

Json report_json(const std::string& suite, const VerificationReport& r, bool timings) {
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  Json j;
  j["suite"] = suite;
  j["identity"] = r.identity;
  j["params"] = params;
  j["pass"] = r.pass;
  j["residual_terms"] = r.residual.size();
  j["method"] = methods_string(r);
  j["millis"] = timings ? Json(std::round(r.millis * 1000) / 1000) : Json(nullptr);
  j["certified"] = r.certified;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

int cmd_verify(const std::string& name, const Config& cfg, std::ostream& out) {
  Plan plan;
  const bool all = name == "all";
  if (!all && std::find(kSuites.begin(), kSuites.end(), name) == kSuites.end())
    throw ConfigError("unknown suite '" + name + "' (expected one of telescoping, lemma, central, ayb, far, qq, "
                      "chie, ratio, ayb-formal, all)");
  for (const auto& s : all ? kSuites : std::vector<std::string>{name}) {
    const std::size_t before = plan.jobs.size();
    plan_suite(s, cfg, plan);
    if (!all && plan.jobs.size() == before)
      throw ConfigError("suite '" + s + "' has no instances at rank " + std::to_string(cfg.rank));
  }

  int x_degree = 0, chi_degree = 0;
  bool need_x = false, need_chi = false;
  for (const auto& j : plan.jobs) {
    if (j.degree < 0) continue;
    (j.chie ? need_chi : need_x) = true;
    (j.chie ? chi_degree : x_degree) = std::max(j.chie ? chi_degree : x_degree, j.degree);
    if (cfg.verify.mode == Mode::oracle && j.degree > cfg.oracle_cap)
      throw ConfigError("--mode oracle needs degree " + std::to_string(j.degree) + " but --oracle-cap is " +
                        std::to_string(cfg.oracle_cap));
  }
  if (need_x) plan.x = make_context(cfg, false, x_degree, true);
  if (need_chi) {
    Config c = cfg;
    if (need_x) c.rules_file.clear();
    plan.chi = make_context(c, true, chi_degree, true);
  }
  if (plan.x) dump_rules(cfg, plan.x->rules());
  else if (plan.chi) dump_rules(cfg, plan.chi->rules());

  const std::size_t n = plan.jobs.size();
  std::vector<std::optional<VerificationReport>> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        results[i] = plan.jobs[i].run();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = *results[a];
    const auto& rb = *results[b];
    return std::tie(plan.jobs[a].suite, ra.identity, ra.params) < std::tie(plan.jobs[b].suite, rb.identity, rb.params);
  });

  std::size_t failed = 0;
  for (const auto& r : results) failed += r->pass ? 0 : 1;
  if (cfg.structured) {
    for (std::size_t i : order) out << report_json(plan.jobs[i].suite, *results[i], cfg.timings).dump() << "\n";
  } else {
    out << std::left << std::setw(12) << "suite" << std::setw(18) << "identity" << std::setw(36) << "params"
        << std::setw(7) << "result" << std::setw(16) << "method" << "residual";
    if (cfg.timings) out << "  ms";
    out << "\n";
    for (std::size_t i : order) {
      const auto& r = *results[i];
      out << std::left << std::setw(12) << plan.jobs[i].suite << std::setw(18) << r.identity << std::setw(36)
          << r.params_string() << std::setw(7) << (r.pass ? "PASS" : "FAIL") << std::setw(16) << methods_string(r)
          << r.residual.size();
      if (cfg.timings) out << "  " << std::fixed << std::setprecision(1) << r.millis;
      out << "\n";
      if (!r.pass && !r.residual.is_zero()) out << "    residual: " << r.residual.to_string() << "\n";
      if (!r.note.empty() && !r.pass) out << "    note: " << r.note << "\n";
    }
    out << n << " checks, " << (n - failed) << " passed, " << failed << " failed\n";
  }
  return failed ? 1 : 0;
}

// ---------------------------------------------------------------- other commands

int cmd_normal_form(const std::string& expr, const Config& cfg, std::ostream& out, std::ostream& err) {
  const bool chie = cfg.alphabet == "chie";
  const AlphabetPtr alphabet = alphabet_for(cfg, chie);
  NcPoly p(alphabet);
  try {
    p = parse_poly(expr, alphabet);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n  " << expr << "\n  " << std::string(e.position(), ' ') << "^\n";
    return 2;
  }
  auto ctx = make_context(cfg, chie, p.degree(), false);
  dump_rules(cfg, ctx->rules());
  const ReduceResult r = ctx->reducer().reduce_checked(p);
  const int completed = ctx->rules().completed_degree();
  if (!r.certified)
    err << "warning: degree " << p.degree() << " exceeds the certified completion degree " << completed
        << "; the result may not be canonical\n";
  if (cfg.structured) {
    Json j;
    j["input"] = expr;
    j["normal_form"] = r.value.to_string();
    j["terms"] = r.value.size();
    j["degree"] = p.degree();
    j["certified"] = r.certified;
    j["completed_degree"] = completed == kUnboundedDegree ? Json(nullptr) : Json(completed);
    out << j.dump() << "\n";
  } else {
    out << r.value.to_string() << "\n";
    out << "certified: " << (r.certified ? "yes" : "no") << " (degree " << p.degree() << ", completed to "
        << (completed == kUnboundedDegree ? std::string("all degrees") : std::to_string(completed)) << ")\n";
  }
  return 0;
}

int cmd_hilbert(int degree, bool cross_check, const Config& cfg, std::ostream& out) {
  if (degree < 0) throw ConfigError("--degree must be >= 0");
  auto ctx = make_context(cfg, cfg.alphabet == "chie", degree, true);
  dump_rules(cfg, ctx->rules());
  const auto counts = normal_word_counts(ctx->rules(), degree);
  const int oracle_top = cross_check ? std::min(degree, cfg.oracle_cap) : -1;
  bool mismatch = false;
  if (!cfg.structured) out << "degree  count" << (cross_check ? "  oracle" : "") << "\n";
  for (int d = 0; d <= degree; ++d) {
    std::optional<std::uint64_t> dim;
    if (d <= oracle_top) {
      dim = ctx->oracle().quotient_dimension(d);
      mismatch = mismatch || *dim != counts[static_cast<std::size_t>(d)];
    }
    if (cfg.structured) {
      Json j;
      j["degree"] = d;
      j["count"] = counts[static_cast<std::size_t>(d)];
      j["oracle"] = dim ? Json(*dim) : Json(nullptr);
      out << j.dump() << "\n";
    } else {
      out << std::right << std::setw(6) << d << "  " << std::setw(5) << counts[static_cast<std::size_t>(d)];
      if (dim) out << "  " << std::setw(6) << *dim << (*dim != counts[static_cast<std::size_t>(d)] ? "  MISMATCH" : "");
      out << "\n";
    }
  }
  return mismatch ? 1 : 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Exact verification of q-product identities modulo the q-Serre relations", "qserre"};
  app.fallthrough();
  app.require_subcommand(1);

  int completion_degree = 0;
  std::string mode = "both", output = "text";
  long lambda = 0, mu = 0, nu = 0;
  int series_degree = 0;
  app.add_option("--rank", cfg.rank, "Number of x generators")->check(CLI::Range(1, 8));
  auto* cd_opt = app.add_option("--completion-degree", completion_degree, "Certify the rule set to this degree")
                     ->check(CLI::Range(1, 64));
  app.add_option("--oracle-cap", cfg.oracle_cap, "Largest degree handed to the linear-algebra oracle")
      ->check(CLI::Range(0, 16));
  app.add_option("--mode", mode, "rewrite, oracle or both")->check(CLI::IsMember({"rewrite", "oracle", "both"}));
  app.add_option("--precheck-points", cfg.verify.precheck_points, "Random specializations before exact elimination")
      ->check(CLI::Range(0, 64));
  app.add_option("--seed", cfg.verify.seed, "Seed for random specializations");
  app.add_option("--output", output, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--alphabet", cfg.alphabet, "x or chie")->check(CLI::IsMember({"x", "chie"}));
  auto* l_opt = app.add_option("--lambda", lambda, "Fix lambda");
  auto* m_opt = app.add_option("--mu", mu, "Fix mu");
  auto* n_opt = app.add_option("--nu", nu, "Fix nu");
  app.add_option("--lambda-max", cfg.lambda_max, "Grid bound for lambda, mu, nu")->check(CLI::Range(0, 12));
  auto* sd_opt =
      app.add_option("--series-degree", series_degree, "Series cutoff D")->check(CLI::Range(0, 12));
  app.add_option("--specializations", cfg.specializations, "Random (L, M, N) points for ayb-formal")
      ->check(CLI::Range(0, 32));
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 256));
  app.add_flag("--timings", cfg.timings, "Report wall time per check");
  app.add_option("--dump-rules", cfg.dump_rules, "Write the completed rule set to FILE");
  app.add_option("--rules", cfg.rules_file, "Load a rule set from FILE instead of completing");

  std::string expr, suite;
  int hilbert_degree = 8;
  bool cross_check = false;
  auto* nf = app.add_subcommand("normal-form", "Print the normal form of an expression");
  nf->add_option("expr", expr, "Expression, e.g. 'x2*x1*x1' or 'P(x1; 0, 2)'")->required();
  auto* vf = app.add_subcommand("verify", "Run an identity suite");
  vf->add_option("suite", suite, "telescoping, lemma, central, ayb, far, qq, chie, ratio, ayb-formal or all")
      ->required();
  auto* hb = app.add_subcommand("hilbert", "Count normal words per degree");
  hb->add_option("--degree", hilbert_degree, "Largest degree")->check(CLI::Range(0, 24));
  hb->add_flag("--cross-check", cross_check, "Compare with the oracle's quotient dimensions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  if (cd_opt->count()) cfg.completion_degree = completion_degree;
  if (l_opt->count()) cfg.lambda = lambda;
  if (m_opt->count()) cfg.mu = mu;
  if (n_opt->count()) cfg.nu = nu;
  if (sd_opt->count()) cfg.series_degree = series_degree;
  cfg.verify.mode = mode == "rewrite" ? Mode::rewrite : mode == "oracle" ? Mode::oracle : Mode::both;
  cfg.structured = output == "structured";

  try {
    if (nf->parsed()) return cmd_normal_form(expr, cfg, out, err);
    if (vf->parsed()) return cmd_verify(suite, cfg, out);
    return cmd_hilbert(hilbert_degree, cross_check, cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qserre"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qserre
