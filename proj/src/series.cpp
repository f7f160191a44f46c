#include "qserre/series.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace qserre {

// ---------------------------------------------------------------- ParamPoly

ParamPoly::ParamPoly(const QRat& c) {
  if (!c.is_zero()) terms_.emplace(ParamExp{0, 0, 0}, c);
}

ParamPoly ParamPoly::variable(Param p) {
  ParamPoly r;
  ParamExp e{0, 0, 0};
  e[p] = 1;
  r.terms_.emplace(e, QRat(1));
  return r;
}

bool ParamPoly::is_constant() const {
  return terms_.size() == 1 && terms_.begin()->first == ParamExp{0, 0, 0};
}

QRat ParamPoly::constant_term() const {
  auto it = terms_.find(ParamExp{0, 0, 0});
  return it == terms_.end() ? QRat(0) : it->second;
}

void ParamPoly::add(const ParamExp& e, const QRat& c) {
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

namespace {

ParamExp add_exp(const ParamExp& a, const ParamExp& b) {
  return {static_cast<std::uint16_t>(a[0] + b[0]), static_cast<std::uint16_t>(a[1] + b[1]),
          static_cast<std::uint16_t>(a[2] + b[2])};
}

}  // namespace

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add(add_exp(ea, eb), ca * cb);
  return r;
}

ParamPoly operator*(const QRat& c, const ParamPoly& a) { return ParamPoly(c) * a; }

QRat ParamPoly::eval(const std::array<QRat, 3>& at) const {
  QRat sum(0);
  for (const auto& [e, c] : terms_) sum = sum + c * at[0].pow(e[0]) * at[1].pow(e[1]) * at[2].pow(e[2]);
  return sum;
}

// ---------------------------------------------------------------- FormalSeries

FormalSeries::FormalSeries(AlphabetPtr alphabet, int cutoff) : alphabet_(std::move(alphabet)), cutoff_(cutoff) {
  if (cutoff < 0) throw SeriesError("series cutoff must be >= 0");
}

FormalSeries::FormalSeries(const NcPoly& p, int cutoff) : FormalSeries(p.alphabet(), cutoff) {
  add_part({0, 0, 0}, p);
}

FormalSeries FormalSeries::scalar(AlphabetPtr alphabet, const ParamPoly& c, int cutoff) {
  FormalSeries r(alphabet, cutoff);
  for (const auto& [e, v] : c.terms()) r.add_part(e, NcPoly(alphabet, v));
  return r;
}

NcPoly FormalSeries::part(const ParamExp& e) const {
  auto it = parts_.find(e);
  return it == parts_.end() ? NcPoly(alphabet_) : it->second;
}

void FormalSeries::add_part(const ParamExp& e, const NcPoly& p) {
  NcPoly t = p.truncated(cutoff_);
  if (t.is_zero()) return;
  auto [it, inserted] = parts_.try_emplace(e, t);
  if (!inserted) {
    it->second += t;
    if (it->second.is_zero()) parts_.erase(it);
  }
}

void FormalSeries::check_compatible(const FormalSeries& o) const {
  if (!(*alphabet_ == *o.alphabet_)) throw AlphabetError("series over different alphabets");
  if (cutoff_ != o.cutoff_) throw SeriesError("series with different cutoffs");
}

FormalSeries& FormalSeries::operator+=(const FormalSeries& o) {
  check_compatible(o);
  for (const auto& [e, p] : o.parts_) add_part(e, p);
  return *this;
}

FormalSeries& FormalSeries::operator-=(const FormalSeries& o) {
  check_compatible(o);
  for (const auto& [e, p] : o.parts_) add_part(e, -p);
  return *this;
}

namespace {

NcPoly truncated_product(const NcPoly& a, const NcPoly& b, int cutoff) {
  NcPoly r(a.alphabet());
  for (const auto& [wa, ca] : a.terms()) {
    if (static_cast<int>(wa.size()) > cutoff) break;
    for (const auto& [wb, cb] : b.terms()) {
      if (static_cast<int>(wa.size() + wb.size()) > cutoff) break;
      r.add_term(wa * wb, ca * cb);
    }
  }
  return r;
}

}  // namespace

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
  a.check_compatible(b);
  FormalSeries r(a.alphabet_, a.cutoff_);
  for (const auto& [ea, pa] : a.parts_)
    for (const auto& [eb, pb] : b.parts_) r.add_part(add_exp(ea, eb), truncated_product(pa, pb, a.cutoff_));
  return r;
}

bool FormalSeries::operator==(const FormalSeries& o) const {
  return *alphabet_ == *o.alphabet_ && cutoff_ == o.cutoff_ && parts_ == o.parts_;
}

NcPoly FormalSeries::specialize(const std::array<QRat, 3>& at) const {
  NcPoly r(alphabet_);
  for (const auto& [e, p] : parts_) r += p * (at[0].pow(e[0]) * at[1].pow(e[1]) * at[2].pow(e[2]));
  return r;
}

ParamPoly FormalSeries::constant_term() const {
  ParamPoly r;
  for (const auto& [e, p] : parts_) {
    const QRat c = p.coefficient(Word{});
    if (c.is_zero()) continue;
    ParamPoly mono = ParamPoly(c);
    for (std::size_t i = 0; i < 3; ++i)
      for (int k = 0; k < e[i]; ++k) mono = mono * ParamPoly::variable(static_cast<Param>(i));
    r += mono;
  }
  return r;
}

std::string FormalSeries::to_string() const {
  if (parts_.empty()) return "0";
  static constexpr const char* kNames[] = {"L", "M", "N"};
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, p] : parts_) {
    if (!first) os << " + ";
    first = false;
    for (std::size_t i = 0; i < 3; ++i)
      if (e[i]) os << kNames[i] << (e[i] > 1 ? "^" + std::to_string(e[i]) : "") << "*";
    os << "(" << p.to_string() << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------- products

FormalSeries pochhammer_inf(const AlphabetPtr& alphabet, Letter gen, const ParamPoly& scale, int cutoff) {
  FormalSeries r(NcPoly(alphabet, QRat(1)), cutoff);
  // a_n = -scale q^{n-1} / (1 - q^n) a_{n-1}
  QRat c(1);
  ParamPoly power(QRat(1));
  Word w;
  for (int n = 1; n <= cutoff; ++n) {
    c = c * (-QRat::q_pow(n - 1)) / (QRat(1) - QRat::q_pow(n));
    power = power * scale;
    w.push_back(gen);
    r += FormalSeries::scalar(alphabet, c * power, cutoff) * FormalSeries(NcPoly(alphabet, w), cutoff);
  }
  return r;
}

FormalSeries series_inverse(const FormalSeries& a) {
  const ParamPoly c0 = a.constant_term();
  if (!c0.is_constant()) throw SeriesError("constant term is not an invertible scalar");
  const QRat inv = c0.constant_term().inverse();
  // a = c0 (1 + t) with t of positive x-degree; 1/a = inv * sum (-t)^k.
  FormalSeries t = a * FormalSeries(NcPoly(a.alphabet(), inv), a.cutoff());
  t -= FormalSeries(NcPoly(a.alphabet(), QRat(1)), a.cutoff());
  FormalSeries term(NcPoly(a.alphabet(), inv), a.cutoff());
  FormalSeries sum = term;
  FormalSeries minus_t = t * FormalSeries(NcPoly(a.alphabet(), QRat(-1)), a.cutoff());
  for (int k = 1; k <= a.cutoff(); ++k) {
    term = minus_t * term;
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

FormalSeries ratio_series(const AlphabetPtr& alphabet, Letter gen, const ParamPoly& upper_scale,
                          const ParamPoly& lower_scale, int cutoff) {
  return pochhammer_inf(alphabet, gen, upper_scale, cutoff) *
         series_inverse(pochhammer_inf(alphabet, gen, lower_scale, cutoff));
}

// ---------------------------------------------------------------- checks

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ParamPoly q_power_scalar(long k) { return ParamPoly(QRat::q_pow(k)); }

}  // namespace

VerificationReport check_ratio_identity(long mu, long lambda, int cutoff) {
  const auto t0 = Clock::now();
  if (!(lambda >= mu && mu >= 0)) throw WindowError("ratio identity requires lambda >= mu >= 0");
  auto alphabet = Alphabet::x_family(1);
  const Letter x = alphabet->letter("x", 1);
  const FormalSeries ratio = ratio_series(alphabet, x, q_power_scalar(mu), q_power_scalar(lambda), cutoff);
  NcPoly diff = ratio.specialize({QRat(1), QRat(1), QRat(1)}) - qproduct(alphabet, x, {lambda, mu}).truncated(cutoff);
  auto r = check_in_free_algebra("ratio", {{"mu", mu}, {"lambda", lambda}, {"D", cutoff}}, diff);
  r.millis = elapsed_ms(t0);
  return r;
}

FormalAybSides formal_ayb_sides(const AlphabetPtr& alphabet, int n, int cutoff) {
  const Letter a = alphabet->letter("x", n);
  const Letter b = alphabet->letter("x", n + 1);
  const auto L = ParamPoly::variable(kLambda);
  const auto M = ParamPoly::variable(kMu);
  const auto N = ParamPoly::variable(kNu);
  auto R = [&](Letter g, const ParamPoly& upper, const ParamPoly& lower) {
    return ratio_series(alphabet, g, lower, upper, cutoff);
  };
  // R(L, M) = (x M)_inf / (x L)_inf
  return {R(b, L, M) * R(a, L, N) * R(b, M, N), R(a, M, N) * R(b, L, N) * R(a, L, M)};
}

VerificationReport check_ayb_formal(const AlgebraContext& ctx, int n, int cutoff, int specializations,
                                    const VerifyOptions& opts) {
  const auto t0 = Clock::now();
  if (cutoff < 1) throw SeriesError("formal AYB needs D >= 1");
  if (n < 1 || n + 1 > ctx.rank()) throw WindowError("formal AYB needs 1 <= n < rank");
  const auto& alphabet = ctx.alphabet();
  const auto sides = formal_ayb_sides(alphabet, n, cutoff);
  const FormalSeries diff = sides.lhs - sides.rhs;

  VerificationReport r{"ayb-formal",
                       {{"rank", ctx.rank()}, {"n", n}, {"D", cutoff}, {"points", specializations}},
                       NcPoly(alphabet),
                       {Method::rewrite},
                       true,
                       true,
                       cutoff <= ctx.rules().completed_degree(),
                       {},
                       0};

  for (const auto& [e, p] : diff.parts()) {
    NcPoly res = ctx.reducer().reduce(p);
    if (!res.is_zero()) {
      r.pass = false;
      r.residual = res;
      r.note = "coefficient L^" + std::to_string(e[0]) + " M^" + std::to_string(e[1]) + " N^" +
               std::to_string(e[2]) + " does not reduce to zero";
      break;
    }
  }

  static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(std::size(kPrimes)) - 1);
  auto draw = [&] {
    int a = kPrimes[pick(rng)], b = kPrimes[pick(rng)];
    while (a == b) b = kPrimes[pick(rng)];
    return QRat(Integer(rng() & 1u ? -a : a)) / QRat(Integer(b));
  };
  bool oracle_used = false;
  for (int k = 0; k < specializations && r.pass; ++k) {
    const std::array<QRat, 3> at{draw(), draw(), draw()};
    auto sub = check_in_ideal("ayb-formal", r.params, diff.specialize(at), ctx, opts);
    for (Method m : sub.methods) oracle_used = oracle_used || m == Method::oracle;
    if (!sub.pass) {
      r.pass = false;
      r.methods_agree = sub.methods_agree;
      r.residual = sub.residual;
      r.note = "specialization " + std::to_string(k) + " fails" + (sub.note.empty() ? "" : ": " + sub.note);
    }
  }
  if (oracle_used) r.methods.push_back(Method::oracle);

  static constexpr long kIntegerWindows[][3] = {{1, 0, 0}, {2, 1, 0}, {3, 1, 0}, {3, 2, 1}};
  for (const auto& w : kIntegerWindows) {
    if (!r.pass) break;
    const std::array<QRat, 3> at{QRat::q_pow(w[0]), QRat::q_pow(w[1]), QRat::q_pow(w[2])};
    const auto exact = ayb_sides(alphabet, n, w[0], w[1], w[2]);
    if (!(sides.lhs.specialize(at) == exact.lhs.truncated(cutoff)) ||
        !(sides.rhs.specialize(at) == exact.rhs.truncated(cutoff))) {
      r.pass = false;
      r.note = "integer specialization (" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," +
               std::to_string(w[2]) + ") differs from the polynomial sides";
    }
  }
  r.millis = elapsed_ms(t0);
  return r;
}

}  // namespace qserre
