// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mz/error.hpp"
#include "mz/harness.hpp"
#include "mz/lambda_series.hpp"
#include "mz/mellin.hpp"
#include "mz/specialfn.hpp"
#include "mz/xi_integrals.hpp"
#include "oracles.hpp"

namespace sf = mz::specfn;
namespace me = mz::mellin;
namespace lam = mz::lambda;
namespace h = mz::harness;
using me::Complex;
using me::IdentityId;

namespace {

constexpr double kPi = sf::kPi;
constexpr double kEuler = 0.57721566490153286061;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void criterion(int n, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double dt = seconds_since(t0);
  if (limit_s > 0 && dt >= limit_s) o.require(false, "runtime " + std::to_string(dt) + " s over limit");
  if (!o.pass) ++failures;
  std::printf("C%d %s  %s  (%.2f s)%s%s\n", n, o.pass ? "PASS" : "FAIL", title, dt, o.detail.empty() ? "" : "  -- ",
              o.detail.c_str());
  std::fflush(stdout);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool all_pass(const std::vector<mz::VerificationRecord>& recs) {
  if (recs.empty()) return false;
  for (const auto& r : recs)
    if (!r.pass) return false;
  return true;
}

std::vector<mz::VerificationRecord> only(const std::vector<mz::VerificationRecord>& recs, const std::string& conv) {
  std::vector<mz::VerificationRecord> out;
  for (const auto& r : recs)
    if (r.convention == conv) out.push_back(r);
  return out;
}

double worst_rel(const std::vector<mz::VerificationRecord>& recs) {
  double w = 0;
  for (const auto& r : recs) w = std::max(w, std::isnan(r.rel_err) ? INFINITY : r.rel_err);
  return w;
}

const std::vector<double> kStripGrid = {0.2, 0.35, 0.5, 0.65, 0.8};

}  // namespace

int main() {
  const auto start = Clock::now();

  criterion(1, "known values and Stieltjes constants", 5.0, [] {
    Outcome o;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    o.require(rel(sf::zeta(2.0).real(), kPi * kPi / 6) <= 1e-12, "zeta(2)");
    o.require(rel(sf::zeta(0.0).real(), -0.5) <= 1e-12, "zeta(0)");
    o.require(rel(sf::digamma(1.0), -kEuler) <= 1e-12, "psi(1)");
    o.require(std::abs(sf::gamma(0.5) - std::sqrt(kPi)) / std::sqrt(kPi) <= 1e-12, "Gamma(1/2)");
    for (int n = 0; n <= 2; ++n) {
      const double d = std::abs(sf::stieltjes(n) - static_cast<double>(oracle::stieltjes(n)));
      o.require(d <= 1e-10, "gamma_" + std::to_string(n) + " off by " + num(d));
    }
    return o;
  });

  criterion(2, "kernel transforms pi^2/sin^2 and 2pi^3/sin^3, rel 1e-6", 30.0, [] {
    Outcome o;
    me::VerifyOptions opt;
    for (IdentityId id : {IdentityId::EQ1_4, IdentityId::EQ1_5}) {
      const auto recs = me::verify_identity(id, kStripGrid, 1e-6, opt);
      o.require(recs.size() == kStripGrid.size() && all_pass(recs),
                std::string(me::to_string(id)) + " worst rel " + num(worst_rel(recs)));
    }
    return o;
  });

  criterion(3, "digamma-excess transform vs -pi zeta(1-s)/sin(pi s), rel 1e-6", 0.0, [] {
    Outcome o;
    const auto recs = me::verify_identity(IdentityId::EQ1_1, kStripGrid, 1e-6, {});
    o.require(recs.size() == kStripGrid.size() && all_pass(recs), "worst rel " + num(worst_rel(recs)));
    return o;
  });

  criterion(4, "residue oracle, abs 1e-10, r in {0.1, 0.25}", 0.0, [] {
    Outcome o;
    for (double r : {0.1, 0.25}) {
      const std::vector<std::pair<me::ComplexFunction, double>> cases = {
          {[](Complex s) { return 1.0 / (s - 1.0); }, 1.0},
          {[](Complex s) { return 1.0 / ((s - 1.0) * (s - 1.0)); }, 0.0},
          {[](Complex s) { return sf::zeta(s); }, 1.0},
          {[](Complex s) { return sf::zeta(s) * std::pow(2.0, s); }, 2.0}};
      for (const auto& [F, want] : cases) {
        const double d = std::abs(me::residue_oracle(F, 1.0, r, 64) - want);
        o.require(d <= 1e-10, "r=" + num(r) + " want " + num(want) + " off by " + num(d));
      }
    }
    return o;
  });

  criterion(5, "inverse line integral at c = -1/2 vs the first series, rel 1e-5", 0.0, [] {
    Outcome o;
    for (double x : {0.3, 0.5, 0.8, 1.5}) {
      const double line = me::inverse_mellin_line(IdentityId::EQ1_6, x, -0.5).value.real();
      const double sum = lam::lambda1_raw_sum(x).value;
      const double rel = std::abs(line - sum) / std::abs(sum);
      o.require(rel <= 1e-5, "x=" + num(x) + " rel " + num(rel));
    }
    return o;
  });

  criterion(6, "power series: PS1 to 1e-7, PS2 with exactly one global sign", 0.0, [] {
    Outcome o;
    std::vector<double> xs;
    for (int i = 1; i <= 9; ++i) xs.push_back(0.1 * i);
    for (double x : xs) {
      const double p = lam::power_series(lam::PowerSeriesKind::Lambda1Sum, x, 200, lam::SeriesSign::Plus).value;
      const double d = std::abs(p - lam::lambda1_raw_sum(x).value);
      o.require(d <= 1e-7 * std::max(1.0, std::abs(p)), "PS1 x=" + num(x) + " off by " + num(d));
    }
    int signs_passing = 0, found = 0;
    for (int sigma : {1, -1}) {
      bool ok = true;
      for (double x : xs) {
        const double p = lam::power_series(lam::PowerSeriesKind::Lambda2Sum, x, 200, lam::SeriesSign::Plus).value;
        const double raw = sigma * lam::lambda2_raw_sum(x).value;
        ok = ok && std::abs(p - raw) <= 1e-7 * std::max(1.0, std::abs(raw));
      }
      if (ok) {
        ++signs_passing;
        found = sigma;
      }
    }
    o.require(signs_passing == 1, "PS2 signs passing: " + std::to_string(signs_passing));
    me::VerifyOptions opt;
    opt.fits.lambda1 = me::fit_residue_polynomial(lam::LambdaKind::Lambda1);
    opt.fits.lambda2 = me::fit_residue_polynomial(lam::LambdaKind::Lambda2);
    const auto recs = me::verify_identity(IdentityId::PS2, xs, 1e-7, opt);
    o.require(all_pass(recs), "recorded PS2 block fails");
    for (const auto& r : recs) o.require(r.sigma == found, "recorded PS2 sign differs");
    std::printf("   PS2 sign = %+d\n", found);
    return o;
  });

  criterion(7, "Lambda transforms with fitted polynomials and one sign, rel 1e-5; printed brackets reported", 300.0, [] {
    Outcome o;
    const std::vector<double> grid = {0.3, 0.5, 0.7};
    auto res = h::fit_conventions();
    me::VerifyOptions opt;
    opt.fits = res.fits;
    opt.mode = me::ConventionMode::Both;
    std::vector<mz::VerificationRecord> all;
    for (IdentityId id : {IdentityId::EQ1_2, IdentityId::EQ1_3}) {
      const auto recs = me::verify_identity(id, grid, 1e-5, opt);
      const auto oracle_block = only(recs, "oracle-resolved");
      o.require(oracle_block.size() == grid.size() && all_pass(oracle_block),
                std::string(me::to_string(id)) + " worst rel " + num(worst_rel(oracle_block)));
      for (const auto& r : oracle_block)
        o.require(r.sigma == oracle_block.front().sigma, std::string(me::to_string(id)) + " sign not uniform");
      const auto printed = only(recs, "paper-printed");
      std::printf("   %s: sign %+d, printed bracket %s (worst rel %s)\n", std::string(me::to_string(id)).c_str(),
                  oracle_block.empty() ? 0 : oracle_block.front().sigma, all_pass(printed) ? "passes" : "fails",
                  num(worst_rel(printed)).c_str());
      all.insert(all.end(), recs.begin(), recs.end());
    }
    h::RunConfig cfg;
    h::resolve_signs(res, cfg, all);
    o.require(res.paper_printed_pass.count("eq1.2") && res.paper_printed_pass.count("eq1.3"),
              "printed-bracket verdicts missing");
    double max_delta = 0;
    for (const auto* d : {&res.lambda1, &res.lambda2})
      for (double v : d->delta) max_delta = std::max(max_delta, std::abs(v));
    for (int i = 0; i < 4; ++i)
      std::printf("   delta c%d: Lambda1 %+.12f  Lambda2 %+.12f\n", i, res.lambda1.delta[i], res.lambda2.delta[i]);
    o.require(max_delta > 1e-9, "no printed coefficient differs from the fit");
    return o;
  });

  criterion(8, "Xi integrals: k = 1, 2, 3 at rel 1e-4 under the resolved conventions", 300.0, [] {
    Outcome o;
    h::RunConfig cfg;
    cfg.ids = {IdentityId::EQ2_1, IdentityId::EQ2_2, IdentityId::EQ2_3};
    cfg.x_grid = std::vector<double>{0.0, 0.25, 0.5, 1.0, 2.0};
    cfg.tol = 1e-4;
    cfg.mode = h::ConventionMode::Oracle;
    const auto res = h::run_suite(cfg);
    for (const char* id : {"eq2.1", "eq2.2", "eq2.3"}) {
      std::vector<mz::VerificationRecord> recs;
      for (const auto& r : res.records)
        if (r.id == id) recs.push_back(r);
      const bool ok = recs.size() == cfg.x_grid->size() && all_pass(recs);
      o.require(ok, std::string(id) + " worst rel " + num(worst_rel(recs)));
      if (!recs.empty())
        std::printf("   %s: %s, convention %s, sign %+d, rhs/lhs at x=0: %.12f\n", id, ok ? "passes" : "fails",
                    recs.front().convention.c_str(), recs.front().sigma, recs.front().rhs / recs.front().lhs);
    }
    std::printf("   reference: -pi = %.12f, -pi^2 = %.12f\n", -kPi, -kPi * kPi);
    return o;
  });

  criterion(9, "property suites and determinism", 0.0, [] {
    Outcome o;
    // recurrences
    for (double re : {-2.3, 0.4, 3.7})
      for (double im : {0.0, 2.5}) {
        const Complex z(re, im);
        o.require(std::abs(sf::gamma(z + 1.0) - z * sf::gamma(z)) <= 1e-12 * std::abs(z * sf::gamma(z)),
                  "gamma recurrence");
      }
    for (double x : {0.05, 1.3, 12.0})
      o.require(std::abs(sf::digamma(x + 1) - sf::digamma(x) - 1 / x) <= 1e-13 * std::max(1.0, 1 / x),
                "digamma recurrence");
    // evenness and reality of Xi
    for (double t : {0.5, 1.0, 5.0, 10.0})
      o.require(std::abs(sf::xi_critical(t) - sf::xi_critical(-t)) <= 1e-12 * std::abs(sf::xi_critical(t)),
                "Xi evenness at t=" + num(t));
    // quadrature self-consistency at s = 1/2
    {
      const auto f1 = me::fit_residue_polynomial(lam::LambdaKind::Lambda1);
      const auto f2 = me::fit_residue_polynomial(lam::LambdaKind::Lambda2);
      struct Kernel {
        const char* name;
        me::RealFunction f;
        me::QuadratureConfig q;
      };
      const me::QuadratureConfig lq = me::VerifyOptions::lambda_default();
      const std::vector<Kernel> kernels = {
          {"digamma excess", [](double t) { return sf::digamma_excess(t); }, {}},
          {"Lambda1", [&](double t) { return lam::lambda1(t, f1, lam::SeriesSign::Plus); }, lq},
          {"Lambda2", [&](double t) { return lam::lambda2(t, f2, lam::SeriesSign::Minus); }, lq},
          {"log t/(t-1)",
           [](double t) { return std::abs(t - 1) < 1e-4 ? 1.0 - 0.5 * (t - 1) : std::log(t) / (t - 1); }, {}},
          {"(pi^2+log^2 t)/(t+1)",
           [](double t) { return (kPi * kPi + std::log(t) * std::log(t)) / (t + 1); }, {}}};
      for (const auto& k : kernels) {
        me::QuadratureConfig half = k.q;
        half.abs_tol /= 2;
        half.rel_tol /= 2;
        const auto a = me::mellin_numeric(k.f, {0.5}, k.q);
        const auto b = me::mellin_numeric(k.f, {0.5}, half);
        o.require(std::abs(a.value - b.value) < a.error, std::string("self-consistency ") + k.name);
      }
    }
    // removable singularity
    for (int n = 1; n <= 10; ++n) {
      const double lo = lam::lambda1_raw_sum(n - 1e-6).value, hi = lam::lambda1_raw_sum(n + 1e-6).value;
      o.require(std::abs(lo - hi) <= 1e-4 * std::abs(hi), "continuity at n=" + std::to_string(n));
    }
    // report determinism and pass-flag consistency
    h::RunConfig cfg;
    cfg.ids = {IdentityId::EQ1_1, IdentityId::EQ1_3, IdentityId::PS2, IdentityId::EQ2_1};
    cfg.mode = h::ConventionMode::Both;
    auto many = cfg;
    many.workers = 3;
    const auto a = h::run_suite(cfg);
    const auto b = h::run_suite(many);
    o.require(h::render_json(a) == h::render_json(b) && h::render_csv(a) == h::render_csv(b),
              "reports differ across worker counts");
    for (const auto& r : a.records)
      if (!r.error) o.require(r.pass == ((r.rel_err <= r.tol) || (r.abs_err <= r.abs_tol)), "pass flag mismatch");
    return o;
  });

  const double total = seconds_since(start);
  const bool in_time = total < 900.0;
  if (!in_time) ++failures;
  std::printf("total %.2f s (limit 900 s) %s\n", total, in_time ? "ok" : "over");
  std::printf("%s: %d criterion failure(s)\n", failures ? "FAILED" : "PASSED", failures);
  return failures ? 1 : 0;
}
