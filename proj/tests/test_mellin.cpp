#include <doctest.h>

#include <cmath>
#include <vector>

#include "mz/error.hpp"
#include "mz/mellin.hpp"
#include "mz/specialfn.hpp"
#include "oracles.hpp"

namespace me = mz::mellin;
namespace lam = mz::lambda;
using me::Complex;
using me::IdentityId;
using me::StripPoint;

namespace {

constexpr double kPi = mz::specfn::kPi;

// Residue polynomials read off the Laurent expansions at s = 1
// (eps = s - 1, L = log x):
//   pi^2 csc^2(pi s) = eps^-2 (1 + pi^2 eps^2 / 3 + ...)
//   2 pi^3 csc^3(pi s) = -2 eps^-3 (1 + pi^2 eps^2 / 2 + ...)
//   zeta(s) = 1/eps + g0 - g1 eps + g2 eps^2 / 2 + ...
std::array<double, 4> expansion_lambda1() {
  const double g0 = static_cast<double>(oracle::stieltjes(0)), g1 = static_cast<double>(oracle::stieltjes(1));
  return {-g1 + kPi * kPi / 3, g0, 0.5, 0.0};
}

std::array<double, 4> expansion_lambda2() {
  const double g0 = static_cast<double>(oracle::stieltjes(0)), g1 = static_cast<double>(oracle::stieltjes(1)),
               g2 = static_cast<double>(oracle::stieltjes(2));
  return {-g2 - kPi * kPi * g0, 2 * g1 - kPi * kPi, -g0, -1.0 / 3};
}

me::VerifyOptions fitted_options() {
  me::VerifyOptions opt;
  opt.fits.lambda1 = me::fit_residue_polynomial(lam::LambdaKind::Lambda1);
  opt.fits.lambda2 = me::fit_residue_polynomial(lam::LambdaKind::Lambda2);
  return opt;
}

bool all_pass(const std::vector<mz::VerificationRecord>& recs) {
  for (const auto& r : recs)
    if (!r.pass) return false;
  return !recs.empty();
}

}  // namespace

TEST_CASE("identity names round-trip") {
  for (IdentityId id : me::kAllIdentities) CHECK(me::parse_identity(me::to_string(id)) == id);
  CHECK_FALSE(me::parse_identity("eq3.1"));
  CHECK(me::uses_s_grid(IdentityId::EQ1_4));
  CHECK_FALSE(me::uses_s_grid(IdentityId::EQ1_6));
}

TEST_CASE("transforms with known closed forms") {
  const me::QuadratureConfig cfg;
  for (double re : {0.15, 0.5, 0.85}) {
    for (double im : {0.0, 2.0}) {
      const Complex s(re, im);
      CAPTURE(s);
      const auto r = me::mellin_numeric([](double t) { return 1.0 / (1.0 + t); }, {s}, cfg);
      const Complex want = kPi / std::sin(kPi * s);
      CHECK(std::abs(r.value - want) <= 1e-8 * std::abs(want));
      CHECK(std::abs(r.value - want) <= r.error + 1e-12 * std::abs(want));
      const auto g = me::mellin_numeric([](double t) { return std::exp(-t); }, {s}, cfg);
      const oracle::cld go = oracle::gamma({re, im});
      CHECK(std::abs(g.value - Complex(double(go.real()), double(go.imag()))) <= 1e-9 * std::abs(g.value));
    }
  }
}

TEST_CASE("truncation point does not move the transform beyond its error") {
  me::QuadratureConfig a, b;
  a.upper = 1e3;
  b.upper = 1e4;
  auto f = [](double t) { return mz::specfn::digamma_excess(t); };
  const auto ra = me::mellin_numeric(f, {0.6}, a);
  const auto rb = me::mellin_numeric(f, {0.6}, b);
  CHECK(std::abs(ra.value - rb.value) <= ra.error + rb.error);
  CHECK(ra.tail_bound > 0);
}

TEST_CASE("an unresolvable tail is rejected") {
  try {
    me::mellin_numeric([](double t) { return 1.0 + std::sin(std::log(1 + t)); }, {0.5}, {});
    FAIL("expected non-convergence");
  } catch (const mz::Error& e) {
    CHECK(e.code() == mz::ErrorCode::NonConvergence);
  }
}

TEST_CASE("strip and configuration checks") {
  CHECK_THROWS_AS(me::mellin_numeric([](double) { return 1.0; }, {1.2}, {}), mz::Error);
  CHECK_THROWS_AS(StripPoint{Complex(0.0, 1.0)}.validate(), mz::Error);
  me::QuadratureConfig bad;
  bad.upper = 5;
  CHECK_THROWS_AS(bad.validate(), mz::Error);
  CHECK_THROWS_AS(me::rhs_closed_form(IdentityId::EQ1_4, {1.0}), mz::Error);
  CHECK_THROWS_AS(me::rhs_closed_form(IdentityId::EQ1_6, {0.5}), mz::Error);
}

TEST_CASE("residue oracle on known poles") {
  for (double r : {0.1, 0.25}) {
    CAPTURE(r);
    CHECK(std::abs(me::residue_oracle([](Complex s) { return 1.0 / (s - 1.0); }, 1.0, r, 64) - 1.0) < 1e-10);
    CHECK(std::abs(me::residue_oracle([](Complex s) { return 1.0 / ((s - 1.0) * (s - 1.0)); }, 1.0, r, 64)) <
          1e-10);
    for (double x : {1.0, 2.0}) {
      const Complex res =
          me::residue_oracle([x](Complex s) { return mz::specfn::zeta(s) * std::pow(x, s); }, 1.0, r, 64);
      CHECK(std::abs(res - x) < 1e-10);
    }
  }
}

TEST_CASE("residue oracle detects branch points and bad parameters") {
  CHECK_THROWS_AS(me::residue_oracle([](Complex s) { return std::sqrt(s - 1.0); }, 1.0, 0.2, 64), mz::Error);
  CHECK_THROWS_AS(me::residue_oracle([](Complex s) { return s; }, 1.0, 0.5, 64), mz::Error);
  CHECK_THROWS_AS(me::residue_oracle([](Complex s) { return s; }, 1.0, 0.2, 16), mz::Error);
}

TEST_CASE("residue fits reproduce the Laurent-expansion polynomials") {
  const auto f1 = me::fit_residue_polynomial(lam::LambdaKind::Lambda1);
  const auto f2 = me::fit_residue_polynomial(lam::LambdaKind::Lambda2);
  const auto e1 = expansion_lambda1();
  const auto e2 = expansion_lambda2();
  for (int i = 0; i < 4; ++i) {
    CAPTURE(i);
    CHECK(std::abs(f1.c[i] - e1[i]) < 1e-9);
    CHECK(std::abs(f2.c[i] - e2[i]) < 1e-9);
  }
  CHECK(f1.fit_residual <= 1e-8);
  CHECK(f1.provenance == lam::PolySource::OracleResolved);
}

TEST_CASE("inverse line integral reproduces the first series") {
  for (double x : {0.3, 0.5, 0.8, 1.5}) {
    CAPTURE(x);
    const auto r = me::inverse_mellin_line(IdentityId::EQ1_6, x, -0.5);
    const double want = static_cast<double>(oracle::lambda1_sum(x));
    CHECK(std::abs(r.value.real() - want) <= 1e-9 * want);
    // moving the contour inside the strip of analyticity changes nothing
    const auto r2 = me::inverse_mellin_line(IdentityId::EQ1_6, x, -0.3);
    CHECK(std::abs(r.value - r2.value) <= r.error + r2.error);
  }
  CHECK_THROWS_AS(me::inverse_mellin_line(IdentityId::EQ1_6, 1.0, 0.2), mz::Error);
  CHECK_THROWS_AS(me::inverse_mellin_line(IdentityId::EQ1_2, 1.0, -0.5), mz::Error);
}

TEST_CASE("kernel identities hold on the default grid") {
  const std::vector<double> grid = {0.2, 0.35, 0.5, 0.65, 0.8};
  me::VerifyOptions opt;
  for (IdentityId id : {IdentityId::EQ1_1, IdentityId::EQ1_4, IdentityId::EQ1_5}) {
    CAPTURE(me::to_string(id));
    const auto recs = me::verify_identity(id, grid, 1e-6, opt);
    CHECK(recs.size() == grid.size());
    CHECK(all_pass(recs));
  }
}

TEST_CASE("Lambda transforms resolve to one sign per series") {
  const std::vector<double> grid = {0.3, 0.5, 0.7};
  me::VerifyOptions opt = fitted_options();
  opt.mode = me::ConventionMode::Both;

  const auto r2 = me::verify_identity(IdentityId::EQ1_2, grid, 1e-5, opt);
  REQUIRE(r2.size() == 6);
  int oracle_passes = 0, paper_passes = 0;
  for (const auto& r : r2) {
    (r.convention == "oracle-resolved" ? oracle_passes : paper_passes) += r.pass;
    if (r.convention == "oracle-resolved") CHECK(r.sigma == 1);
  }
  CHECK(oracle_passes == 3);
  CHECK(paper_passes == 0);

  const auto r3 = me::verify_identity(IdentityId::EQ1_3, grid, 1e-5, opt);
  for (const auto& r : r3) {
    CHECK(r.pass);
    CHECK(r.sigma == -1);
  }
}

TEST_CASE("power series and integral representation signs") {
  me::VerifyOptions opt = fitted_options();
  const std::vector<double> xs = {0.1, 0.5, 0.9};
  for (const auto& r : me::verify_identity(IdentityId::PS2, xs, 1e-7, opt)) {
    CHECK(r.pass);
    CHECK(r.sigma == -1);
  }
  for (const auto& r : me::verify_identity(IdentityId::PS1, xs, 1e-7, opt)) CHECK(r.pass);
  const std::vector<double> xi = {0.1, 1.0, 10.0, 100.0};
  for (const auto& r : me::verify_identity(IdentityId::INTREP, xi, 1e-7, opt)) {
    CHECK(r.pass);
    CHECK(r.sigma == -1);
  }
}

TEST_CASE("verification is independent of the worker count") {
  me::VerifyOptions one = fitted_options();
  me::VerifyOptions many = one;
  many.workers = 4;
  const std::vector<double> grid = {0.3, 0.5, 0.7};
  const auto a = me::verify_identity(IdentityId::EQ1_2, grid, 1e-5, one);
  const auto b = me::verify_identity(IdentityId::EQ1_2, grid, 1e-5, many);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].point == b[i].point);
    CHECK(a[i].lhs == b[i].lhs);
    CHECK(a[i].rhs == b[i].rhs);
  }
}

TEST_CASE("per-point failures are recorded, not thrown") {
  me::VerifyOptions opt;  // no fits: the oracle convention cannot be evaluated
  const std::vector<double> grid = {0.5};
  const auto recs = me::verify_identity(IdentityId::EQ1_2, grid, 1e-5, opt);
  REQUIRE(recs.size() == 1);
  CHECK_FALSE(recs[0].pass);
  REQUIRE(recs[0].error);
  CHECK(recs[0].error->find("oracle-not-run") != std::string::npos);
  CHECK(std::isnan(recs[0].lhs));
  CHECK_THROWS_AS(me::verify_identity(IdentityId::EQ2_1, grid, 1e-4, opt), mz::Error);
}
