#include <doctest.h>

#include <cmath>

#include "mz/error.hpp"
#include "mz/lambda_series.hpp"
#include "mz/specialfn.hpp"
#include "oracles.hpp"

namespace lam = mz::lambda;
using lam::LambdaKind;
using lam::PolySource;
using lam::SeriesSign;

namespace {

constexpr double kPi = mz::specfn::kPi;

// Lambda1 polynomial from the Laurent expansion of pi^2 csc^2(pi s) zeta(s) x^{s-1}
// at s = 1:  L^2/2 + gamma L - gamma_1 + pi^2/3.
lam::SubtractionPolynomial expansion_poly1() {
  lam::SubtractionPolynomial p;
  p.c = {-mz::specfn::stieltjes(1) + kPi * kPi / 3, mz::specfn::stieltjes(0), 0.5, 0.0};
  p.provenance = PolySource::OracleResolved;
  return p;
}

}  // namespace

TEST_CASE("raw sums match the brute-force oracle") {
  for (double x : {0.3, 1.0, 2.0, 7.5, 50.0, 333.3}) {
    CAPTURE(x);
    const double s1 = static_cast<double>(oracle::lambda1_sum(x));
    const double s2 = static_cast<double>(oracle::lambda2_sum(x));
    const auto v1 = lam::lambda1_raw_sum(x);
    const auto v2 = lam::lambda2_raw_sum(x);
    CHECK(std::abs(v1.value - s1) <= 1e-11 * std::abs(s1));
    CHECK(std::abs(v2.value - s2) <= 1e-11 * std::abs(s2));
    CHECK(v1.tail_error < 1e-12 * std::max(1.0, x));
  }
}

TEST_CASE("reference values") {
  CHECK(lam::lambda1_raw_sum(1.0).value == doctest::Approx(2.2577468869).epsilon(1e-10));
  CHECK(lam::lambda2_raw_sum(1.0).value == doctest::Approx(11.66734873).epsilon(1e-9));
  CHECK(lam::lambda1(1.0, expansion_poly1(), SeriesSign::Plus) == doctest::Approx(-1.104937092).epsilon(1e-9));
}

TEST_CASE("removable singularity: continuity across x = n") {
  for (double n : {1.0, 2.0, 17.0, 250.0}) {
    CAPTURE(n);
    const double at = lam::lambda1_raw_sum(n).value;
    for (double h : {1e-12, 1e-9, 1e-6}) {
      CHECK(std::abs(lam::lambda1_raw_sum(n + h * n).value - at) < 5 * h * n + 1e-13);
      CHECK(std::abs(lam::lambda1_raw_sum(n - h * n).value - at) < 5 * h * n + 1e-13);
    }
    // adjacent doubles on either side of the delta-expansion window
    for (double edge : {n + 1e-3 * n, n - 1e-3 * n}) {
      const double inside = lam::lambda1_raw_sum(std::nextafter(edge, n)).value;
      const double outside = lam::lambda1_raw_sum(std::nextafter(edge, 2 * edge - n)).value;
      CHECK(std::abs(inside - outside) < 1e-13 * std::max(1.0, std::abs(inside)));
    }
  }
}

TEST_CASE("removable singularity is smooth in the first derivative too") {
  const double h = 1e-4;
  for (double n : {1.0, 3.0}) {
    const double left = (lam::lambda1_raw_sum(n).value - lam::lambda1_raw_sum(n - h).value) / h;
    const double right = (lam::lambda1_raw_sum(n + h).value - lam::lambda1_raw_sum(n).value) / h;
    CHECK(std::abs(left - right) < 1e-2);
  }
}

TEST_CASE("power series agree with the raw sums") {
  const auto ps1 = lam::power_series(lam::PowerSeriesKind::Lambda1Sum, 0.3, 60, SeriesSign::Plus);
  CHECK(std::abs(ps1.value - lam::lambda1_raw_sum(0.3).value) < 1e-8);
  for (double x = 0.1; x < 0.95; x += 0.1) {
    CAPTURE(x);
    const auto p1 = lam::power_series(lam::PowerSeriesKind::Lambda1Sum, x, 200, SeriesSign::Plus);
    const auto p2 = lam::power_series(lam::PowerSeriesKind::Lambda2Sum, x, 200, SeriesSign::Plus);
    CHECK(std::abs(p1.value - lam::lambda1_raw_sum(x).value) <= 1e-7 * std::abs(p1.value));
    // the second expansion is the negated series
    CHECK(std::abs(p2.value + lam::lambda2_raw_sum(x).value) <= 1e-7 * std::abs(p2.value));
    CHECK(p1.remainder_bound < 1e-7);
  }
  CHECK_THROWS_AS(lam::power_series(lam::PowerSeriesKind::Lambda1Sum, 1.2, 10, SeriesSign::Plus), mz::Error);
}

TEST_CASE("integral representation matches the trapezoid oracle") {
  for (double x : {0.1, 1.0, 10.0, 100.0}) {
    CAPTURE(x);
    const auto r = lam::lambda1_integral_rep(x);
    CHECK(std::abs(r.value.real() - static_cast<double>(oracle::lambda1_integral(x))) < 1e-10);
    CHECK(r.error <= 1e-8);
  }
  CHECK(lam::lambda1_integral_rep(1.0).value.real() == doctest::Approx(1.104937092).epsilon(1e-9));
}

TEST_CASE("integral representation is positive and strictly decreasing") {
  double prev = INFINITY;
  for (double x : {0.1, 1.0, 10.0, 100.0}) {
    const double v = lam::lambda1_integral_rep(x).value.real();
    CHECK(v > 0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("integral representation equals the negated Lambda1") {
  for (double x : {0.1, 1.0, 10.0, 100.0}) {
    const double rep = lam::lambda1_integral_rep(x).value.real();
    const double l1 = lam::lambda1(x, expansion_poly1(), SeriesSign::Plus);
    CHECK(std::abs(rep + l1) < 1e-10 * std::max(1.0, std::abs(rep)));
  }
}

TEST_CASE("Lambda1 decays at large x under the expansion polynomial") {
  CHECK(std::abs(lam::lambda1(1000.0, expansion_poly1(), SeriesSign::Plus) + 0.0043736) < 1e-7);
}

TEST_CASE("printed polynomials") {
  const double g0 = mz::specfn::stieltjes(0), g1 = mz::specfn::stieltjes(1), g2 = mz::specfn::stieltjes(2);
  const auto p1 = lam::paper_printed_polynomial(LambdaKind::Lambda1);
  CHECK(p1.c[2] == 0.5);
  CHECK(p1.c[1] == doctest::Approx(-g0));
  CHECK(p1.c[0] == doctest::Approx(-g1 + kPi * kPi / 6));
  CHECK(p1.provenance == PolySource::PaperPrinted);
  const auto p2 = lam::paper_printed_polynomial(LambdaKind::Lambda2);
  const double L = 0.7;
  const double bracket = -g2 + 2 * g1 * L - L * L * L / 3 - g0 * (kPi * kPi + L * L) - kPi * kPi * L;
  CHECK(p2(L) == doctest::Approx(bracket).epsilon(1e-14));
}

TEST_CASE("oracle polynomial needs the fit first") {
  CHECK_THROWS_AS(lam::subtraction_poly(LambdaKind::Lambda1, PolySource::OracleResolved, {}), mz::Error);
  lam::OracleFits fits;
  fits.lambda1 = expansion_poly1();
  CHECK(lam::subtraction_poly(LambdaKind::Lambda1, PolySource::OracleResolved, fits).c[2] == 0.5);
}

TEST_CASE("domain and budget errors") {
  CHECK_THROWS_AS(lam::lambda1_raw_sum(0.0), mz::Error);
  CHECK_THROWS_AS(lam::lambda2_raw_sum(-1.0), mz::Error);
  lam::LambdaConfig cfg;
  cfg.max_terms = 1000;
  try {
    lam::lambda1_raw_sum(5000.0, cfg);
    FAIL("expected a budget error");
  } catch (const mz::Error& e) {
    CHECK(e.code() == mz::ErrorCode::TailBudgetExceeded);
  }
  cfg = {};
  cfg.singular_window = 0.5;
  CHECK_THROWS_AS(cfg.validate(), mz::Error);
}
