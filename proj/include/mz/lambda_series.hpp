#pragma once

// The two log-weighted series
//
//   S1(x) = x sum_n log(x/n) / (n (x - n))
//   S2(x) = x sum_n (pi^2 + log^2(x/n)) / (n (x + n))
//
// and the Lambda functions built from them by subtracting a polynomial in
// log x, Lambda(x) = sigma * S(x) - P(log x).  Both the coefficients printed
// in the source derivation and the ones recovered by the residue oracle
// (mz::mellin::fit_residue_polynomial) are supported; which is in force is
// always carried along in SubtractionPolynomial::provenance.

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "mz/quadrature.hpp"

namespace mz::lambda {

struct LambdaConfig {
  std::size_t max_terms = std::size_t{1} << 24;  // cap on the direct-sum length N
  std::size_t initial_terms = 100;               // N before adaptive doubling
  double singular_window = 1e-3;                 // |x - n| < window * n uses the delta expansion
  double tail_tolerance = 1e-13;
  int power_series_order = 200;

  void validate() const;
};

enum class LambdaKind { Lambda1, Lambda2 };
enum class PolySource { PaperPrinted, OracleResolved };

constexpr std::string_view to_string(PolySource s) noexcept {
  return s == PolySource::PaperPrinted ? "paper-printed" : "oracle-resolved";
}
constexpr std::string_view to_string(LambdaKind k) noexcept {
  return k == LambdaKind::Lambda1 ? "lambda1" : "lambda2";
}

/// Sign applied to the raw series before the subtraction.
enum class SeriesSign : int { Plus = 1, Minus = -1 };

constexpr double factor(SeriesSign s) noexcept { return static_cast<double>(static_cast<int>(s)); }
constexpr SeriesSign flip(SeriesSign s) noexcept {
  return s == SeriesSign::Plus ? SeriesSign::Minus : SeriesSign::Plus;
}

/// P(L) = c[3] L^3 + c[2] L^2 + c[1] L + c[0],  L = log x.
struct SubtractionPolynomial {
  std::array<double, 4> c{};
  PolySource provenance = PolySource::PaperPrinted;
  double fit_residual = 0.0;

  double operator()(double L) const { return ((c[3] * L + c[2]) * L + c[1]) * L + c[0]; }
};

/// Coefficients exactly as printed (Lambda1 bracket includes its 1/2 factor).
SubtractionPolynomial paper_printed_polynomial(LambdaKind kind);

/// Results of the residue fits, filled in by the Mellin engine.
struct OracleFits {
  std::optional<SubtractionPolynomial> lambda1;
  std::optional<SubtractionPolynomial> lambda2;
};

/// Throws Error(OracleNotRun) when the oracle-resolved polynomial is asked
/// for before the corresponding fit has been stored in `fits`.
SubtractionPolynomial subtraction_poly(LambdaKind kind, PolySource source, const OracleFits& fits);

struct SeriesValue {
  double value = 0.0;
  double tail_error = 0.0;  // truncation remainder bound plus a rounding estimate
  std::size_t terms = 0;    // direct-sum length N actually used
};

SeriesValue lambda1_raw_sum(double x, const LambdaConfig& cfg = {});
SeriesValue lambda2_raw_sum(double x, const LambdaConfig& cfg = {});

double lambda1(double x, const SubtractionPolynomial& poly, SeriesSign sign, const LambdaConfig& cfg = {});
double lambda2(double x, const SubtractionPolynomial& poly, SeriesSign sign, const LambdaConfig& cfg = {});
double lambda_value(LambdaKind kind, double x, const SubtractionPolynomial& poly, SeriesSign sign,
                    const LambdaConfig& cfg = {});

/// int_0^inf (psi(t+1) - log t) / (x + t) dt, split at t = 1 and t = x and
/// integrated in the variable u = log t.
quad::IntegralResult lambda1_integral_rep(double x, const quad::AdaptiveOptions& opt = {});

enum class PowerSeriesKind { Lambda1Sum, Lambda2Sum };

struct PowerSeriesValue {
  double value = 0.0;
  double remainder_bound = 0.0;
};

/// Small-x expansions, truncated after x^order, multiplied by `sign`:
///   Lambda1Sum: -sum_n (log x zeta(1+n) + zeta'(1+n)) x^n
///   Lambda2Sum:  sum_n (zeta''(1+n) + 2 log x zeta'(1+n) + (pi^2 + log^2 x) zeta(1+n)) (-x)^n
PowerSeriesValue power_series(PowerSeriesKind kind, double x, int order, SeriesSign sign);

}  // namespace mz::lambda
