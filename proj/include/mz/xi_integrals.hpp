#pragma once

// Fourier-type integrals of the Riemann Xi function against cosh^-k(pi t)
// and their weighted-Gaussian counterparts:
//
//   k = 1:  int_0^inf Xi(t)/(1/4+t^2) cos(xt)/cosh(pi t) dt
//             = e^{x/2} int_0^inf (psi(t+1) - log t) exp(-pi t^2 e^{2x}) dt
//   k = 2:  same with cosh^2 on the left and Lambda1 as the weight
//   k = 3:  2 x (same with cosh^3) on the left and Lambda2 as the weight

#include <optional>
#include <span>
#include <vector>

#include "mz/lambda_series.hpp"
#include "mz/mellin.hpp"
#include "mz/quadrature.hpp"
#include "mz/verification.hpp"

namespace mz::xi {

inline constexpr double kMaxX = 5.0;

struct XiIntegralSpec {
  int k = 1;
  double x = 0.0;
  double truncation = 0.0;  // T_t; 0 selects the default (30 for k = 1, 20 otherwise)
  quad::AdaptiveOptions quad{1e-12, 1e-10, 2000, 1};

  /// Throws Error(Domain) for k outside {1,2,3}, |x| > 5, or a truncation
  /// too short for the integrand envelope exp(-(k + 1/4) pi T_t).
  void validate() const;
  double effective_truncation() const;
};

/// Left-hand side on [0, T_t], including the factor 2 for k = 3.  The
/// parity of the integrand in x lets negative x through.
quad::IntegralResult lhs_xi_integral(const XiIntegralSpec& spec);

/// Weight used on the right-hand side for k = 2, 3:  sign * S(t) - P(log t).
struct WeightConvention {
  lambda::SubtractionPolynomial poly;
  lambda::SeriesSign sign = lambda::SeriesSign::Plus;
};

struct RhsOptions {
  quad::AdaptiveOptions quad{1e-11, 1e-10, 4000, 1};
  lambda::LambdaConfig lambda{};
  double cutoff = 50.0;  // Gaussian exponent pi t^2 e^{2x} at which the range ends
};

/// e^{x/2} int_0^inf w(t) exp(-pi t^2 e^{2x}) dt in the variable u = log t.
/// `conv` is ignored for k = 1.
quad::IntegralResult rhs_weighted_integral(int k, double x, const WeightConvention& conv,
                                           const RhsOptions& opt = {});

struct Theorem2Options {
  quad::AdaptiveOptions lhs_quad{1e-12, 1e-10, 2000, 1};
  RhsOptions rhs{};
  mellin::ConventionMode mode = mellin::ConventionMode::Both;
  lambda::OracleFits fits{};
  std::optional<lambda::SeriesSign> sign;  // fixes the series sign for k = 2, 3
  double abs_tol = 1e-12;
  unsigned workers = 1;
};

/// Records for the identity with cosh power k on the grid.  k = 1 is
/// convention-free.  For k = 2, 3 each convention selected by `opt.mode`
/// is evaluated with `opt.sign`, or, when that is unset, with both series
/// signs keeping per convention the one with the most passes (then the
/// smallest worst error).
std::vector<VerificationRecord> verify_theorem2(int k, std::span<const double> grid, double tol,
                                                const Theorem2Options& opt);

}  // namespace mz::xi
