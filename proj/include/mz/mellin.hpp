#pragma once

// Numerical Mellin transforms, their closed-form counterparts, the contour
// residue oracle and the inverse-Mellin line integral.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mz/lambda_series.hpp"
#include "mz/quadrature.hpp"
#include "mz/verification.hpp"

namespace mz::mellin {

using Complex = std::complex<double>;
using quad::IntegralResult;

/// Evaluation abscissa together with the vertical strip it must lie in.
struct StripPoint {
  Complex s;
  double lo = 0.0;
  double hi = 1.0;

  /// Throws Error(StripViolation) unless lo < Re s < hi.
  void validate() const;
};

struct QuadratureConfig {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  std::size_t max_subdivisions = 4000;
  double upper = 1e4;       // T: the range [1, T] is integrated, [T, inf) is modelled
  int tail_order = 3;       // number of inverse powers in the tail model
  int tail_lead_power = 1;  // smallest inverse power p of the tail model
  double tail_reject = 1e-3; // tail bound above this fraction of |value| is non-convergence

  void validate() const;
  quad::AdaptiveOptions adaptive() const;
};

enum class IdentityId { EQ1_1, EQ1_2, EQ1_3, EQ1_4, EQ1_5, EQ1_6, EQ2_1, EQ2_2, EQ2_3, PS1, PS2, INTREP };

inline constexpr IdentityId kAllIdentities[] = {
    IdentityId::EQ1_1, IdentityId::EQ1_2, IdentityId::EQ1_3, IdentityId::EQ1_4,
    IdentityId::EQ1_5, IdentityId::EQ1_6, IdentityId::EQ2_1, IdentityId::EQ2_2,
    IdentityId::EQ2_3, IdentityId::PS1,   IdentityId::PS2,   IdentityId::INTREP};

std::string_view to_string(IdentityId id) noexcept;
std::optional<IdentityId> parse_identity(std::string_view text) noexcept;

/// True for identities whose grid is in s (the Mellin variable), false for
/// those evaluated at real x.
bool uses_s_grid(IdentityId id) noexcept;

using RealFunction = std::function<double(double)>;
using ComplexFunction = std::function<Complex(Complex)>;

/// int_0^inf t^{s-1} f(t) dt.  [0, 1] is integrated in u = log t down to
/// where the integrand is negligible, [1, T] adaptively in u, and [T, inf)
/// analytically against a least-squares model sum a_pq (T/t)^p log^q(t/T)
/// fitted on [T/10, T].  The tail bound combines a second fit on
/// [T/20, T/2] with hold-out checks at 2T and 4T.
IntegralResult mellin_numeric(const RealFunction& f, const StripPoint& s, const QuadratureConfig& cfg);

/// Closed-form right-hand sides of EQ1_1 .. EQ1_5.
Complex rhs_closed_form(IdentityId id, const StripPoint& s);

/// (1/2 pi i) times the contour integral of F around |s - s0| = r by the
/// M-point trapezoid rule.  Repeated at r/2; a disagreement beyond 1e-8
/// throws Error(NonAnalytic).
Complex residue_oracle(const ComplexFunction& F, Complex s0, double r, int points);

/// Residue of pi^2 csc^2(pi s) zeta(s) x^{s-1} (Lambda1) or
/// 2 pi^3 csc^3(pi s) zeta(s) x^{s-1} (Lambda2) at s = 1, sampled at six
/// log-spaced x in [0.5, 20] and least-squares fitted by a cubic in log x.
lambda::SubtractionPolynomial fit_residue_polynomial(lambda::LambdaKind kind);

/// (1/2 pi i) int_{(c)} pi^2 zeta(1-s) / sin^2(pi s) x^{-s} ds for
/// -1 < c < 0 (only EQ1_6 has a line-integral form).
IntegralResult inverse_mellin_line(IdentityId id, double x, double c, const QuadratureConfig& cfg = {});

enum class ConventionMode { Paper, Oracle, Both };

struct VerifyOptions {
  QuadratureConfig kernel_quad{};                  // EQ1_1, EQ1_4, EQ1_5
  QuadratureConfig lambda_quad = lambda_default(); // EQ1_2, EQ1_3
  QuadratureConfig line_quad{};                    // EQ1_6
  lambda::LambdaConfig lambda{};
  quad::AdaptiveOptions intrep_quad{1e-11, 1e-11, 2000, 1};
  ConventionMode mode = ConventionMode::Oracle;
  lambda::OracleFits fits{};
  double abs_tol = 1e-12;
  double line_abscissa = -0.5;
  int power_series_order = 200;
  unsigned workers = 1;

  static QuadratureConfig lambda_default() {
    QuadratureConfig q;
    q.abs_tol = 1e-10;
    q.rel_tol = 1e-10;
    q.upper = 2000.0;
    return q;
  }
};

/// Evaluates both sides of `id` at every grid point.  For identities that
/// involve a Lambda convention, records are produced for each convention
/// selected by `opt.mode`; where the series sign is ambiguous both signs
/// are tried and one global sign per convention is kept (the one with the
/// most passing points).  Per-point failures are recorded, never thrown.
/// Output order: convention, then grid order.  EQ2_* are handled by
/// mz::xi::verify_theorem2.
std::vector<VerificationRecord> verify_identity(IdentityId id, std::span<const double> grid, double tol,
                                                const VerifyOptions& opt);

}  // namespace mz::mellin
