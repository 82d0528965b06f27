#pragma once

// Gamma, digamma, Riemann zeta (with real-axis derivatives), Stieltjes
// constants and the Riemann Xi function in plain double precision.
//
// Accuracy targets: Gamma ~1e-13 relative for |z| <= 50, zeta ~1e-12
// relative for -2 <= Re s <= 12 and |Im s| <= 60, Stieltjes constants
// ~1e-12 absolute.

#include <array>
#include <complex>

namespace mz::specfn {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Series truncation controls shared by the zeta family.
struct PrecisionPolicy {
  double target = 1e-15;          // relative accuracy aimed for by truncation rules
  int max_series_terms = 380;     // cap on alternating-series length
  int euler_maclaurin_order = 12; // maximum number of Bernoulli correction terms

  /// Throws Error(Config) when a field is outside its documented range.
  void validate() const;
};

/// Gamma function on the complex plane.  Lanczos (g = 7, 9 terms) for
/// Re z >= 1/2, reflection below.  Throws Error(Pole) at non-positive
/// integers and Error(Overflow) when the magnitude is not representable.
Complex gamma(Complex z);

/// Digamma for real x > 0: upward recurrence to x >= 10, then the
/// asymptotic series.
double digamma(double x);

/// psi(t + 1) - log(t) for t > 0, evaluated without the cancellation that
/// the naive difference suffers for large t.  This is the Kloosterman
/// integrand.
double digamma_excess(double t);

/// Riemann zeta.  Re s > 0 uses Borwein's accelerated alternating series,
/// Re s <= 0 the functional equation.
Complex zeta(Complex s, const PrecisionPolicy& policy = {});

/// The two evaluation routes, exposed so they can be cross-checked.
Complex zeta_alternating(Complex s, const PrecisionPolicy& policy = {});
Complex zeta_reflected(Complex s, const PrecisionPolicy& policy = {});

/// k-th derivative (k in {0, 1, 2}) of zeta on the real axis sigma > 1,
/// i.e. sum_n (-log n)^k n^-sigma.
double zeta_deriv(int k, double sigma, const PrecisionPolicy& policy = {});

/// sum_{n >= first} (log n)^k n^-sigma for sigma > 1, first >= 1, k <= 3,
/// via Euler-Maclaurin.  Shared by the Lambda-series tails.
double log_power_tail(int k, double sigma, long first, const PrecisionPolicy& policy = {});

/// first^{sigma-1} * log_power_tail(k, sigma, first); stays representable
/// for large sigma.
double log_power_tail_scaled(int k, double sigma, long first, const PrecisionPolicy& policy = {});

struct StieltjesEntry {
  double value;
  double error_bound;
};

/// gamma_0 (Euler's constant), gamma_1, gamma_2.
struct StieltjesTable {
  std::array<StieltjesEntry, 3> entries;

  double operator[](int n) const { return entries.at(static_cast<std::size_t>(n)).value; }
};

/// Computed once, on first use, from the defining limit with an
/// Euler-Maclaurin correction.  Safe under concurrent first use.
const StieltjesTable& stieltjes_table();

/// Stieltjes constant gamma_n for n in {0, 1, 2}.
double stieltjes(int n);

/// Xi(t) = xi(1/2 + i t) with xi(s) = s(s-1)/2 pi^{-s/2} Gamma(s/2) zeta(s).
/// Requires |t| <= 60.  Throws Error(Accuracy) when the discarded imaginary
/// part is not negligible against the magnitude of the factors.
double xi_critical(double t);

}  // namespace mz::specfn
