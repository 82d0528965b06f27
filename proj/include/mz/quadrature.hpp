#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace mz::quad {

using Complex = std::complex<double>;
using Integrand = std::function<Complex(double)>;

/// Value, error estimate and bookkeeping for any quadrature in the library.
/// `tail_bound` is non-zero only when part of the range was replaced by a
/// model (see mz::mellin::mellin_numeric).
struct IntegralResult {
  Complex value{0.0, 0.0};
  double error = 0.0;
  std::size_t evaluations = 0;
  double tail_bound = 0.0;

  IntegralResult& operator+=(const IntegralResult& other) {
    value += other.value;
    error += other.error;
    evaluations += other.evaluations;
    tail_bound += other.tail_bound;
    return *this;
  }
};

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  std::size_t max_subdivisions = 2000;
  std::size_t initial_panels = 1;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b].  Throws Error(NonConvergence)
/// with the achieved estimate when the tolerance cannot be met.
IntegralResult integrate(const Integrand& f, double a, double b, const AdaptiveOptions& opt);

/// Integral over [a, +inf) (direction = +1) or (-inf, a] (direction = -1)
/// by geometrically growing panels.  Stops after two consecutive panels
/// whose contribution and end-point magnitude fall below abs_tol / 10.
IntegralResult integrate_semi_infinite(const Integrand& f, double a, int direction,
                                       const AdaptiveOptions& opt, double max_extent = 2000.0);

}  // namespace mz::quad
