#include "mz/lambda_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mz/error.hpp"
#include "mz/specialfn.hpp"

namespace mz::lambda {
namespace {

constexpr double kPi = specfn::kPi;
constexpr double kPi2 = kPi * kPi;
constexpr double kEps = 2.220446049250313e-16;
constexpr int kMaxExpansionTerms = 80;

// Compensated (Neumaier) accumulator.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  double magnitude = 0.0;

  void add(double v) {
    const double t = sum + v;
    comp += (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
    sum = t;
    magnitude += std::abs(v);
  }
  double value() const { return sum + comp; }
};

void check_point(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(ErrorCode::Domain, "Lambda series need finite x > 0, got " + std::to_string(x));
}

struct TailPlan {
  long n;  // direct terms 1..n, expansion over n+1..inf
  int terms;
  double bound;
};

// The tail sum over n > N is expanded in powers of x/n; `envelope` is the
// j = 0 magnitude sum_{n>N} |summand| n^2 / n^2 used to bound the remainder.
template <typename Envelope>
TailPlan plan_tail(double x, const LambdaConfig& cfg, Envelope envelope) {
  long n = static_cast<long>(cfg.initial_terms);
  while (static_cast<double>(n) < 2.0 * x) n *= 2;
  for (;;) {
    if (static_cast<std::size_t>(n) > cfg.max_terms)
      throw Error(ErrorCode::TailBudgetExceeded,
                  "x = " + std::to_string(x) + " needs more than max_terms direct terms");
    const double r = x / static_cast<double>(n + 1);
    const double env = envelope(n + 1);
    const double budget = 0.5 * cfg.tail_tolerance;
    int j = 0;
    double bound = env / (1.0 - r);
    while (bound > budget && j < kMaxExpansionTerms) {
      bound *= r;
      ++j;
    }
    if (bound <= budget) return {n, j, bound};
    n *= 2;
  }
}

}  // namespace

void LambdaConfig::validate() const {
  if (max_terms < 100) throw Error(ErrorCode::Config, "max_terms must be at least 100");
  if (initial_terms < 100 || initial_terms > max_terms)
    throw Error(ErrorCode::Config, "initial_terms must lie in [100, max_terms]");
  if (!(singular_window > 0.0 && singular_window < 0.25))
    throw Error(ErrorCode::Config, "singular_window must lie in (0, 1/4)");
  if (!(tail_tolerance >= 1e-14 && tail_tolerance <= 1e-6))
    throw Error(ErrorCode::Config, "tail_tolerance must lie in [1e-14, 1e-6]");
  if (power_series_order < 1 || power_series_order > 200)
    throw Error(ErrorCode::Config, "power_series_order must lie in [1, 200]");
}

SubtractionPolynomial paper_printed_polynomial(LambdaKind kind) {
  const double g0 = specfn::stieltjes(0);
  const double g1 = specfn::stieltjes(1);
  const double g2 = specfn::stieltjes(2);
  SubtractionPolynomial p;
  p.provenance = PolySource::PaperPrinted;
  if (kind == LambdaKind::Lambda1) {
    // 1/2 (L^2 - 2 gamma L - 2 gamma_1 + pi^2/3)
    p.c = {-g1 + kPi2 / 6.0, -g0, 0.5, 0.0};
  } else {
    // -gamma_2 + 2 gamma_1 L - L^3/3 - gamma (pi^2 + L^2) - pi^2 L
    p.c = {-g2 - g0 * kPi2, 2.0 * g1 - kPi2, -g0, -1.0 / 3.0};
  }
  return p;
}

SubtractionPolynomial subtraction_poly(LambdaKind kind, PolySource source, const OracleFits& fits) {
  if (source == PolySource::PaperPrinted) return paper_printed_polynomial(kind);
  const auto& fit = kind == LambdaKind::Lambda1 ? fits.lambda1 : fits.lambda2;
  if (!fit)
    throw Error(ErrorCode::OracleNotRun,
                std::string("residue fit for ") + std::string(to_string(kind)) + " has not been run");
  return *fit;
}

SeriesValue lambda1_raw_sum(double x, const LambdaConfig& cfg) {
  check_point(x);
  const double L = std::log(x);
  const TailPlan plan = plan_tail(x, cfg, [&](long first) {
    return x * (std::abs(L) * specfn::log_power_tail(0, 2.0, first) +
                specfn::log_power_tail(1, 2.0, first));
  });

  Accumulator acc;
  for (long n = 1; n <= plan.n; ++n) {
    const double nd = static_cast<double>(n);
    const double d = x - nd;
    double term;
    if (std::abs(d) < cfg.singular_window * nd) {
      // log(x/n)/(x-n) has a removable singularity at x = n
      const double delta = d / nd;
      term = x * (1.0 - delta * (0.5 - delta * (1.0 / 3.0 - 0.25 * delta))) / (nd * nd);
    } else if (std::abs(d) < 0.5 * nd) {
      term = x * std::log1p(d / nd) / (nd * d);
    } else {
      term = x * std::log(x / nd) / (nd * d);
    }
    acc.add(term);
  }

  // sum_{n>N} -x sum_j x^j (L - log n) / n^{j+2}
  const long first = plan.n + 1;
  const double fd = static_cast<double>(first);
  const double r = x / fd;
  double rj = 1.0;
  for (int j = 0; j < plan.terms; ++j) {
    const double sigma = j + 2.0;
    const double z0 = specfn::log_power_tail_scaled(0, sigma, first);
    const double z1 = specfn::log_power_tail_scaled(1, sigma, first);
    acc.add(-x * rj / fd * (L * z0 - z1));
    rj *= r;
  }
  const double value = acc.value();
  return {value, plan.bound + 4.0 * kEps * acc.magnitude, static_cast<std::size_t>(plan.n)};
}

SeriesValue lambda2_raw_sum(double x, const LambdaConfig& cfg) {
  check_point(x);
  const double L = std::log(x);
  const TailPlan plan = plan_tail(x, cfg, [&](long first) {
    return x * ((kPi2 + L * L) * specfn::log_power_tail(0, 2.0, first) +
                2.0 * std::abs(L) * specfn::log_power_tail(1, 2.0, first) +
                specfn::log_power_tail(2, 2.0, first));
  });

  Accumulator acc;
  for (long n = 1; n <= plan.n; ++n) {
    const double nd = static_cast<double>(n);
    const double lg = std::log(x / nd);
    acc.add(x * (kPi2 + lg * lg) / (nd * (x + nd)));
  }

  // sum_{n>N} x sum_j (-x)^j (pi^2 + (L - log n)^2) / n^{j+2}
  const long first = plan.n + 1;
  const double fd = static_cast<double>(first);
  const double r = -x / fd;
  double rj = 1.0;
  for (int j = 0; j < plan.terms; ++j) {
    const double sigma = j + 2.0;
    const double z0 = specfn::log_power_tail_scaled(0, sigma, first);
    const double z1 = specfn::log_power_tail_scaled(1, sigma, first);
    const double z2 = specfn::log_power_tail_scaled(2, sigma, first);
    acc.add(x * rj / fd * ((kPi2 + L * L) * z0 - 2.0 * L * z1 + z2));
    rj *= r;
  }
  return {acc.value(), plan.bound + 4.0 * kEps * acc.magnitude, static_cast<std::size_t>(plan.n)};
}

double lambda1(double x, const SubtractionPolynomial& poly, SeriesSign sign, const LambdaConfig& cfg) {
  return factor(sign) * lambda1_raw_sum(x, cfg).value - poly(std::log(x));
}

double lambda2(double x, const SubtractionPolynomial& poly, SeriesSign sign, const LambdaConfig& cfg) {
  return factor(sign) * lambda2_raw_sum(x, cfg).value - poly(std::log(x));
}

double lambda_value(LambdaKind kind, double x, const SubtractionPolynomial& poly, SeriesSign sign,
                    const LambdaConfig& cfg) {
  return kind == LambdaKind::Lambda1 ? lambda1(x, poly, sign, cfg) : lambda2(x, poly, sign, cfg);
}

quad::IntegralResult lambda1_integral_rep(double x, const quad::AdaptiveOptions& opt) {
  check_point(x);
  const quad::Integrand f = [x](double u) -> quad::Complex {
    const double t = std::exp(u);
    return t * specfn::digamma_excess(t) / (x + t);
  };
  const double lx = std::log(x);
  const double lo = std::min(0.0, lx);
  const double hi = std::max(0.0, lx);
  quad::IntegralResult out = quad::integrate_semi_infinite(f, lo, -1, opt);
  if (hi > lo) {
    quad::AdaptiveOptions mid = opt;
    mid.initial_panels = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(hi - lo)));
    out += quad::integrate(f, lo, hi, mid);
  }
  out += quad::integrate_semi_infinite(f, hi, +1, opt);
  if (out.error > 1e-8)
    throw Error(ErrorCode::NonConvergence,
                "integral representation error estimate " + std::to_string(out.error) + " exceeds 1e-8");
  return out;
}

PowerSeriesValue power_series(PowerSeriesKind kind, double x, int order, SeriesSign sign) {
  if (!(x > 0.0 && x < 1.0)) throw Error(ErrorCode::Domain, "power series need 0 < x < 1");
  if (order < 1 || order > 200) throw Error(ErrorCode::Domain, "power series order must lie in [1, 200]");
  const double L = std::log(x);

  auto coefficient = [&](int n, bool bound) {
    const double s = 1.0 + n;
    const double z0 = specfn::zeta_deriv(0, s);
    const double z1 = specfn::zeta_deriv(1, s);
    if (kind == PowerSeriesKind::Lambda1Sum) {
      return bound ? std::abs(L) * z0 + std::abs(z1) : -(L * z0 + z1);
    }
    const double z2 = specfn::zeta_deriv(2, s);
    return bound ? z2 + 2.0 * std::abs(L) * std::abs(z1) + (kPi2 + L * L) * z0
                 : z2 + 2.0 * L * z1 + (kPi2 + L * L) * z0;
  };

  const double base = kind == PowerSeriesKind::Lambda1Sum ? x : -x;
  Accumulator acc;
  double pw = base;
  for (int n = 1; n <= order; ++n) {
    acc.add(coefficient(n, false) * pw);
    pw *= base;
  }
  // |coefficients| decrease monotonically in n, so the next one bounds the rest.
  const double remainder = coefficient(order + 1, true) * std::pow(x, order + 1) / (1.0 - x);
  return {factor(sign) * acc.value(), remainder + 4.0 * kEps * acc.magnitude};
}

}  // namespace mz::lambda
