#include "mz/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mz/error.hpp"

namespace mz::specfn {
namespace {

constexpr double kLn2 = 0.693147180559945309417232121458176568;
constexpr double kSqrt2Pi = 2.506628274631000502415765284811045253;
constexpr double kEps = 2.220446049250313e-16;

// B_{2j} / (2j)!  for j = 1..15.
constexpr std::array<double, 15> kBernoulliOverFactorial = [] {
  constexpr std::array<double, 15> b2j = {
      1.0 / 6.0,           -1.0 / 30.0,           1.0 / 42.0,         -1.0 / 30.0,
      5.0 / 66.0,          -691.0 / 2730.0,       7.0 / 6.0,          -3617.0 / 510.0,
      43867.0 / 798.0,     -174611.0 / 330.0,     854513.0 / 138.0,   -236364091.0 / 2730.0,
      8553103.0 / 6.0,     -23749461029.0 / 870.0, 8615841276005.0 / 14322.0};
  std::array<double, 15> out{};
  double fact = 1.0;
  for (std::size_t j = 0; j < b2j.size(); ++j) {
    const double m = 2.0 * static_cast<double>(j + 1);
    fact *= (m - 1.0) * m;
    out[j] = b2j[j] / fact;
  }
  return out;
}();

// B_{2k} / (2k) for the digamma asymptotic series, k = 1..7.
constexpr std::array<double, 7> kDigammaAsym = {
    1.0 / 12.0,   -1.0 / 120.0, 1.0 / 252.0,     -1.0 / 240.0,
    1.0 / 132.0,  -691.0 / 32760.0, 1.0 / 12.0};

// Polynomial in L = log t, coefficients by ascending power.
using LogPoly = std::vector<double>;

double eval_poly(const LogPoly& p, double L) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * L + *it;
  return acc;
}

// d/dt [t^{-sigma-m} P(L)] = t^{-sigma-m-1} (-(sigma+m) P(L) + P'(L))
LogPoly differentiate(const LogPoly& p, double exponent) {
  LogPoly out(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = -exponent * p[i];
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] += static_cast<double>(i) * p[i];
  return out;
}

struct EmCorrection {
  double value;
  double last_term;
};

// f(N)/2 - sum_j B_{2j}/(2j)! f^{(2j-1)}(N) for f(t) = t^{-sigma} P(log t),
// multiplied by base^{sigma-1} so that large sigma does not underflow.
EmCorrection euler_maclaurin_correction(const LogPoly& poly, double sigma, double n,
                                        int max_order, double base = 1.0) {
  const double L = std::log(n);
  const double scaled = std::pow(n / base, -sigma) / base;  // n^-sigma base^{sigma-1}
  double value = 0.5 * scaled * eval_poly(poly, L);
  LogPoly deriv = poly;
  double exponent = sigma;
  double last = std::abs(value);
  max_order = std::min<int>(max_order, static_cast<int>(kBernoulliOverFactorial.size()));
  for (int j = 0; j < max_order; ++j) {
    // advance to the (2j+1)-th derivative
    deriv = differentiate(deriv, exponent);
    exponent += 1.0;
    if (j > 0) {
      deriv = differentiate(deriv, exponent);
      exponent += 1.0;
    }
    const double term = kBernoulliOverFactorial[static_cast<std::size_t>(j)] * scaled *
                        std::pow(n, sigma - exponent) * eval_poly(deriv, L);
    value -= term;
    if (std::abs(term) > last && j > 2) break;  // asymptotic series started diverging
    last = std::abs(term);
    if (last <= kEps * 1e-3 * std::abs(value)) break;
  }
  return {value, last};
}

// base^{sigma-1} int_N^inf t^{-sigma} L^k dt with a = sigma - 1 > 0.
double log_power_integral(int k, double sigma, double n, double base = 1.0) {
  const double a = sigma - 1.0;
  const double L = std::log(n);
  double acc = 0.0;
  double falling = 1.0;  // k!/(k-j)!
  double apow = a;
  for (int j = 0; j <= k; ++j) {
    acc += falling * std::pow(L, k - j) / apow;
    falling *= static_cast<double>(k - j);
    apow *= a;
  }
  return std::pow(n / base, -a) * acc;
}

// -expm1(w) accurate for small |w|, used for 1 - 2^{1-s} near s = 1.
Complex one_minus_exp(Complex w) {
  const double a = w.real();
  const double b = w.imag();
  const double s = std::sin(0.5 * b);
  const Complex em1(std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b));
  return -em1;
}

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

Complex lanczos_gamma(Complex z) {
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;
  z -= 1.0;
  Complex x = p[0];
  for (std::size_t i = 1; i < p.size(); ++i) x += p[i] / (z + static_cast<double>(i));
  const Complex t = z + g + 0.5;
  return kSqrt2Pi * std::exp((z + 0.5) * std::log(t) - t) * x;
}

// Euler-Maclaurin summation of zeta for an arbitrary s != 1; used only near
// the zeros of 1 - 2^{1-s} off the real axis, where the eta route is 0/0.
Complex zeta_euler_maclaurin(Complex s) {
  const long n = 20 + static_cast<long>(std::abs(s.imag()));
  Complex acc = 0.0;
  for (long k = 1; k < n; ++k) acc += std::pow(static_cast<double>(k), -s);
  const double nd = static_cast<double>(n);
  const Complex n_pow = std::pow(nd, -s);
  acc += nd * n_pow / (s - 1.0) + 0.5 * n_pow;
  Complex rising = s;  // s (s+1) ... (s + 2j - 2)
  Complex npow = n_pow / nd;
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    const Complex term = kBernoulliOverFactorial[j] * rising * npow;
    acc += term;
    if (std::abs(term) < kEps * 1e-2 * std::abs(acc)) break;
    const double m = 2.0 * static_cast<double>(j + 1);
    rising *= (s + (m - 1.0)) * (s + m);
    npow /= nd * nd;
  }
  return acc;
}

}  // namespace

void PrecisionPolicy::validate() const {
  if (!(target >= 1e-15 && target <= 1e-6))
    throw Error(ErrorCode::Config, "precision target must lie in [1e-15, 1e-6]");
  if (max_series_terms <= 0 || euler_maclaurin_order <= 0)
    throw Error(ErrorCode::Config, "term and order caps must be positive");
}

Complex gamma(Complex z) {
  if (is_nonpositive_integer(z))
    throw Error(ErrorCode::Pole, "gamma pole at z = " + std::to_string(z.real()));
  Complex result;
  if (z.real() < 0.5) {
    result = kPi / (std::sin(kPi * z) * lanczos_gamma(1.0 - z));
  } else {
    result = lanczos_gamma(z);
  }
  if (!std::isfinite(result.real()) || !std::isfinite(result.imag()))
    throw Error(ErrorCode::Overflow, "gamma magnitude not representable");
  return result;
}

double digamma(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::Domain, "digamma requires x > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double pw = inv2;
  double series = 0.0;
  for (double c : kDigammaAsym) {
    series += c * pw;
    pw *= inv2;
  }
  return acc + std::log(x) - 0.5 / x - series;
}

double digamma_excess(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::Domain, "digamma_excess requires t > 0");
  if (t < 10.0) return digamma(t + 1.0) - std::log(t);
  const double inv2 = 1.0 / (t * t);
  double pw = inv2;
  double series = 0.0;
  for (double c : kDigammaAsym) {
    series += c * pw;
    pw *= inv2;
  }
  return 0.5 / t - series;
}

Complex zeta_alternating(Complex s, const PrecisionPolicy& policy) {
  if (s == Complex(1.0, 0.0)) throw Error(ErrorCode::Pole, "zeta pole at s = 1");
  if (!(s.real() > 0.0)) throw Error(ErrorCode::Domain, "alternating series needs Re s > 0");

  const Complex denom = one_minus_exp((1.0 - s) * kLn2);
  if (std::abs(denom) < 1e-3 && std::abs(s - 1.0) > 1e-2) return zeta_euler_maclaurin(s);

  // Borwein's bound: |err| <= 3 (1 + 2|t|) e^{pi|t|/2} / (|Gamma(s)| (3+sqrt 8)^n)
  const double t = std::abs(s.imag());
  // a large |Gamma(s)| only shortens the series, so beyond overflow it is dropped
  const double log_gamma_abs = s.real() < 150.0 ? std::log(std::abs(gamma(s))) : 0.0;
  const double needed =
      (std::log(3.0 / policy.target) + 0.5 * kPi * t + std::log1p(2.0 * t) - log_gamma_abs) /
      std::log(3.0 + std::sqrt(8.0));
  const int n = std::clamp(static_cast<int>(std::ceil(needed)) + 2, 20, policy.max_series_terms);
  if (needed > policy.max_series_terms)
    throw Error(ErrorCode::Accuracy, "alternating series needs more than max_series_terms");

  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  double term = 1.0 / n;
  double partial = term;
  d[0] = n * partial;
  for (int i = 0; i < n; ++i) {
    term *= 4.0 * (n + i) * (n - i) / ((2.0 * i + 1.0) * (2.0 * i + 2.0));
    partial += term;
    d[static_cast<std::size_t>(i) + 1] = n * partial;
  }
  const double dn = d[static_cast<std::size_t>(n)];
  Complex acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double w = (d[static_cast<std::size_t>(k)] - dn) / dn;
    const Complex v = w * std::pow(static_cast<double>(k + 1), -s);
    acc += (k % 2 == 0) ? v : -v;
  }
  const Complex eta = -acc;
  return eta / denom;
}

Complex zeta_reflected(Complex s, const PrecisionPolicy& policy) {
  if (s == Complex(0.0, 0.0)) return -0.5;
  // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
  const Complex one_minus = 1.0 - s;
  const Complex factor =
      std::exp(s * kLn2 + (s - 1.0) * std::log(kPi)) * std::sin(0.5 * kPi * s) * gamma(one_minus);
  return factor * zeta_alternating(one_minus, policy);
}

Complex zeta(Complex s, const PrecisionPolicy& policy) {
  if (s == Complex(1.0, 0.0)) throw Error(ErrorCode::Pole, "zeta pole at s = 1");
  if (s.real() > 0.0) return zeta_alternating(s, policy);
  // trivial zeros are exact
  if (s.imag() == 0.0 && s.real() < 0.0 && std::fmod(s.real(), 2.0) == 0.0) return 0.0;
  return zeta_reflected(s, policy);
}

double log_power_tail_scaled(int k, double sigma, long first, const PrecisionPolicy& policy) {
  if (k < 0 || k > 3) throw Error(ErrorCode::Unsupported, "log power must be in 0..3");
  if (!(sigma > 1.0)) throw Error(ErrorCode::Domain, "log_power_tail requires sigma > 1");
  if (first < 1) throw Error(ErrorCode::Domain, "log_power_tail requires first >= 1");
  // Euler-Maclaurin needs the start point well beyond sigma / (2 pi); sum
  // directly up to there.
  const long start = std::max<long>({first, 10, static_cast<long>(std::ceil(sigma))});
  const double base = static_cast<double>(first);
  double head = 0.0;
  for (long n = first; n < start; ++n) {
    const double nd = static_cast<double>(n);
    head += std::pow(std::log(nd), k) * std::pow(nd / base, -sigma) / base;
  }
  LogPoly poly(static_cast<std::size_t>(k) + 1, 0.0);
  poly[static_cast<std::size_t>(k)] = 1.0;
  const double nd = static_cast<double>(start);
  const EmCorrection corr =
      euler_maclaurin_correction(poly, sigma, nd, policy.euler_maclaurin_order, base);
  return head + log_power_integral(k, sigma, nd, base) + corr.value;
}

double log_power_tail(int k, double sigma, long first, const PrecisionPolicy& policy) {
  return log_power_tail_scaled(k, sigma, first, policy) *
         std::pow(static_cast<double>(first), 1.0 - sigma);
}

double zeta_deriv(int k, double sigma, const PrecisionPolicy& policy) {
  if (k < 0 || k > 2) throw Error(ErrorCode::Unsupported, "zeta_deriv supports k in {0,1,2}");
  if (!(sigma > 1.0)) throw Error(ErrorCode::Domain, "zeta_deriv requires sigma > 1");
  if (k == 0) return zeta(Complex(sigma, 0.0), policy).real();
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  // n = 1 contributes log(1)^k = 0
  return sign * log_power_tail(k, sigma, 2, policy);
}

namespace {

StieltjesEntry compute_stieltjes(int n) {
  // gamma_n = sum_{k<N} log^n k / k - log^{n+1} N / (n+1)
  //           + f(N)/2 - sum_j B_2j/(2j)! f^{(2j-1)}(N),   f(t) = log^n t / t
  constexpr long kN = 40;
  double head = 0.0;
  double comp = 0.0;  // Neumaier compensation
  double magnitude = 0.0;
  for (long k = 2; k < kN; ++k) {
    const double kd = static_cast<double>(k);
    const double v = std::pow(std::log(kd), n) / kd;
    const double t = head + v;
    comp += (std::abs(head) >= std::abs(v)) ? (head - t) + v : (v - t) + head;
    head = t;
    magnitude += std::abs(v);
  }
  if (n == 0) {
    head += 1.0;  // k = 1 term
    magnitude += 1.0;
  }
  head += comp;
  const double nd = static_cast<double>(kN);
  const double integral = std::pow(std::log(nd), n + 1) / (n + 1);
  LogPoly poly(static_cast<std::size_t>(n) + 1, 0.0);
  poly[static_cast<std::size_t>(n)] = 1.0;
  const EmCorrection corr = euler_maclaurin_correction(poly, 1.0, nd, 15);
  const double value = head - integral + corr.value;
  const double bound = corr.last_term + 8.0 * kEps * (magnitude + integral);
  return {value, bound};
}

}  // namespace

const StieltjesTable& stieltjes_table() {
  static const StieltjesTable table = [] {
    StieltjesTable t{};
    for (int n = 0; n < 3; ++n) t.entries[static_cast<std::size_t>(n)] = compute_stieltjes(n);
    return t;
  }();
  return table;
}

double stieltjes(int n) {
  if (n < 0 || n > 2) throw Error(ErrorCode::Unsupported, "stieltjes supports n in {0,1,2}");
  return stieltjes_table()[n];
}

double xi_critical(double t) {
  if (!(std::abs(t) <= 60.0)) throw Error(ErrorCode::Domain, "xi_critical requires |t| <= 60");
  const Complex s(0.5, t);
  const Complex prefactor = 0.5 * s * (s - 1.0) * std::exp(-0.5 * s * std::log(kPi)) * gamma(0.5 * s);
  const Complex z = zeta(s);
  const Complex xi = prefactor * z;
  const double scale = std::abs(prefactor) * std::max(1.0, std::abs(z));
  if (std::abs(xi.imag()) > 1e-10 * scale)
    throw Error(ErrorCode::Accuracy, "Xi imaginary residue exceeds budget at t = " + std::to_string(t));
  return xi.real();
}

}  // namespace mz::specfn
