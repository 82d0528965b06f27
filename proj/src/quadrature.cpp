#include "mz/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "mz/error.hpp"

namespace mz::quad {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = 2.220446049250313e-16;

struct Panel {
  double a, b;
  Complex value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Complex fc = f(center);
  Complex kron = fc * kWgk[7];
  Complex gauss = fc * kWg[3];
  double resabs = std::abs(fc) * kWgk[7];
  std::array<Complex, 7> f1{}, f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const Complex sum = f1[j] + f2[j];
    kron += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  const Complex mean = 0.5 * kron;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double scale = std::abs(half);
  double err = std::abs((kron - gauss) * half);
  resasc *= scale;
  resabs *= scale;
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(err, 50.0 * kEps * resabs);
  return {a, b, kron * half, err};
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

IntegralResult integrate(const Integrand& f, double a, double b, const AdaptiveOptions& opt) {
  IntegralResult out;
  if (a == b) return out;
  const std::size_t panels = std::max<std::size_t>(1, opt.initial_panels);
  std::priority_queue<Panel> heap;
  Complex total = 0.0;
  double total_err = 0.0;
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == panels) ? b : lo + width;
    Panel p = kronrod15(f, lo, hi);
    out.evaluations += 15;
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }

  std::size_t splits = 0;
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (!finite(total)) throw Error(ErrorCode::NonConvergence, "integrand produced a non-finite value");
    if (splits >= opt.max_subdivisions) {
      std::ostringstream msg;
      msg << "adaptive quadrature on [" << a << ", " << b << "] stopped at error " << total_err
          << " after " << splits << " subdivisions";
      throw Error(ErrorCode::NonConvergence, msg.str());
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval exhausted at machine resolution; accept what we have
      heap.push(worst);
      break;
    }
    const Panel left = kronrod15(f, worst.a, mid);
    const Panel right = kronrod15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }

  // Re-sum for a value free of the running-update drift.
  total = 0.0;
  total_err = 0.0;
  std::vector<Panel> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  for (const Panel& p : all) {
    total += p.value;
    total_err += p.error;
  }
  if (!finite(total)) throw Error(ErrorCode::NonConvergence, "integrand produced a non-finite value");
  out.value = total;
  out.error = total_err;
  return out;
}

IntegralResult integrate_semi_infinite(const Integrand& f, double a, int direction,
                                       const AdaptiveOptions& opt, double max_extent) {
  const double dir = direction >= 0 ? 1.0 : -1.0;
  IntegralResult out;
  double width = 1.0;
  double start = a;
  int quiet = 0;
  AdaptiveOptions panel_opt = opt;
  panel_opt.abs_tol = 0.25 * opt.abs_tol;
  while (quiet < 2) {
    if (std::abs(start - a) > max_extent)
      throw Error(ErrorCode::NonConvergence, "semi-infinite integrand does not decay within range");
    const double end = start + dir * width;
    const IntegralResult piece =
        dir > 0 ? integrate(f, start, end, panel_opt) : integrate(f, end, start, panel_opt);
    out += piece;
    const double edge = std::abs(f(end));
    ++out.evaluations;
    const bool negligible = std::abs(piece.value) + piece.error < 0.1 * opt.abs_tol &&
                            edge * width < 0.1 * opt.abs_tol;
    quiet = negligible ? quiet + 1 : 0;
    start = end;
    width *= 2.0;
    // later panels have shrinking contributions; keep the error budget bounded
    panel_opt.abs_tol *= 0.5;
  }
  return out;
}

}  // namespace mz::quad
