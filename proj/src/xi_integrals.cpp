#include "mz/xi_integrals.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "mz/error.hpp"
#include "mz/parallel.hpp"
#include "mz/specialfn.hpp"

namespace mz::xi {
namespace {

constexpr double kPi = specfn::kPi;
constexpr double kRhsErrorCap = 1e-8;
constexpr double kMidWidth = 6.0;

// 1/cosh(pi t) without overflow
double sech_pi(double t) {
  const double e = std::exp(-kPi * std::abs(t));
  return 2.0 * e / (1.0 + e * e);
}

void check_k(int k) {
  if (k < 1 || k > 3) throw Error(ErrorCode::Domain, "cosh power k must be 1, 2 or 3");
}

}  // namespace

double XiIntegralSpec::effective_truncation() const {
  if (truncation > 0.0) return truncation;
  return k == 1 ? 30.0 : 20.0;
}

void XiIntegralSpec::validate() const {
  check_k(k);
  if (!(std::abs(x) <= kMaxX)) throw Error(ErrorCode::Domain, "x must satisfy |x| <= 5");
  const double t = effective_truncation();
  if (t > 60.0) throw Error(ErrorCode::Domain, "truncation beyond t = 60 is not supported");
  if (!(std::exp(-(k + 0.25) * kPi * t) < quad.abs_tol))
    throw Error(ErrorCode::Domain, "truncation too short for the requested tolerance");
}

quad::IntegralResult lhs_xi_integral(const XiIntegralSpec& spec) {
  spec.validate();
  const int k = spec.k;
  const double x = spec.x;
  const quad::Integrand f = [k, x](double t) -> quad::Complex {
    const double damp = std::pow(sech_pi(t), k);
    if (damp == 0.0) return 0.0;
    return specfn::xi_critical(t) / (0.25 + t * t) * std::cos(x * t) * damp;
  };
  const double upper = spec.effective_truncation();
  quad::AdaptiveOptions opt = spec.quad;
  opt.initial_panels = std::max<std::size_t>(opt.initial_panels, static_cast<std::size_t>(std::ceil(upper)));
  quad::IntegralResult out = quad::integrate(f, 0.0, upper, opt);
  if (k == 3) {
    out.value *= 2.0;
    out.error *= 2.0;
  }
  if (out.error > 1e-9) {
    std::ostringstream msg;
    msg << "left-hand side error estimate " << out.error << " exceeds 1e-9";
    throw Error(ErrorCode::Accuracy, msg.str());
  }
  out.value = quad::Complex(out.value.real(), 0.0);
  return out;
}

quad::IntegralResult rhs_weighted_integral(int k, double x, const WeightConvention& conv, const RhsOptions& opt) {
  check_k(k);
  if (!(x >= 0.0 && x <= kMaxX)) throw Error(ErrorCode::Domain, "x must lie in [0, 5]");
  const double sg = lambda::factor(conv.sign);
  const double scale = std::exp(2.0 * x);

  auto weight = [&](double t) {
    switch (k) {
      case 1: return specfn::digamma_excess(t);
      case 2: return sg * lambda::lambda1_raw_sum(t, opt.lambda).value - conv.poly(std::log(t));
      default: return sg * lambda::lambda2_raw_sum(t, opt.lambda).value - conv.poly(std::log(t));
    }
  };
  const quad::Integrand f = [&](double u) -> quad::Complex {
    const double t = std::exp(u);
    return t * weight(t) * std::exp(-kPi * t * t * scale);
  };

  const double u_max = 0.5 * std::log(opt.cutoff / kPi) - x;
  const double u_mid = u_max - kMidWidth;
  quad::AdaptiveOptions mid = opt.quad;
  mid.initial_panels = static_cast<std::size_t>(2 * kMidWidth);
  quad::IntegralResult out = quad::integrate(f, u_mid, u_max, mid);
  out += quad::integrate_semi_infinite(f, u_mid, -1, opt.quad);

  const double amp = std::exp(0.5 * x);
  out.value = quad::Complex(amp * out.value.real(), 0.0);
  out.error *= amp;
  // Gaussian tail past the cut, e^{-c}/(2 a t_max) with a = pi e^{2x}; the
  // factor 4 covers the slow growth of the weight beyond t_max
  const double t_max = std::exp(u_max);
  const double trunc = amp * std::abs(weight(t_max)) * std::exp(-opt.cutoff) / (2.0 * kPi * t_max * scale) * 4.0;
  out.tail_bound = trunc;
  out.error += trunc;
  if (out.error > kRhsErrorCap) {
    std::ostringstream msg;
    msg << "right-hand side error estimate " << out.error << " exceeds 1e-8";
    throw Error(ErrorCode::Accuracy, msg.str());
  }
  return out;
}

std::vector<VerificationRecord> verify_theorem2(int k, std::span<const double> grid, double tol,
                                                const Theorem2Options& opt) {
  check_k(k);
  const std::string id = "eq2." + std::to_string(k);

  struct Side {
    double value = 0.0;
    double error = 0.0;
    std::optional<std::string> failure;
  };
  std::vector<Side> lhs(grid.size());
  parallel_for(grid.size(), opt.workers, [&](std::size_t i) {
    try {
      XiIntegralSpec spec;
      spec.k = k;
      spec.x = grid[i];
      spec.quad = opt.lhs_quad;
      const quad::IntegralResult r = lhs_xi_integral(spec);
      lhs[i] = {r.value.real(), r.error, std::nullopt};
    } catch (const std::exception& e) {
      lhs[i].failure = e.what();
    }
  });

  struct Variant {
    lambda::PolySource source;
    lambda::SeriesSign sign;
  };
  std::vector<std::vector<Variant>> groups;
  if (k == 1) {
    groups.push_back({{lambda::PolySource::PaperPrinted, lambda::SeriesSign::Plus}});
  } else {
    std::vector<lambda::PolySource> sources;
    if (opt.mode != mellin::ConventionMode::Oracle) sources.push_back(lambda::PolySource::PaperPrinted);
    if (opt.mode != mellin::ConventionMode::Paper) sources.push_back(lambda::PolySource::OracleResolved);
    for (auto src : sources) {
      if (opt.sign) groups.push_back({{src, *opt.sign}});
      else groups.push_back({{src, lambda::SeriesSign::Plus}, {src, lambda::SeriesSign::Minus}});
    }
  }
  const lambda::LambdaKind kind = k == 3 ? lambda::LambdaKind::Lambda2 : lambda::LambdaKind::Lambda1;

  std::vector<VerificationRecord> out;
  for (const auto& variants : groups) {
    std::vector<std::vector<VerificationRecord>> blocks(variants.size(),
                                                        std::vector<VerificationRecord>(grid.size()));
    parallel_for(variants.size() * grid.size(), opt.workers, [&](std::size_t job) {
      const std::size_t vi = job / grid.size();
      const std::size_t pi = job % grid.size();
      const Variant& v = variants[vi];
      VerificationRecord& r = blocks[vi][pi];
      r.id = id;
      r.point_value = grid[pi];
      r.point = format_point(grid[pi]);
      r.tol = tol;
      r.abs_tol = opt.abs_tol;
      r.convention = std::string(lambda::to_string(v.source));
      r.sigma = static_cast<int>(v.sign);
      try {
        if (lhs[pi].failure) throw std::runtime_error(*lhs[pi].failure);
        WeightConvention conv;
        if (k != 1) {
          conv.poly = lambda::subtraction_poly(kind, v.source, opt.fits);
          conv.sign = v.sign;
        }
        const quad::IntegralResult rhs = rhs_weighted_integral(k, grid[pi], conv, opt.rhs);
        r.lhs = lhs[pi].value;
        r.lhs_quad_err = lhs[pi].error;
        r.rhs = rhs.value.real();
        r.rhs_quad_err = rhs.error;
        score(r);
      } catch (const std::exception& e) {
        r.error = e.what();
        r.pass = false;
      }
    });
    for (auto& r : blocks[best_block(blocks)]) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mz::xi
