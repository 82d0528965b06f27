#include "mz/mellin.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <unordered_map>

#include "mz/error.hpp"
#include "mz/parallel.hpp"
#include "mz/specialfn.hpp"

namespace mz::mellin {
namespace {

constexpr double kPi = specfn::kPi;
constexpr int kTailSamples = 32;

using lambda::LambdaKind;
using lambda::PolySource;
using lambda::SeriesSign;

// int_{w0}^inf e^{-a w} w^q dw,  Re a > 0
Complex exp_moment(Complex a, int q, double w0) {
  Complex acc = 0.0;
  double falling = 1.0;  // q!/(q-j)!
  Complex apow = a;
  for (int j = 0; j <= q; ++j) {
    acc += falling * std::pow(w0, q - j) / apow;
    falling *= static_cast<double>(q - j);
    apow *= a;
  }
  return std::exp(-a * w0) * acc;
}

struct TailModel {
  Eigen::VectorXd coef;
  double ref = 1.0;
  int lead = 1;
  int order = 3;
  double max_residual = 0.0;

  static constexpr int kLogPowers = 3;

  double operator()(double t) const {
    const double l = std::log(t / ref);
    double acc = 0.0;
    int idx = 0;
    for (int p = lead; p < lead + order; ++p) {
      const double pw = std::pow(ref / t, p);
      double lq = 1.0;
      for (int q = 0; q < kLogPowers; ++q, ++idx) {
        acc += coef[idx] * pw * lq;
        lq *= l;
      }
    }
    return acc;
  }

  // int_T^inf t^{s-1} model(t) dt
  Complex integral_from(double upper, Complex s) const {
    const double w0 = std::log(upper / ref);
    Complex acc = 0.0;
    int idx = 0;
    for (int p = lead; p < lead + order; ++p)
      for (int q = 0; q < kLogPowers; ++q, ++idx)
        acc += coef[idx] * std::exp(s * std::log(ref)) * exp_moment(static_cast<double>(p) - s, q, w0);
    return acc;
  }
};

TailModel fit_tail(const RealFunction& f, double lo, double hi, const QuadratureConfig& cfg) {
  TailModel model;
  model.ref = hi;
  model.lead = cfg.tail_lead_power;
  model.order = cfg.tail_order;
  const int cols = model.order * TailModel::kLogPowers;
  Eigen::MatrixXd a(kTailSamples, cols);
  Eigen::VectorXd b(kTailSamples);
  for (int i = 0; i < kTailSamples; ++i) {
    const double t = lo * std::pow(hi / lo, static_cast<double>(i) / (kTailSamples - 1));
    const double l = std::log(t / hi);
    int idx = 0;
    for (int p = model.lead; p < model.lead + model.order; ++p) {
      const double pw = std::pow(hi / t, p);
      double lq = 1.0;
      for (int q = 0; q < TailModel::kLogPowers; ++q, ++idx) {
        a(i, idx) = pw * lq;
        lq *= l;
      }
    }
    b[i] = f(t);
  }
  model.coef = a.colPivHouseholderQr().solve(b);
  model.max_residual = (a * model.coef - b).cwiseAbs().maxCoeff();
  return model;
}

struct TailEstimate {
  Complex value;
  double bound;
  std::size_t evaluations;
};

TailEstimate estimate_tail(const RealFunction& f, Complex s, const QuadratureConfig& cfg) {
  const double upper = cfg.upper;
  const TailModel primary = fit_tail(f, upper / 10.0, upper, cfg);
  const TailModel shifted = fit_tail(f, upper / 20.0, upper / 2.0, cfg);
  const Complex value = primary.integral_from(upper, s);
  const Complex alternate = shifted.integral_from(upper, s);

  double holdout = primary.max_residual;
  for (double k : {2.0, 4.0}) holdout = std::max(holdout, std::abs(f(k * upper) - primary(k * upper)));

  const double lead = cfg.tail_lead_power;
  const double sigma = s.real();
  const double spread = holdout * std::pow(2.0, lead) * std::pow(upper, sigma) / (lead - sigma);
  const double bound = std::abs(value - alternate) + spread;
  if (!std::isfinite(bound) || !std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw Error(ErrorCode::NonConvergence, "tail model produced a non-finite estimate");
  return {value, bound, 2 * kTailSamples + 2};
}

bool is_integer(Complex s) { return s.imag() == 0.0 && s.real() == std::round(s.real()); }

}  // namespace

void StripPoint::validate() const {
  if (!(lo < s.real() && s.real() < hi)) {
    std::ostringstream msg;
    msg << "Re s = " << s.real() << " outside strip (" << lo << ", " << hi << ")";
    throw Error(ErrorCode::StripViolation, msg.str());
  }
}

void QuadratureConfig::validate() const {
  auto in_range = [](double v) { return v >= 1e-14 && v <= 1e-4; };
  if (!in_range(abs_tol) || !in_range(rel_tol))
    throw Error(ErrorCode::Config, "quadrature tolerances must lie in [1e-14, 1e-4]");
  if (!(upper >= 10.0)) throw Error(ErrorCode::Config, "upper truncation T must be >= 10");
  if (tail_order < 1 || tail_order > 4) throw Error(ErrorCode::Config, "tail_order must lie in [1, 4]");
  if (tail_lead_power < 0 || tail_lead_power > 3)
    throw Error(ErrorCode::Config, "tail_lead_power must lie in [0, 3]");
  if (max_subdivisions == 0) throw Error(ErrorCode::Config, "max_subdivisions must be positive");
}

quad::AdaptiveOptions QuadratureConfig::adaptive() const {
  quad::AdaptiveOptions opt;
  opt.abs_tol = abs_tol;
  opt.rel_tol = rel_tol;
  opt.max_subdivisions = max_subdivisions;
  return opt;
}

std::string_view to_string(IdentityId id) noexcept {
  switch (id) {
    case IdentityId::EQ1_1: return "eq1.1";
    case IdentityId::EQ1_2: return "eq1.2";
    case IdentityId::EQ1_3: return "eq1.3";
    case IdentityId::EQ1_4: return "eq1.4";
    case IdentityId::EQ1_5: return "eq1.5";
    case IdentityId::EQ1_6: return "eq1.6";
    case IdentityId::EQ2_1: return "eq2.1";
    case IdentityId::EQ2_2: return "eq2.2";
    case IdentityId::EQ2_3: return "eq2.3";
    case IdentityId::PS1: return "ps1";
    case IdentityId::PS2: return "ps2";
    case IdentityId::INTREP: return "intrep";
  }
  return "unknown";
}

std::optional<IdentityId> parse_identity(std::string_view text) noexcept {
  for (IdentityId id : kAllIdentities)
    if (to_string(id) == text) return id;
  return std::nullopt;
}

bool uses_s_grid(IdentityId id) noexcept {
  switch (id) {
    case IdentityId::EQ1_1:
    case IdentityId::EQ1_2:
    case IdentityId::EQ1_3:
    case IdentityId::EQ1_4:
    case IdentityId::EQ1_5: return true;
    default: return false;
  }
}

IntegralResult mellin_numeric(const RealFunction& f, const StripPoint& point, const QuadratureConfig& cfg) {
  point.validate();
  cfg.validate();
  const Complex s = point.s;
  if (!(cfg.tail_lead_power > s.real()))
    throw Error(ErrorCode::StripViolation, "tail model needs its lead power above Re s");

  const quad::Integrand integrand = [&](double u) -> Complex {
    const Complex w = std::exp(s * u);
    const double t = std::exp(u);
    // below the double range t^s f(t) is far beyond negligible for the
    // log-growth kernels handled here
    if (w == 0.0 || t == 0.0) return 0.0;
    return w * f(t);
  };
  const quad::AdaptiveOptions opt = cfg.adaptive();

  IntegralResult out = quad::integrate_semi_infinite(integrand, 0.0, -1, opt, 5000.0);
  const double log_upper = std::log(cfg.upper);
  quad::AdaptiveOptions mid = opt;
  mid.initial_panels = static_cast<std::size_t>(std::ceil(log_upper));
  out += quad::integrate(integrand, 0.0, log_upper, mid);

  const TailEstimate tail = estimate_tail(f, s, cfg);
  out.value += tail.value;
  out.tail_bound += tail.bound;
  out.error += tail.bound;
  out.evaluations += tail.evaluations;
  if (tail.bound > cfg.tail_reject * std::abs(out.value)) {
    std::ostringstream msg;
    msg << "tail beyond T = " << cfg.upper << " is not resolved by the decay model (bound " << tail.bound
        << " against |value| " << std::abs(out.value) << ")";
    throw Error(ErrorCode::NonConvergence, msg.str());
  }
  return out;
}

Complex rhs_closed_form(IdentityId id, const StripPoint& point) {
  const Complex s = point.s;
  if (is_integer(s)) throw Error(ErrorCode::Pole, "sin(pi s) vanishes at integer s");
  const Complex sn = std::sin(kPi * s);
  switch (id) {
    case IdentityId::EQ1_1: return -kPi * specfn::zeta(1.0 - s) / sn;
    case IdentityId::EQ1_2: return kPi * kPi * specfn::zeta(1.0 - s) / (sn * sn);
    case IdentityId::EQ1_3: return 2.0 * kPi * kPi * kPi * specfn::zeta(1.0 - s) / (sn * sn * sn);
    case IdentityId::EQ1_4: return kPi * kPi / (sn * sn);
    case IdentityId::EQ1_5: return 2.0 * kPi * kPi * kPi / (sn * sn * sn);
    default:
      throw Error(ErrorCode::NoClosedForm, std::string(to_string(id)) + " has no closed-form transform");
  }
}

Complex residue_oracle(const ComplexFunction& F, Complex s0, double r, int points) {
  if (!(r > 0.0 && r <= 0.3)) throw Error(ErrorCode::Domain, "contour radius must lie in (0, 0.3]");
  if (points < 32) throw Error(ErrorCode::Domain, "residue oracle needs at least 32 nodes");
  auto trapezoid = [&](double radius) {
    Complex acc = 0.0;
    for (int k = 0; k < points; ++k) {
      const double theta = 2.0 * kPi * (k + 0.5) / points;
      const Complex w = std::polar(radius, theta);
      acc += F(s0 + w) * w;
    }
    return acc / static_cast<double>(points);
  };
  const Complex full = trapezoid(r);
  const Complex half = trapezoid(0.5 * r);
  if (std::abs(full - half) > 1e-8 * std::max(1.0, std::abs(full))) {
    std::ostringstream msg;
    msg << "residue depends on the contour radius (" << full << " vs " << half << ")";
    throw Error(ErrorCode::NonAnalytic, msg.str());
  }
  return full;
}

lambda::SubtractionPolynomial fit_residue_polynomial(LambdaKind kind) {
  constexpr int kSamples = 6;
  constexpr double kRadius = 0.25;
  constexpr int kNodes = 64;
  Eigen::MatrixXd a(kSamples, 4);
  Eigen::VectorXd b(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    const double x = 0.5 * std::pow(40.0, static_cast<double>(i) / (kSamples - 1));
    const double lx = std::log(x);
    const ComplexFunction F = [kind, lx](Complex s) -> Complex {
      const Complex csc = 1.0 / std::sin(kPi * s);
      const Complex weight = std::exp((s - 1.0) * lx) * specfn::zeta(s);
      if (kind == LambdaKind::Lambda1) return kPi * kPi * csc * csc * weight;
      return 2.0 * kPi * kPi * kPi * csc * csc * csc * weight;
    };
    const Complex res = residue_oracle(F, 1.0, kRadius, kNodes);
    for (int j = 0; j < 4; ++j) a(i, j) = std::pow(lx, j);
    b[i] = res.real();
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  const double residual = (a * c - b).cwiseAbs().maxCoeff();
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "cubic-in-log fit of the residues left residual " << residual;
    throw Error(ErrorCode::FitResidual, msg.str());
  }
  lambda::SubtractionPolynomial poly;
  poly.c = {c[0], c[1], c[2], c[3]};
  poly.provenance = PolySource::OracleResolved;
  poly.fit_residual = residual;
  return poly;
}

IntegralResult inverse_mellin_line(IdentityId id, double x, double c, const QuadratureConfig& cfg) {
  if (id != IdentityId::EQ1_6) throw Error(ErrorCode::NoClosedForm, "only eq1.6 has a line-integral form");
  if (!(c > -1.0 && c < 0.0)) throw Error(ErrorCode::StripViolation, "line abscissa must lie in (-1, 0)");
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::Domain, "line integral needs x > 0");

  // |zeta(1-s)| <= zeta(1-c) on the line and |sin(pi s)|^2 >= sinh^2(pi y); the
  // integrand (over 2 pi) beyond H integrates to below ~ bound / sinh^2(pi H).
  const double lx = std::log(x);
  const double zmax = specfn::zeta(Complex(1.0 - c, 0.0)).real();
  const double envelope = kPi * zmax * std::exp(-c * lx);
  const double height = std::asinh(std::sqrt(envelope / cfg.abs_tol)) / kPi;
  if (!(height <= 60.0)) throw Error(ErrorCode::NonConvergence, "truncation height for the line integral exceeds 60");
  const double truncation = envelope / std::pow(std::sinh(kPi * height), 2);

  const quad::Integrand integrand = [&](double y) -> Complex {
    const Complex s(c, y);
    const Complex sn = std::sin(kPi * s);
    return kPi * kPi * specfn::zeta(1.0 - s) / (sn * sn) * std::exp(-s * lx) / (2.0 * kPi);
  };
  quad::AdaptiveOptions opt = cfg.adaptive();
  const double oscillations = std::abs(lx) * height / kPi;
  opt.initial_panels = static_cast<std::size_t>(std::ceil(2.0 * height + oscillations));
  IntegralResult out = quad::integrate(integrand, -height, height, opt);
  if (std::abs(out.value.imag()) > 1e-9 * std::max(1.0, std::abs(out.value.real())))
    throw Error(ErrorCode::Accuracy, "line integral has a non-negligible imaginary part");
  out.value = Complex(out.value.real(), 0.0);
  out.tail_bound = truncation;
  out.error += truncation;
  return out;
}

// ---------------------------------------------------------------------------
// verify_identity

namespace {

// Memoises a raw series over x; shared by all sign/convention variants of
// one verification call.
class SeriesCache {
 public:
  SeriesCache(LambdaKind kind, lambda::LambdaConfig cfg) : kind_(kind), cfg_(cfg) {}

  double operator()(double x) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = values_.find(x); it != values_.end()) return it->second;
    }
    const double v = kind_ == LambdaKind::Lambda1 ? lambda::lambda1_raw_sum(x, cfg_).value
                                                  : lambda::lambda2_raw_sum(x, cfg_).value;
    std::lock_guard lock(mutex_);
    values_.emplace(x, v);
    return v;
  }

 private:
  LambdaKind kind_;
  lambda::LambdaConfig cfg_;
  std::mutex mutex_;
  std::unordered_map<double, double> values_;
};

struct Variant {
  PolySource source;
  SeriesSign sign;
};

std::vector<PolySource> conventions(ConventionMode mode) {
  switch (mode) {
    case ConventionMode::Paper: return {PolySource::PaperPrinted};
    case ConventionMode::Oracle: return {PolySource::OracleResolved};
    case ConventionMode::Both: return {PolySource::PaperPrinted, PolySource::OracleResolved};
  }
  return {};
}

bool convention_dependent(IdentityId id) {
  return id == IdentityId::EQ1_2 || id == IdentityId::EQ1_3 || id == IdentityId::INTREP;
}

std::vector<SeriesSign> sign_candidates(IdentityId id) {
  switch (id) {
    case IdentityId::EQ1_2:
    case IdentityId::EQ1_3:
    case IdentityId::PS2:
    case IdentityId::INTREP: return {SeriesSign::Plus, SeriesSign::Minus};
    default: return {SeriesSign::Plus};
  }
}

struct Sides {
  double lhs, rhs, lhs_err, rhs_err;
};

}  // namespace

std::vector<VerificationRecord> verify_identity(IdentityId id, std::span<const double> grid, double tol,
                                                const VerifyOptions& opt) {
  if (id == IdentityId::EQ2_1 || id == IdentityId::EQ2_2 || id == IdentityId::EQ2_3)
    throw Error(ErrorCode::Unsupported, "Theorem-2 identities are verified by mz::xi::verify_theorem2");

  SeriesCache s1(LambdaKind::Lambda1, opt.lambda);
  SeriesCache s2(LambdaKind::Lambda2, opt.lambda);

  auto evaluate = [&](const Variant& v, double point) -> Sides {
    const double sg = lambda::factor(v.sign);
    switch (id) {
      case IdentityId::EQ1_1:
      case IdentityId::EQ1_4:
      case IdentityId::EQ1_5: {
        const StripPoint sp{Complex(point, 0.0), 0.0, 1.0};
        RealFunction kernel;
        if (id == IdentityId::EQ1_1) {
          kernel = [](double t) { return specfn::digamma_excess(t); };
        } else if (id == IdentityId::EQ1_4) {
          kernel = [](double t) {
            const double d = t - 1.0;
            if (std::abs(d) < 1e-4) return 1.0 - d * (0.5 - d * (1.0 / 3.0 - 0.25 * d));
            return std::log(t) / d;
          };
        } else {
          kernel = [](double t) {
            const double l = std::log(t);
            return (kPi * kPi + l * l) / (t + 1.0);
          };
        }
        const IntegralResult m = mellin_numeric(kernel, sp, opt.kernel_quad);
        return {m.value.real(), rhs_closed_form(id, sp).real(), m.error, 0.0};
      }
      case IdentityId::EQ1_2:
      case IdentityId::EQ1_3: {
        const StripPoint sp{Complex(point, 0.0), 0.0, 1.0};
        const LambdaKind kind = id == IdentityId::EQ1_2 ? LambdaKind::Lambda1 : LambdaKind::Lambda2;
        const lambda::SubtractionPolynomial poly = lambda::subtraction_poly(kind, v.source, opt.fits);
        SeriesCache& cache = kind == LambdaKind::Lambda1 ? s1 : s2;
        const RealFunction f = [&](double t) { return sg * cache(t) - poly(std::log(t)); };
        const IntegralResult m = mellin_numeric(f, sp, opt.lambda_quad);
        return {m.value.real(), rhs_closed_form(id, sp).real(), m.error, 0.0};
      }
      case IdentityId::EQ1_6: {
        const lambda::SeriesValue raw = lambda::lambda1_raw_sum(point, opt.lambda);
        const IntegralResult line = inverse_mellin_line(id, point, opt.line_abscissa, opt.line_quad);
        return {raw.value, line.value.real(), raw.tail_error, line.error};
      }
      case IdentityId::PS1:
      case IdentityId::PS2: {
        const bool first = id == IdentityId::PS1;
        const lambda::PowerSeriesValue ps =
            lambda::power_series(first ? lambda::PowerSeriesKind::Lambda1Sum : lambda::PowerSeriesKind::Lambda2Sum,
                                 point, opt.power_series_order, SeriesSign::Plus);
        const lambda::SeriesValue raw =
            first ? lambda::lambda1_raw_sum(point, opt.lambda) : lambda::lambda2_raw_sum(point, opt.lambda);
        return {ps.value, sg * raw.value, ps.remainder_bound, raw.tail_error};
      }
      case IdentityId::INTREP: {
        const lambda::SubtractionPolynomial poly =
            lambda::subtraction_poly(LambdaKind::Lambda1, v.source, opt.fits);
        const IntegralResult rep = lambda::lambda1_integral_rep(point, opt.intrep_quad);
        const double lam = lambda::lambda1(point, poly, SeriesSign::Plus, opt.lambda);
        return {rep.value.real(), sg * lam, rep.error, 0.0};
      }
      default: break;
    }
    throw Error(ErrorCode::Unsupported, "identity not handled here");
  };

  std::vector<VerificationRecord> out;
  const std::vector<PolySource> sources =
      convention_dependent(id) ? conventions(opt.mode) : std::vector<PolySource>{PolySource::PaperPrinted};
  const std::vector<SeriesSign> signs = sign_candidates(id);

  for (PolySource source : sources) {
    std::vector<Variant> variants;
    for (SeriesSign sg : signs) variants.push_back({source, sg});
    std::vector<std::vector<VerificationRecord>> blocks(variants.size(),
                                                        std::vector<VerificationRecord>(grid.size()));
    const std::size_t jobs = variants.size() * grid.size();
    parallel_for(jobs, opt.workers, [&](std::size_t job) {
      const std::size_t vi = job / grid.size();
      const std::size_t pi = job % grid.size();
      VerificationRecord& r = blocks[vi][pi];
      r.id = std::string(to_string(id));
      r.point_value = grid[pi];
      r.point = format_point(grid[pi]);
      r.tol = tol;
      r.abs_tol = opt.abs_tol;
      r.convention = std::string(lambda::to_string(variants[vi].source));
      r.sigma = static_cast<int>(variants[vi].sign);
      try {
        const Sides sides = evaluate(variants[vi], grid[pi]);
        r.lhs = sides.lhs;
        r.rhs = sides.rhs;
        r.lhs_quad_err = sides.lhs_err;
        r.rhs_quad_err = sides.rhs_err;
        score(r);
      } catch (const std::exception& e) {
        r.error = e.what();
        r.pass = false;
      }
    });

    // One global sign per convention.
    const std::size_t best = best_block(blocks);
    for (auto& r : blocks[best]) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mz::mellin
