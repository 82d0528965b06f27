#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mz {

inline constexpr double kRelErrorFloor = 1e-300;

/// One evaluated grid point of one identity.  Errored points keep their
/// identity, point, tolerance and convention, carry NaN numbers and
/// pass == false, and put the failure text in `error`.
struct VerificationRecord {
  std::string id;
  std::string point;        // 17 significant digits
  double point_value = 0.0; // for ordering
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  double abs_err = std::numeric_limits<double>::quiet_NaN();
  double rel_err = std::numeric_limits<double>::quiet_NaN();
  double tol = 0.0;
  double abs_tol = 0.0;
  bool pass = false;
  std::string convention = "paper-printed";
  int sigma = 1;
  double lhs_quad_err = 0.0;
  double rhs_quad_err = 0.0;
  std::optional<std::string> error;
};

inline std::string format_point(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Fills the error fields and the pass flag:
/// rel_err = |lhs - rhs| / max(|rhs|, 1e-300), pass = rel_err <= tol || abs_err <= abs_tol.
inline void score(VerificationRecord& r) {
  r.abs_err = std::abs(r.lhs - r.rhs);
  r.rel_err = r.abs_err / std::max(std::abs(r.rhs), kRelErrorFloor);
  r.pass = (r.rel_err <= r.tol) || (r.abs_err <= r.abs_tol);
}

/// Index of the best of several candidate record blocks evaluated on the
/// same grid: most passing records first, then the smallest worst relative
/// error (errored records count as infinite).
inline std::size_t best_block(const std::vector<std::vector<VerificationRecord>>& blocks) {
  auto rank = [](const std::vector<VerificationRecord>& block) {
    std::size_t passes = 0;
    double worst = 0.0;
    for (const auto& r : block) {
      passes += r.pass ? 1 : 0;
      worst = std::max(worst, r.error ? std::numeric_limits<double>::infinity() : r.rel_err);
    }
    return std::pair{passes, worst};
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    const auto [p_best, w_best] = rank(blocks[best]);
    const auto [p_this, w_this] = rank(blocks[i]);
    if (p_this > p_best || (p_this == p_best && w_this < w_best)) best = i;
  }
  return best;
}

}  // namespace mz
