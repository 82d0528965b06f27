#pragma once

// Run configuration, suite execution and report emission behind the
// mzcheck command-line tool.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mz/lambda_series.hpp"
#include "mz/mellin.hpp"
#include "mz/verification.hpp"
#include "mz/xi_integrals.hpp"

namespace mz::harness {

using mellin::ConventionMode;
using mellin::IdentityId;

enum class OutputFormat { Json, Csv };

/// Exit codes of every entry point.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Inclusive linear grid "lo:hi:n"; a bare number is a one-point grid.
std::vector<double> parse_grid(const std::string& text);

ConventionMode parse_convention(const std::string& text);
std::string_view to_string(ConventionMode mode) noexcept;
OutputFormat parse_format(const std::string& text);

struct RunConfig {
  std::vector<IdentityId> ids;                // empty: every identity
  std::optional<std::vector<double>> s_grid;  // overrides the per-identity default
  std::optional<std::vector<double>> x_grid;
  std::optional<double> tol;                  // overrides the per-identity default
  lambda::LambdaConfig lambda{};
  ConventionMode mode = ConventionMode::Oracle;
  OutputFormat format = OutputFormat::Json;
  std::string out;                            // empty: standard output
  unsigned workers = 1;
  bool include_resolution = false;            // report subcommand

  /// Throws Error(Config) with a user-facing message, e.g.
  /// "s outside critical strip".
  void validate() const;
  std::vector<IdentityId> selected() const;
};

/// Reads a JSON object mirroring RunConfig.  Unknown keys are rejected.
RunConfig load_config(const std::string& path);
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);

std::vector<double> default_grid(IdentityId id);
double default_tolerance(IdentityId id);

struct CoefficientDelta {
  std::array<double, 4> paper{};
  std::array<double, 4> oracle{};
  std::array<double, 4> delta{};  // oracle - paper
  double fit_residual = 0.0;
};

struct Resolution {
  lambda::OracleFits fits;
  CoefficientDelta lambda1;
  CoefficientDelta lambda2;
  std::map<std::string, int> signs;  // eq1.3, ps2, eq2.3, intrep
  std::map<std::string, bool> paper_printed_pass;  // eq1.2, eq1.3 under printed brackets
};

/// Fits the oracle polynomials and builds the delta table.
Resolution fit_conventions();

/// Completes `res` with the resolved signs and the printed-bracket
/// verdicts, reusing records from `existing` where they cover an
/// identity/convention pair and evaluating the default grid otherwise.
void resolve_signs(Resolution& res, const RunConfig& cfg, const std::vector<VerificationRecord>& existing = {});

nlohmann::json resolution_json(const Resolution& res);

struct SuiteResult {
  std::vector<VerificationRecord> records;
  nlohmann::json meta;
  int exit_code = kExitPass;
};

/// Runs every selected identity.  Records are ordered by identity,
/// convention and point; the outcome is independent of cfg.workers.
SuiteResult run_suite(const RunConfig& cfg);

/// Exit code implied by a record set: 0 when all pass (or the set is
/// empty), 1 otherwise.
int exit_code_for(const std::vector<VerificationRecord>& records);

std::string render_json(const SuiteResult& result);
std::string render_csv(const SuiteResult& result);
std::string render(const SuiteResult& result, OutputFormat format);

/// Writes to cfg.out, or standard output when empty.
void emit(const std::string& text, const std::string& path);

enum class EvalTarget { Lambda1, Lambda2, Xi, Zeta, Digamma, Stieltjes };

std::optional<EvalTarget> parse_eval_target(const std::string& text);

struct EvalRequest {
  EvalTarget target = EvalTarget::Zeta;
  double s = 0.5;  // zeta: real part
  double t = 0.0;  // zeta: imaginary part; xi: argument
  double x = 1.0;  // lambda1, lambda2, digamma
  int n = 0;       // stieltjes index
  lambda::PolySource convention = lambda::PolySource::OracleResolved;
  int sigma = 1;
  lambda::LambdaConfig lambda{};
};

struct EvalResult {
  double value = 0.0;
  double imag = 0.0;  // zeta only
  double error = 0.0;
  std::string label;
};

/// Throws Error(Domain) for points outside the target's domain.
EvalResult eval_value(const EvalRequest& req);
std::string format_eval(const EvalResult& r);

}  // namespace mz::harness
