// mzcheck: verify Mellin-transform and Xi-integral identities for zeta.
//
//   mzcheck verify --id eq1.4 --s 0.2:0.8:5 --tol 1e-6
//   mzcheck eval zeta --s 0.5
//   mzcheck resolve
//   mzcheck report --convention both --out report.json

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "mz/error.hpp"
#include "mz/harness.hpp"

namespace {

using namespace mz;
using namespace mz::harness;

struct SuiteFlags {
  std::string id = "all";
  std::string s_grid, x_grid, convention, format, out, config;
  double tol = 0.0;
  unsigned workers = 0;
};

void add_suite_flags(CLI::App* cmd, SuiteFlags& f) {
  cmd->add_option("--id", f.id, "identity: eq1.1..eq1.6, eq2.1..eq2.3, ps1, ps2, intrep or all");
  cmd->add_option("--s", f.s_grid, "s grid lo:hi:n (inclusive) or a single value");
  cmd->add_option("--x", f.x_grid, "x grid lo:hi:n (inclusive) or a single value");
  cmd->add_option("--tol", f.tol, "relative tolerance (default: per identity)");
  cmd->add_option("--convention", f.convention, "paper, oracle or both");
  cmd->add_option("--format", f.format, "json or csv");
  cmd->add_option("--out", f.out, "output path (default: stdout)");
  cmd->add_option("--workers", f.workers, "worker threads");
  cmd->add_option("--config", f.config, "JSON file mirroring the run configuration");
}

RunConfig build_config(const SuiteFlags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (f.id != "all" || cfg.ids.empty()) {
    cfg.ids.clear();
    if (f.id != "all") {
      auto id = mellin::parse_identity(f.id);
      if (!id) throw Error(ErrorCode::Config, "unknown identity '" + f.id + "'");
      cfg.ids.push_back(*id);
    }
  }
  if (!f.s_grid.empty()) cfg.s_grid = parse_grid(f.s_grid);
  if (!f.x_grid.empty()) cfg.x_grid = parse_grid(f.x_grid);
  if (f.tol != 0.0) cfg.tol = f.tol;
  if (!f.convention.empty()) cfg.mode = parse_convention(f.convention);
  if (!f.format.empty()) cfg.format = parse_format(f.format);
  if (!f.out.empty()) cfg.out = f.out;
  if (f.workers != 0) cfg.workers = f.workers;
  return cfg;
}

int run(const RunConfig& cfg) {
  const SuiteResult result = run_suite(cfg);
  emit(render(result, cfg.format), cfg.out);
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Mellin-transform identities for the Riemann zeta function"};
  app.require_subcommand(1);

  SuiteFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "evaluate both sides of identities on grids");
  add_suite_flags(verify, verify_flags);

  SuiteFlags report_flags;
  auto* report = app.add_subcommand("report", "full suite plus convention resolution");
  add_suite_flags(report, report_flags);

  std::string target;
  EvalRequest eval_req;
  std::string eval_convention = "oracle";
  auto* eval = app.add_subcommand("eval", "print a single function value");
  eval->add_option("target", target, "lambda1, lambda2, xi, zeta, digamma or stieltjes")->required();
  eval->add_option("--s", eval_req.s, "real part of s (zeta)");
  eval->add_option("--t", eval_req.t, "imaginary part of s (zeta) or argument of Xi");
  eval->add_option("--x", eval_req.x, "argument of lambda1, lambda2, digamma");
  eval->add_option("--n", eval_req.n, "index of the Stieltjes constant");
  eval->add_option("--convention", eval_convention, "paper or oracle");
  eval->add_option("--sigma", eval_req.sigma, "sign of the raw series in lambda1/lambda2");

  std::string resolve_format = "json";
  std::string resolve_out;
  auto* resolve = app.add_subcommand("resolve", "fit subtraction polynomials and resolve series signs");
  resolve->add_option("--format", resolve_format, "json");
  resolve->add_option("--out", resolve_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return run(build_config(verify_flags));
    if (*report) {
      RunConfig cfg = build_config(report_flags);
      cfg.include_resolution = true;
      return run(cfg);
    }
    if (*eval) {
      auto t = parse_eval_target(target);
      if (!t) throw Error(ErrorCode::Config, "unknown eval target '" + target + "'");
      eval_req.target = *t;
      if (eval_convention == "paper") eval_req.convention = lambda::PolySource::PaperPrinted;
      else if (eval_convention != "oracle") throw Error(ErrorCode::Config, "eval convention must be paper or oracle");
      std::cout << format_eval(eval_value(eval_req));
      return kExitPass;
    }
    if (*resolve) {
      if (resolve_format != "json") throw Error(ErrorCode::Config, "resolve only emits json");
      Resolution res;
      try {
        res = fit_conventions();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::FitResidual) throw;
        std::cerr << "mzcheck: " << e.what() << '\n';
        return kExitFail;
      }
      RunConfig cfg;
      resolve_signs(res, cfg);
      emit(resolution_json(res).dump(2) + "\n", resolve_out);
      return kExitPass;
    }
  } catch (const Error& e) {
    std::cerr << "mzcheck: " << e.what() << '\n';
    const bool usage = e.code() == ErrorCode::Config || e.code() == ErrorCode::Domain ||
                       e.code() == ErrorCode::StripViolation || e.code() == ErrorCode::Pole;
    return usage ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "mzcheck: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
