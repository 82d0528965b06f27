#include "mz/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mz/error.hpp"
#include "mz/specialfn.hpp"

namespace mz::harness {
namespace {

using nlohmann::json;

bool is_theorem2(IdentityId id) {
  return id == IdentityId::EQ2_1 || id == IdentityId::EQ2_2 || id == IdentityId::EQ2_3;
}

int theorem2_k(IdentityId id) {
  return id == IdentityId::EQ2_1 ? 1 : id == IdentityId::EQ2_2 ? 2 : 3;
}

std::size_t identity_rank(const std::string& id) {
  for (std::size_t i = 0; i < std::size(mellin::kAllIdentities); ++i)
    if (mellin::to_string(mellin::kAllIdentities[i]) == id) return i;
  return std::size(mellin::kAllIdentities);
}

std::string number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json grid_json(const std::vector<double>& g) {
  json a = json::array();
  for (double v : g) a.push_back(v);
  return a;
}

std::vector<double> grid_from_json(const json& j, const char* key) {
  if (j.is_string()) return parse_grid(j.get<std::string>());
  if (j.is_number()) return {j.get<double>()};
  if (j.is_array()) {
    std::vector<double> g;
    for (const auto& v : j) {
      if (!v.is_number()) throw Error(ErrorCode::Config, std::string(key) + " entries must be numbers");
      g.push_back(v.get<double>());
    }
    return g;
  }
  throw Error(ErrorCode::Config, std::string(key) + " must be \"lo:hi:n\", a number or an array");
}

mellin::VerifyOptions verify_options(const RunConfig& cfg, const lambda::OracleFits& fits) {
  mellin::VerifyOptions opt;
  opt.lambda = cfg.lambda;
  opt.mode = cfg.mode;
  opt.fits = fits;
  opt.workers = cfg.workers;
  opt.power_series_order = cfg.lambda.power_series_order;
  return opt;
}

xi::Theorem2Options theorem2_options(const RunConfig& cfg, const lambda::OracleFits& fits,
                                     std::optional<lambda::SeriesSign> sign) {
  xi::Theorem2Options opt;
  opt.sign = sign;
  opt.rhs.lambda = cfg.lambda;
  opt.mode = cfg.mode;
  opt.fits = fits;
  opt.workers = cfg.workers;
  return opt;
}

// Sign of the raw series in Lambda1 (Lambda2), taken from the transform
// identity eq1.2 (eq1.3) under the oracle-resolved polynomial on its
// default grid.
lambda::SeriesSign series_sign(lambda::LambdaKind kind, const RunConfig& cfg, const lambda::OracleFits& fits) {
  const IdentityId id = kind == lambda::LambdaKind::Lambda1 ? IdentityId::EQ1_2 : IdentityId::EQ1_3;
  RunConfig sub = cfg;
  sub.mode = ConventionMode::Oracle;
  const auto recs = mellin::verify_identity(id, default_grid(id), default_tolerance(id), verify_options(sub, fits));
  return recs.front().sigma < 0 ? lambda::SeriesSign::Minus : lambda::SeriesSign::Plus;
}

std::vector<VerificationRecord> run_identity(IdentityId id, const std::vector<double>& grid, double tol,
                                             const RunConfig& cfg, const lambda::OracleFits& fits) {
  if (is_theorem2(id)) {
    std::optional<lambda::SeriesSign> sign;
    if (id == IdentityId::EQ2_2) sign = series_sign(lambda::LambdaKind::Lambda1, cfg, fits);
    if (id == IdentityId::EQ2_3) sign = series_sign(lambda::LambdaKind::Lambda2, cfg, fits);
    return xi::verify_theorem2(theorem2_k(id), grid, tol, theorem2_options(cfg, fits, sign));
  }
  return mellin::verify_identity(id, grid, tol, verify_options(cfg, fits));
}

bool needs_fits(const RunConfig& cfg) {
  if (cfg.mode != ConventionMode::Paper || cfg.include_resolution) return true;
  for (IdentityId id : cfg.selected())
    if (id == IdentityId::EQ2_2 || id == IdentityId::EQ2_3) return true;
  return false;
}

json delta_json(const CoefficientDelta& d) {
  json j;
  j["paper_printed"] = d.paper;
  j["oracle_resolved"] = d.oracle;
  j["delta"] = d.delta;
  j["fit_residual"] = d.fit_residual;
  return j;
}

CoefficientDelta make_delta(lambda::LambdaKind kind, const lambda::SubtractionPolynomial& fit) {
  CoefficientDelta d;
  d.paper = lambda::paper_printed_polynomial(kind).c;
  d.oracle = fit.c;
  for (std::size_t i = 0; i < 4; ++i) d.delta[i] = d.oracle[i] - d.paper[i];
  d.fit_residual = fit.fit_residual;
  return d;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  auto to_double = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size() || !std::isfinite(v))
      throw Error(ErrorCode::Config, "malformed grid '" + text + "'");
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() == 1) return {to_double(parts[0])};
  if (parts.size() != 3) throw Error(ErrorCode::Config, "grid must be lo:hi:n, got '" + text + "'");
  const double lo = to_double(parts[0]);
  const double hi = to_double(parts[1]);
  const double nd = to_double(parts[2]);
  if (nd < 1 || nd != std::floor(nd) || nd > 100000)
    throw Error(ErrorCode::Config, "grid point count must be a positive integer");
  const int n = static_cast<int>(nd);
  if (n == 1) {
    if (lo != hi) throw Error(ErrorCode::Config, "a one-point grid needs lo == hi");
    return {lo};
  }
  if (!(hi > lo)) throw Error(ErrorCode::Config, "grid needs lo < hi");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

ConventionMode parse_convention(const std::string& text) {
  if (text == "paper") return ConventionMode::Paper;
  if (text == "oracle") return ConventionMode::Oracle;
  if (text == "both") return ConventionMode::Both;
  throw Error(ErrorCode::Config, "convention must be paper, oracle or both");
}

std::string_view to_string(ConventionMode mode) noexcept {
  switch (mode) {
    case ConventionMode::Paper: return "paper";
    case ConventionMode::Oracle: return "oracle";
    case ConventionMode::Both: return "both";
  }
  return "unknown";
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw Error(ErrorCode::Config, "format must be json or csv");
}

std::vector<IdentityId> RunConfig::selected() const {
  if (!ids.empty()) return ids;
  return {std::begin(mellin::kAllIdentities), std::end(mellin::kAllIdentities)};
}

void RunConfig::validate() const {
  if (workers < 1) throw Error(ErrorCode::Config, "worker count must be at least 1");
  lambda.validate();
  if (tol && !(*tol > 0.0 && *tol < 1.0)) throw Error(ErrorCode::Config, "tolerance must lie in (0, 1)");
  if (s_grid) {
    if (s_grid->empty()) throw Error(ErrorCode::Config, "s grid is empty");
    for (double s : *s_grid)
      if (!(s > 0.0 && s < 1.0)) throw Error(ErrorCode::Config, "s outside critical strip");
  }
  if (x_grid) {
    if (x_grid->empty()) throw Error(ErrorCode::Config, "x grid is empty");
    for (IdentityId id : selected()) {
      if (mellin::uses_s_grid(id)) continue;
      for (double x : *x_grid) {
        const bool ok = id == IdentityId::PS1 || id == IdentityId::PS2 ? (x > 0.0 && x < 1.0)
                        : is_theorem2(id)                             ? (x >= 0.0 && x <= xi::kMaxX)
                                                                      : (x > 0.0 && std::isfinite(x));
        if (!ok)
          throw Error(ErrorCode::Config,
                      "x = " + number(x) + " outside the domain of " + std::string(mellin::to_string(id)));
      }
    }
  }
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Config, "configuration must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      const bool optional_key = key == "s_grid" || key == "x_grid" || key == "tol";
      if (optional_key && value.is_null()) continue;
      if (key == "ids") {
        std::vector<std::string> names =
            value.is_string() ? std::vector<std::string>{value.get<std::string>()} : value.get<std::vector<std::string>>();
        for (const auto& name : names) {
          if (name == "all") {
            cfg.ids.clear();
            break;
          }
          auto id = mellin::parse_identity(name);
          if (!id) throw Error(ErrorCode::Config, "unknown identity '" + name + "'");
          cfg.ids.push_back(*id);
        }
      } else if (key == "s_grid") {
        cfg.s_grid = grid_from_json(value, "s_grid");
      } else if (key == "x_grid") {
        cfg.x_grid = grid_from_json(value, "x_grid");
      } else if (key == "tol") {
        cfg.tol = value.get<double>();
      } else if (key == "convention") {
        cfg.mode = parse_convention(value.get<std::string>());
      } else if (key == "format") {
        cfg.format = parse_format(value.get<std::string>());
      } else if (key == "out") {
        cfg.out = value.get<std::string>();
      } else if (key == "workers") {
        const long w = value.get<long>();
        if (w < 1) throw Error(ErrorCode::Config, "worker count must be at least 1");
        cfg.workers = static_cast<unsigned>(w);
      } else if (key == "lambda") {
        for (const auto& [lk, lv] : value.items()) {
          if (lk == "max_terms") cfg.lambda.max_terms = lv.get<std::size_t>();
          else if (lk == "initial_terms") cfg.lambda.initial_terms = lv.get<std::size_t>();
          else if (lk == "singular_window") cfg.lambda.singular_window = lv.get<double>();
          else if (lk == "tail_tolerance") cfg.lambda.tail_tolerance = lv.get<double>();
          else if (lk == "power_series_order") cfg.lambda.power_series_order = lv.get<int>();
          else throw Error(ErrorCode::Config, "unknown lambda key '" + lk + "'");
        }
      } else {
        throw Error(ErrorCode::Config, "unknown configuration key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("bad configuration value: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot read configuration file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("configuration is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const RunConfig& cfg) {
  json j;
  json ids = json::array();
  for (IdentityId id : cfg.selected()) ids.push_back(std::string(mellin::to_string(id)));
  j["ids"] = ids;
  j["s_grid"] = cfg.s_grid ? grid_json(*cfg.s_grid) : json(nullptr);
  j["x_grid"] = cfg.x_grid ? grid_json(*cfg.x_grid) : json(nullptr);
  j["tol"] = cfg.tol ? json(*cfg.tol) : json(nullptr);
  j["convention"] = std::string(to_string(cfg.mode));
  j["format"] = cfg.format == OutputFormat::Json ? "json" : "csv";
  j["lambda"] = {{"max_terms", cfg.lambda.max_terms},
                 {"initial_terms", cfg.lambda.initial_terms},
                 {"singular_window", cfg.lambda.singular_window},
                 {"tail_tolerance", cfg.lambda.tail_tolerance},
                 {"power_series_order", cfg.lambda.power_series_order}};
  // The worker count and output path do not influence the report and are
  // left out so that reports stay byte-identical across them.
  return j;
}

std::vector<double> default_grid(IdentityId id) {
  switch (id) {
    case IdentityId::EQ1_1:
    case IdentityId::EQ1_4:
    case IdentityId::EQ1_5: return {0.2, 0.35, 0.5, 0.65, 0.8};
    case IdentityId::EQ1_2:
    case IdentityId::EQ1_3: return {0.3, 0.5, 0.7};
    case IdentityId::EQ1_6: return {0.3, 0.5, 0.8, 1.5};
    case IdentityId::EQ2_1:
    case IdentityId::EQ2_2:
    case IdentityId::EQ2_3: return {0.0, 0.25, 0.5, 1.0, 2.0};
    case IdentityId::PS1:
    case IdentityId::PS2: return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    case IdentityId::INTREP: return {0.1, 1.0, 10.0, 100.0};
  }
  return {};
}

double default_tolerance(IdentityId id) {
  switch (id) {
    case IdentityId::EQ1_1:
    case IdentityId::EQ1_4:
    case IdentityId::EQ1_5: return 1e-6;
    case IdentityId::EQ1_2:
    case IdentityId::EQ1_3:
    case IdentityId::EQ1_6: return 1e-5;
    case IdentityId::EQ2_1:
    case IdentityId::EQ2_2:
    case IdentityId::EQ2_3: return 1e-4;
    case IdentityId::PS1:
    case IdentityId::PS2:
    case IdentityId::INTREP: return 1e-7;
  }
  return 1e-6;
}

Resolution fit_conventions() {
  Resolution res;
  const lambda::SubtractionPolynomial f1 = mellin::fit_residue_polynomial(lambda::LambdaKind::Lambda1);
  const lambda::SubtractionPolynomial f2 = mellin::fit_residue_polynomial(lambda::LambdaKind::Lambda2);
  res.fits.lambda1 = f1;
  res.fits.lambda2 = f2;
  res.lambda1 = make_delta(lambda::LambdaKind::Lambda1, f1);
  res.lambda2 = make_delta(lambda::LambdaKind::Lambda2, f2);
  return res;
}

void resolve_signs(Resolution& res, const RunConfig& cfg, const std::vector<VerificationRecord>& existing) {
  auto records_for = [&](IdentityId id, const std::string& convention, ConventionMode mode) {
    const std::string name(mellin::to_string(id));
    std::vector<VerificationRecord> found;
    for (const auto& r : existing)
      if (r.id == name && r.convention == convention) found.push_back(r);
    if (!found.empty()) return found;
    RunConfig sub = cfg;
    sub.mode = mode;
    return run_identity(id, default_grid(id), default_tolerance(id), sub, res.fits);
  };
  const std::string oracle(lambda::to_string(lambda::PolySource::OracleResolved));
  const std::string paper(lambda::to_string(lambda::PolySource::PaperPrinted));

  for (IdentityId id : {IdentityId::EQ1_2, IdentityId::EQ1_3, IdentityId::PS2, IdentityId::EQ2_2,
                        IdentityId::EQ2_3, IdentityId::INTREP}) {
    const bool free_of_convention = id == IdentityId::PS2;
    const auto recs = records_for(id, free_of_convention ? paper : oracle,
                                  free_of_convention ? ConventionMode::Paper : ConventionMode::Oracle);
    if (!recs.empty()) res.signs[std::string(mellin::to_string(id))] = recs.front().sigma;
  }
  for (IdentityId id : {IdentityId::EQ1_2, IdentityId::EQ1_3}) {
    const auto recs = records_for(id, paper, ConventionMode::Paper);
    res.paper_printed_pass[std::string(mellin::to_string(id))] =
        !recs.empty() && std::all_of(recs.begin(), recs.end(), [](const auto& r) { return r.pass; });
  }
}

json resolution_json(const Resolution& res) {
  json j;
  j["coefficient_order"] = "c0 + c1 L + c2 L^2 + c3 L^3, L = log x";
  j["lambda1"] = delta_json(res.lambda1);
  j["lambda2"] = delta_json(res.lambda2);
  json signs = json::object();
  for (const auto& [k, v] : res.signs) signs[k] = v;
  j["signs"] = signs;
  json printed = json::object();
  for (const auto& [k, v] : res.paper_printed_pass) printed[k] = v;
  j["paper_printed_pass"] = printed;
  return j;
}

int exit_code_for(const std::vector<VerificationRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; }) ? kExitPass : kExitFail;
}

SuiteResult run_suite(const RunConfig& cfg) {
  cfg.validate();
  SuiteResult result;
  std::optional<Resolution> res;
  if (needs_fits(cfg)) res = fit_conventions();
  const lambda::OracleFits fits = res ? res->fits : lambda::OracleFits{};

  for (IdentityId id : cfg.selected()) {
    const std::optional<std::vector<double>>& override_grid = mellin::uses_s_grid(id) ? cfg.s_grid : cfg.x_grid;
    const std::vector<double> grid = override_grid ? *override_grid : default_grid(id);
    const double tol = cfg.tol.value_or(default_tolerance(id));
    auto recs = run_identity(id, grid, tol, cfg, fits);
    result.records.insert(result.records.end(), std::make_move_iterator(recs.begin()),
                          std::make_move_iterator(recs.end()));
  }
  std::stable_sort(result.records.begin(), result.records.end(), [](const auto& a, const auto& b) {
    const auto ra = identity_rank(a.id);
    const auto rb = identity_rank(b.id);
    if (ra != rb) return ra < rb;
    if (a.convention != b.convention) return a.convention > b.convention;  // paper-printed first
    return a.point_value < b.point_value;
  });

  json meta;
  meta["tool"] = "mzcheck";
  meta["config"] = config_to_json(cfg);

  json conventions = json::array();
  for (const auto& r : result.records) {
    json c = {{"id", r.id}, {"convention", r.convention}, {"sigma", r.sigma}};
    if (std::find(conventions.begin(), conventions.end(), c) == conventions.end()) conventions.push_back(c);
  }
  meta["conventions"] = conventions;

  if (res) {
    if (cfg.include_resolution) resolve_signs(*res, cfg, result.records);
    meta["resolution"] = resolution_json(*res);
  }

  json ratios = json::array();
  json errors = json::array();
  for (const auto& r : result.records) {
    if (r.error) {
      errors.push_back({{"id", r.id}, {"point", r.point}, {"convention", r.convention}, {"sigma", r.sigma},
                        {"message", *r.error}});
      continue;
    }
    if (r.id == "eq2.1" || r.id == "eq2.2" || r.id == "eq2.3")
      ratios.push_back({{"id", r.id}, {"point", r.point}, {"convention", r.convention}, {"sigma", r.sigma},
                        {"rhs_over_lhs", r.rhs / r.lhs}});
  }
  meta["theorem2_ratios"] = ratios;
  meta["errors"] = errors;
  const auto passed = std::count_if(result.records.begin(), result.records.end(), [](const auto& r) { return r.pass; });
  meta["summary"] = {{"records", result.records.size()}, {"passed", passed},
                     {"failed", result.records.size() - static_cast<std::size_t>(passed)}};
  result.meta = std::move(meta);
  result.exit_code = exit_code_for(result.records);
  return result;
}

std::string render_json(const SuiteResult& result) {
  json recs = json::array();
  for (const auto& r : result.records) {
    json j;
    j["id"] = r.id;
    j["point"] = r.point;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["abs_err"] = r.abs_err;
    j["rel_err"] = r.rel_err;
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    j["convention"] = r.convention;
    j["sigma"] = r.sigma;
    j["lhs_quad_err"] = r.lhs_quad_err;
    j["rhs_quad_err"] = r.rhs_quad_err;
    if (r.error) j["error"] = *r.error;
    recs.push_back(std::move(j));
  }
  json doc;
  doc["meta"] = result.meta;
  doc["records"] = std::move(recs);
  return doc.dump(2) + "\n";
}

std::string render_csv(const SuiteResult& result) {
  std::ostringstream out;
  out << "id,point,lhs,rhs,abs_err,rel_err,tol,pass,convention,sigma,lhs_quad_err,rhs_quad_err\n";
  for (const auto& r : result.records) {
    out << r.id << ',' << r.point << ',' << number(r.lhs) << ',' << number(r.rhs) << ',' << number(r.abs_err)
        << ',' << number(r.rel_err) << ',' << number(r.tol) << ',' << (r.pass ? "true" : "false") << ','
        << r.convention << ',' << r.sigma << ',' << number(r.lhs_quad_err) << ',' << number(r.rhs_quad_err)
        << '\n';
  }
  return out.str();
}

std::string render(const SuiteResult& result, OutputFormat format) {
  return format == OutputFormat::Json ? render_json(result) : render_csv(result);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Config, "cannot write '" + path + "'");
  out << text;
}

std::optional<EvalTarget> parse_eval_target(const std::string& text) {
  if (text == "lambda1") return EvalTarget::Lambda1;
  if (text == "lambda2") return EvalTarget::Lambda2;
  if (text == "xi") return EvalTarget::Xi;
  if (text == "zeta") return EvalTarget::Zeta;
  if (text == "digamma") return EvalTarget::Digamma;
  if (text == "stieltjes") return EvalTarget::Stieltjes;
  return std::nullopt;
}

EvalResult eval_value(const EvalRequest& req) {
  constexpr double kEps = 2.220446049250313e-16;
  EvalResult r;
  std::ostringstream label;
  label.precision(17);
  switch (req.target) {
    case EvalTarget::Lambda1:
    case EvalTarget::Lambda2: {
      if (req.sigma != 1 && req.sigma != -1) throw Error(ErrorCode::Domain, "sigma must be +1 or -1");
      const bool first = req.target == EvalTarget::Lambda1;
      const auto kind = first ? lambda::LambdaKind::Lambda1 : lambda::LambdaKind::Lambda2;
      lambda::OracleFits fits;
      if (req.convention == lambda::PolySource::OracleResolved) {
        if (first) fits.lambda1 = mellin::fit_residue_polynomial(kind);
        else fits.lambda2 = mellin::fit_residue_polynomial(kind);
      }
      const auto poly = lambda::subtraction_poly(kind, req.convention, fits);
      const auto raw = first ? lambda::lambda1_raw_sum(req.x, req.lambda) : lambda::lambda2_raw_sum(req.x, req.lambda);
      r.value = req.sigma * raw.value - poly(std::log(req.x));
      r.error = raw.tail_error + poly.fit_residual;
      label << (first ? "lambda1(" : "lambda2(") << req.x << ") [" << lambda::to_string(req.convention)
            << ", sigma " << req.sigma << "]";
      break;
    }
    case EvalTarget::Xi:
      r.value = specfn::xi_critical(req.t);
      r.error = 1e-13 * std::max(1.0, std::abs(r.value));
      label << "Xi(" << req.t << ")";
      break;
    case EvalTarget::Zeta: {
      const specfn::Complex s(req.s, req.t);
      if (s == specfn::Complex(1.0, 0.0)) throw Error(ErrorCode::Pole, "zeta has a pole at s = 1");
      const specfn::Complex z = specfn::zeta(s);
      r.value = z.real();
      r.imag = z.imag();
      r.error = 1e-12 * std::abs(z);
      label << "zeta(" << req.s;
      if (req.t != 0.0) label << (req.t > 0 ? " + " : " - ") << std::abs(req.t) << "i";
      label << ")";
      break;
    }
    case EvalTarget::Digamma:
      if (!(req.x > 0.0)) throw Error(ErrorCode::Domain, "digamma is evaluated for x > 0");
      r.value = specfn::digamma(req.x);
      r.error = 16 * kEps * std::max(1.0, std::abs(r.value));
      label << "digamma(" << req.x << ")";
      break;
    case EvalTarget::Stieltjes:
      if (req.n < 0 || req.n > 2) throw Error(ErrorCode::Domain, "Stieltjes constants are tabulated for n = 0, 1, 2");
      r.value = specfn::stieltjes(req.n);
      r.error = specfn::stieltjes_table().entries[static_cast<std::size_t>(req.n)].error_bound;
      label << "gamma_" << req.n;
      break;
  }
  r.label = label.str();
  return r;
}

std::string format_eval(const EvalResult& r) {
  char buf[128];
  std::string out = r.label + " = ";
  std::snprintf(buf, sizeof buf, "%.15g", r.value);
  out += buf;
  if (r.imag != 0.0) {
    std::snprintf(buf, sizeof buf, " %c %.15gi", r.imag < 0 ? '-' : '+', std::abs(r.imag));
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "\nerror estimate = %.3g\n", r.error);
  out += buf;
  return out;
}

}  // namespace mz::harness
