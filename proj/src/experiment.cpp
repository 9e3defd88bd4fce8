#include "wns/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "wns/error.hpp"
#include "wns/oracles.hpp"
#include "wns/random_fields.hpp"

namespace wns {

// ---- key-value config ------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValues parse_key_values(std::istream& is) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorCode::invalid_argument,
            "config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    require(!key.empty(), ErrorCode::invalid_argument,
            "config line " + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValues load_key_values(const std::filesystem::path& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), ErrorCode::io, "cannot open config file " + path.string());
  return parse_key_values(is);
}

namespace {

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos == v.size() && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::invalid_argument, "config key '" + key + "': not a number: '" + v + "'");
}

long long to_integer(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  require(ec == std::errc() && ptr == v.data() + v.size(), ErrorCode::invalid_argument,
          "config key '" + key + "': not an integer: '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(ErrorCode::invalid_argument, "config key '" + key + "': not a boolean: '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

std::string list_string(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t q = 0; q < xs.size(); ++q) s += (q ? "," : "") + format_double(xs[q]);
  return s;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_key_values(const KeyValues& kv) {
  ExperimentConfig c;
  for (const auto& [key, v] : kv) {
    if (key == "subcommand") c.subcommand = v;
    else if (key == "problem") c.problem = v;
    else if (key == "n") c.n = static_cast<int>(to_integer(key, v));
    else if (key == "mu") c.mu = to_double(key, v);
    else if (key == "T") c.T = to_double(key, v);
    else if (key == "samples") c.samples = static_cast<int>(to_integer(key, v));
    else if (key == "time_grid") c.time_grid = v;
    else if (key == "t_min") c.t_min = to_double(key, v);
    else if (key == "alpha") c.alpha = to_double(key, v);
    else if (key == "alphas") c.alphas = to_list(key, v);
    else if (key == "tol") c.tol = to_double(key, v);
    else if (key == "max_iters") c.max_iters = static_cast<int>(to_integer(key, v));
    else if (key == "substeps") c.substeps = static_cast<int>(to_integer(key, v));
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_integer(key, v));
    else if (key == "out") c.out = v;
    else if (key == "data") c.data = v;
    else if (key == "amplitude") c.amplitude = to_double(key, v);
    else if (key == "data_norm") c.data_norm = to_double(key, v);
    else if (key == "slope") c.slope = to_double(key, v);
    else if (key == "band") c.band = static_cast<int>(to_integer(key, v));
    else if (key == "method") c.method = v;
    else if (key == "nonlinear") c.nonlinear = to_bool(key, v);
    else if (key == "write_trajectory") c.write_trajectory = to_bool(key, v);
    else if (key == "trials") c.trials = static_cast<int>(to_integer(key, v));
    else if (key == "calib_n") c.calib_n = static_cast<int>(to_integer(key, v));
    else if (key == "calib_samples") c.calib_samples = static_cast<int>(to_integer(key, v));
    else if (key == "calib_T") c.calib_T = to_double(key, v);
    else if (key == "C") c.C = to_double(key, v);
    else if (key == "depend_fraction") c.depend_fraction = to_double(key, v);
    else if (key == "depend_delta") c.depend_delta = to_double(key, v);
    else fail(ErrorCode::invalid_argument, "unknown config key '" + key + "'");
  }
  return c;
}

KeyValues ExperimentConfig::canonical() const {
  return {
      {"subcommand", subcommand},
      {"problem", problem},
      {"n", std::to_string(n)},
      {"mu", format_double(mu)},
      {"T", format_double(T)},
      {"samples", std::to_string(samples)},
      {"time_grid", time_grid},
      {"t_min", format_double(t_min)},
      {"alpha", format_double(alpha)},
      {"alphas", list_string(alphas)},
      {"tol", format_double(tol)},
      {"max_iters", std::to_string(max_iters)},
      {"substeps", std::to_string(substeps)},
      {"seed", std::to_string(seed)},
      {"data", data},
      {"amplitude", format_double(amplitude)},
      {"data_norm", format_double(data_norm)},
      {"slope", format_double(slope)},
      {"band", std::to_string(band)},
      {"method", method},
      {"nonlinear", nonlinear ? "true" : "false"},
      {"write_trajectory", write_trajectory ? "true" : "false"},
      {"trials", std::to_string(trials)},
      {"calib_n", std::to_string(calib_n)},
      {"calib_samples", std::to_string(calib_samples)},
      {"calib_T", format_double(calib_T)},
      {"C", format_double(C)},
      {"depend_fraction", format_double(depend_fraction)},
      {"depend_delta", format_double(depend_delta)},
  };
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [k, v] : canonical()) {
    for (char ch : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(ch);
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

void ExperimentConfig::validate() const {
  const bool known_sub = subcommand == "solve" || subcommand == "calibrate" ||
                         subcommand == "radius" || subcommand == "verify" ||
                         subcommand == "depend";
  require(known_sub, ErrorCode::invalid_argument, "unknown subcommand '" + subcommand + "'");
  require(problem == "ns3d" || problem == "burgers1d", ErrorCode::invalid_argument,
          "problem must be ns3d or burgers1d");
  require(time_grid == "uniform" || time_grid == "geometric", ErrorCode::invalid_argument,
          "time_grid must be uniform or geometric");
  require(method == "picard" || method == "timestep", ErrorCode::invalid_argument,
          "method must be picard or timestep");
  const bool known_data = data == "zero" || data == "beltrami" || data == "single_mode" ||
                          data == "random" || data == "sine";
  require(known_data, ErrorCode::invalid_argument, "unknown data kind '" + data + "'");
  require(mu > 0.0, ErrorCode::invalid_argument, "mu must be > 0");
  require(T > 0.0, ErrorCode::invalid_argument, "T must be > 0");
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  for (double a : alphas)
    require(a > 0.0 && a < 1.0, ErrorCode::invalid_argument, "alphas must lie in (0, 1)");
  require(trials >= 1, ErrorCode::invalid_argument, "trials must be >= 1");
  require(depend_fraction > 0.0 && depend_delta >= 0.0, ErrorCode::invalid_argument,
          "depend_fraction must be > 0 and depend_delta >= 0");
  require(!(problem == "burgers1d" && (data == "beltrami" || data == "single_mode")),
          ErrorCode::invalid_argument, "data kind needs a 3-D grid");
  require(!(problem == "ns3d" && data == "sine"), ErrorCode::invalid_argument,
          "sine data is for burgers1d");
}

TimeGrid make_time_grid(const ExperimentConfig& cfg) {
  if (cfg.time_grid == "geometric") return TimeGrid::geometric(cfg.t_min, cfg.T, cfg.samples);
  return TimeGrid::uniform(cfg.T, cfg.samples);
}

SolverConfig make_solver_config(const ExperimentConfig& cfg) {
  const GridSpec grid = GridSpec::make(cfg.problem == "ns3d" ? 3 : 1, cfg.n);
  SolverConfig s(grid, make_time_grid(cfg), cfg.mu);
  s.picard_tol = cfg.tol;
  s.picard_max_iters = cfg.max_iters;
  s.alpha = cfg.alpha;
  s.substeps = cfg.substeps;
  s.validate();
  return s;
}

SpectralField make_initial_data(const ExperimentConfig& cfg) {
  const GridSpec grid = GridSpec::make(cfg.problem == "ns3d" ? 3 : 1, cfg.n);
  SpectralField f(grid);
  if (cfg.data == "beltrami") {
    f = beltrami_field(cfg.amplitude, cfg.amplitude, cfg.amplitude, 0.0, cfg.mu, grid);
  } else if (cfg.data == "single_mode") {
    f = single_mode_field({{1, 0, 0}}, {0.0, 1.0, 0.0}, cfg.amplitude, 0.0, cfg.mu, grid);
  } else if (cfg.data == "sine") {
    f(*grid.index_of({{1, 0, 0}}), 0) = cplx{0.0, -0.5 * cfg.amplitude};
    f(*grid.index_of({{-1, 0, 0}}), 0) = cplx{0.0, 0.5 * cfg.amplitude};
  } else if (cfg.data == "random") {
    std::mt19937_64 rng(derive_seed(cfg.seed, 0xDA7AULL));
    f = random_field(grid, cfg.slope, rng, cfg.band);
    f *= cfg.amplitude;
  }
  if (cfg.data_norm > 0.0) f = scale_to_x_minus1(f, cfg.data_norm);
  return f;
}

// ---- runners ---------------------------------------------------------------

namespace {

json provenance(const ExperimentConfig& cfg) {
  json p;
  p["format_version"] = kFormatVersion;
  p["config_hash"] = cfg.hash();
  p["seed"] = cfg.seed;
  return p;
}

json with_provenance(const ExperimentConfig& cfg, json body) {
  json j = provenance(cfg);
  j["config"] = cfg.canonical();
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

std::filesystem::path prepare_out(const ExperimentConfig& cfg) {
  std::filesystem::path dir(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec && std::filesystem::is_directory(dir), ErrorCode::io,
          "cannot create output directory " + dir.string());
  return dir;
}

void write_json(ExperimentResult& res, const std::filesystem::path& path, const json& j) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(os), ErrorCode::io, "cannot write " + path.string());
  os << j.dump(2) << "\n";
  res.artifacts.push_back(path);
}

void warn(std::ostream& diag, const std::string& msg) {
  diag << json{{"level", "warning"}, {"message", msg}}.dump() << "\n";
}

ConstantEstimate calibrate(const ExperimentConfig& cfg) {
  const GridSpec grid = GridSpec::make(cfg.problem == "ns3d" ? 3 : 1, cfg.calib_n);
  return measure_bilinear_constant(cfg.mu, cfg.trials, grid,
                                   TimeGrid::uniform(cfg.calib_T, cfg.calib_samples), cfg.seed);
}

std::string alpha_tag(double a) { return format_double(a); }

// Closed-form solution from v0 at time t, when the data has one.
std::optional<SpectralField> exact_solution(const ExperimentConfig& cfg, const SpectralField& v0,
                                            double t) {
  if (cfg.data == "beltrami" || cfg.data == "single_mode" || cfg.data == "zero")
    return heat_propagate(v0, t, cfg.mu);
  if (cfg.data == "sine") {
    const double A = -2.0 * v0(*v0.grid().index_of({{1, 0, 0}}), 0).imag();
    return cole_hopf_burgers(A, cfg.mu, t, v0.grid());
  }
  return std::nullopt;
}

// Columns t, abs_error, rel_error: max coefficient error against the closed
// form and that error over the max coefficient of the closed form.
void write_oracle_csv(ExperimentResult& res, const std::filesystem::path& path,
                      const ExperimentConfig& cfg, const SpectralField& v0, const Trajectory& v) {
  std::ofstream os(path, std::ios::trunc);
  require(static_cast<bool>(os), ErrorCode::io, "cannot write " + path.string());
  os << "# " << with_provenance(cfg, json::object()).dump() << "\n";
  os << "t,abs_error,rel_error\n";
  double worst = 0.0;
  for (std::size_t m = 0; m < v.size(); ++m) {
    const SpectralField exact = *exact_solution(cfg, v0, v.times()[m]);
    const double abs_err = (v[m] - exact).max_abs();
    const double scale = exact.max_abs();
    const double rel = scale > 0.0 ? abs_err / scale : abs_err;
    worst = std::max(worst, rel);
    os << format_double(v.times()[m]) << ',' << format_double(abs_err) << ','
       << format_double(rel) << '\n';
  }
  require(static_cast<bool>(os), ErrorCode::io, "cannot write " + path.string());
  res.artifacts.push_back(path);
  res.summary["oracle_max_rel_error"] = worst;
}

}  // namespace

ExperimentResult run_solve(const ExperimentConfig& cfg, std::ostream& diag) {
  ExperimentResult res;
  const SolverConfig scfg = make_solver_config(cfg);
  const SpectralField v0 = make_initial_data(cfg);
  const auto dir = prepare_out(cfg);

  json body;
  body["data_x_minus1"] = x_minus1_norm(v0);
  std::optional<Trajectory> solution;
  if (cfg.method == "timestep") {
    solution = timestep_solve(v0, scfg);
    body["method"] = "timestep";
  } else {
    auto r = picard_solve(v0, scfg);
    for (const auto& w : r.report.warnings) warn(diag, w);
    body["method"] = "picard";
    body["converged"] = r.report.converged;
    body["iterations"] = r.report.iterations;
    write_json(res, dir / "picard_report.json", with_provenance(cfg, to_json(r.report)));
    if (!r.report.converged) res.exit_code = kExitNotConverged;
    solution = std::move(r.solution);
  }
  NormReport norms = triple_norm(*solution);
  norms.x1_tail_estimate = x1_tail_estimate(*solution, cfg.mu);
  write_json(res, dir / "norm_report.json", with_provenance(cfg, to_json(norms)));
  if (cfg.write_trajectory) {
    const auto path = dir / "trajectory.bin";
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(os), ErrorCode::io, "cannot write " + path.string());
    write_trajectory_binary(os, *solution, with_provenance(cfg, json::object()));
    res.artifacts.push_back(path);
  }
  body["triple"] = norms.triple;
  res.summary = with_provenance(cfg, body);
  if (exact_solution(cfg, v0, 0.0))
    write_oracle_csv(res, dir / "oracle_error.csv", cfg, v0, *solution);
  write_json(res, dir / "summary.json", res.summary);
  return res;
}

ExperimentResult run_calibrate(const ExperimentConfig& cfg, std::ostream&) {
  ExperimentResult res;
  cfg.validate();
  const auto dir = prepare_out(cfg);
  const ConstantEstimate est = calibrate(cfg);
  json body = to_json(est);
  body["calib_n"] = cfg.calib_n;
  body["calib_samples"] = cfg.calib_samples;
  body["calib_T"] = cfg.calib_T;
  json sweep = json::array();
  std::vector<double> alphas = cfg.alphas.empty() ? std::vector<double>{cfg.alpha} : cfg.alphas;
  for (double a : alphas)
    sweep.push_back({{"alpha", a}, {"epsilon0", epsilon0_alpha(cfg.mu, est.C_empirical, a)}});
  body["epsilon0_alpha"] = sweep;
  res.summary = with_provenance(cfg, body);
  write_json(res, dir / "calibration.json", res.summary);
  return res;
}

ExperimentResult run_radius(const ExperimentConfig& cfg, std::ostream& diag) {
  ExperimentResult res;
  const SolverConfig scfg = make_solver_config(cfg);
  const SpectralField v0 = make_initial_data(cfg);
  const auto dir = prepare_out(cfg);

  json body;
  std::optional<Trajectory> v;
  if (cfg.nonlinear) {
    auto r = picard_solve(v0, scfg);
    for (const auto& w : r.report.warnings) warn(diag, w);
    body["picard"] = to_json(r.report);
    if (!r.report.converged) res.exit_code = kExitNotConverged;
    v = std::move(r.solution);
  } else {
    v = heat_flow(v0, scfg.times, cfg.mu);
  }
  body["nonlinear"] = cfg.nonlinear;
  body["data_x_minus1"] = x_minus1_norm(v0);

  const std::vector<double> alphas =
      cfg.alphas.empty() ? std::vector<double>{cfg.alpha} : cfg.alphas;
  json per_alpha = json::array();
  for (double a : alphas) {
    const RadiusSeries s = radius_series(*v, cfg.mu, a);
    const auto path = dir / ("radius_alpha" + alpha_tag(a) + ".csv");
    {
      std::ofstream os(path, std::ios::binary | std::ios::trunc);
      require(static_cast<bool>(os), ErrorCode::io, "cannot write " + path.string());
      json prov = provenance(cfg);
      prov["alpha"] = a;
      write_radius_csv(os, s, prov);
    }
    res.artifacts.push_back(path);
    json entry;
    entry["alpha"] = a;
    entry["csv"] = path.filename().string();
    entry["crossover"] = crossover_time(a);
    entry["min_margin"] = s.valid_samples > 0 ? json(s.min_margin) : json(nullptr);
    entry["valid_samples"] = s.valid_samples;
    entry["window"] = {s.window_start, s.window_end};
    entry["weighted_sqrt"] = to_json(s.weighted_sqrt);
    entry["weighted_linear"] = to_json(s.weighted_linear);
    entry["weighted_sqrt"].erase("time_grid");
    entry["weighted_linear"].erase("time_grid");
    entry["K_sqrt"] = s.K_sqrt;
    entry["K_linear"] = s.K_linear;
    if (cfg.C > 0.0) entry["epsilon0_alpha"] = epsilon0_alpha(cfg.mu, cfg.C, a);
    per_alpha.push_back(entry);
  }
  body["alphas"] = per_alpha;
  res.summary = with_provenance(cfg, body);
  write_json(res, dir / "radius_summary.json", res.summary);
  return res;
}

ExperimentResult run_verify(const ExperimentConfig& cfg, std::ostream&) {
  ExperimentResult res;
  cfg.validate();
  const auto dir = prepare_out(cfg);
  const GridSpec grid = GridSpec::make(cfg.problem == "ns3d" ? 3 : 1, cfg.n);
  const DiscretenessReport d = verify_discreteness_inequality(grid, cfg.mu, cfg.alpha,
                                                              make_time_grid(cfg));
  const AuxSweep a = sweep_aux_a(-10.0, 10.0, 100001);
  json body;
  body["inequalities"] = to_json(d);
  body["aux_a"] = {{"sup", a.sup}, {"argmax", a.argmax}, {"samples", a.samples},
                   {"range", {-10.0, 10.0}}};
  const bool aux_ok = a.sup <= 0.5 + 1e-12 && std::abs(a.argmax - 1.0) <= 1e-6;
  body["violations"] = d.total_violations() + (aux_ok ? 0 : 1);
  res.summary = with_provenance(cfg, body);
  write_json(res, dir / "verify.json", res.summary);
  if (body["violations"].get<long>() != 0) res.exit_code = kExitNotConverged;
  return res;
}

ExperimentResult run_depend(const ExperimentConfig& cfg, std::ostream&) {
  ExperimentResult res;
  const SolverConfig scfg = make_solver_config(cfg);
  const auto dir = prepare_out(cfg);
  json body;
  double C = cfg.C;
  if (C <= 0.0) {
    const auto est = calibrate(cfg);
    body["calibration"] = to_json(est);
    C = est.C_empirical;
  }
  const double eps0 = epsilon0(cfg.mu, C);
  ExperimentConfig dcfg = cfg;
  dcfg.data_norm = cfg.depend_fraction * eps0;
  const SpectralField u0 = make_initial_data(dcfg);
  SpectralField v0 = u0;
  if (cfg.depend_delta > 0.0) {
    std::mt19937_64 rng(derive_seed(cfg.seed, 0xD1FFULL));
    const SpectralField w = random_field(u0.grid(), cfg.slope, rng, cfg.band);
    v0 += scale_to_x_minus1(w, cfg.depend_delta * x_minus1_norm(u0));
  }
  const DependenceReport r = continuous_dependence_experiment(u0, v0, scfg, C);
  body["epsilon0"] = eps0;
  body["depend_fraction"] = cfg.depend_fraction;
  body["report"] = to_json(r);
  res.summary = with_provenance(cfg, body);
  write_json(res, dir / "depend.json", res.summary);
  if (!r.holds || !r.converged) res.exit_code = kExitNotConverged;
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream& diag) {
  try {
    cfg.validate();
    if (cfg.subcommand == "solve") return run_solve(cfg, diag);
    if (cfg.subcommand == "calibrate") return run_calibrate(cfg, diag);
    if (cfg.subcommand == "radius") return run_radius(cfg, diag);
    if (cfg.subcommand == "verify") return run_verify(cfg, diag);
    return run_depend(cfg, diag);
  } catch (const Error& e) {
    diag << json{{"level", "error"}, {"code", to_string(e.code())}, {"message", e.what()}}.dump()
         << "\n";
    ExperimentResult res;
    switch (e.code()) {
      case ErrorCode::invalid_argument:
      case ErrorCode::shape_mismatch:
      case ErrorCode::symmetry_violation: res.exit_code = kExitInvalidConfig; break;
      case ErrorCode::io: res.exit_code = kExitIo; break;
      default: res.exit_code = kExitNumerical; break;
    }
    return res;
  }
}

}  // namespace wns
