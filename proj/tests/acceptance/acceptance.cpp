// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include "wns/analyticity.hpp"
#include "wns/calibration.hpp"
#include "wns/experiment.hpp"
#include "wns/mild_solver.hpp"
#include "wns/norms.hpp"
#include "wns/oracles.hpp"
#include "wns/random_fields.hpp"
#include "wns/spectral_ops.hpp"
#include "wns/transform.hpp"

using namespace wns;
namespace fs = std::filesystem;

namespace {

const fs::path kPresets = WNS_PRESET_DIR;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s  %-24s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentConfig preset(const std::string& name, const fs::path& out) {
  ExperimentConfig cfg = ExperimentConfig::from_key_values(load_key_values(kPresets / name));
  cfg.out = out.string();
  return cfg;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wns_acceptance_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

double max_pointwise_relative(const SpectralField& u, const SpectralField& ref) {
  const PhysicalField a = transform_to_physical(u);
  const PhysicalField b = transform_to_physical(ref);
  double err = 0.0, amp = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    err = std::max(err, std::abs(a.values[j] - b.values[j]));
    amp = std::max(amp, std::abs(b.values[j]));
  }
  return err / amp;
}

// Shared by the contraction and continuous-dependence criteria.
ConstantEstimate calibration_n16() {
  static const ConstantEstimate est =
      measure_bilinear_constant(1.0, 100, GridSpec::make(3, 16), TimeGrid::uniform(1.0, 32), 1);
  return est;
}

Outcome beltrami_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const double mu = 0.1;
  const SolverConfig cfg(GridSpec::make(3, 8), TimeGrid::uniform(1.0, 64), mu);
  const SpectralField u0 = beltrami_field(1.0, 1.0, 1.0, 0.0, mu, cfg.grid);
  const PicardResult p = picard_solve(u0, cfg);
  const Trajectory s = timestep_solve(u0, cfg);
  double ep = 0.0, es = 0.0;
  for (std::size_t m = 0; m < cfg.times.size(); ++m) {
    const SpectralField exact = std::exp(-mu * cfg.times[m]) * u0;
    ep = std::max(ep, (p.solution[m] - exact).max_abs() / exact.max_abs());
    es = std::max(es, (s[m] - exact).max_abs() / exact.max_abs());
  }
  const double secs = seconds_since(t0);
  return {p.report.converged && ep <= 1e-8 && es <= 1e-8 && secs <= 10.0,
          fmt("picard rel err %.2e, timestep rel err %.2e (tol 1e-8); %.2f s (limit 10 s)", ep,
              es, secs)};
}

Outcome burgers_cole_hopf() {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig ec = preset("burgers.cfg", scratch("burgers"));
  const SolverConfig cfg = make_solver_config(ec);
  const SpectralField u0 = make_initial_data(ec);
  const PicardResult p = picard_solve(u0, cfg);
  const Trajectory s = timestep_solve(u0, cfg);
  const SpectralField ref = cole_hopf_burgers(ec.amplitude, ec.mu, ec.T, cfg.grid);
  const double ep = max_pointwise_relative(p.solution[cfg.times.size() - 1], ref);
  const double es = max_pointwise_relative(s[cfg.times.size() - 1], ref);
  const double secs = seconds_since(t0);
  return {p.report.converged && ep <= 1e-6 && es <= 1e-6 && secs <= 30.0,
          fmt("n=%d, %zu samples: picard %.2e, timestep %.2e (tol 1e-6); %.2f s (limit 30 s)",
              ec.n, cfg.times.intervals(), ep, es, secs)};
}

Outcome convolution_equivalence() {
  const GridSpec g = GridSpec::make(3, 8);
  std::mt19937_64 rng(derive_seed(2024, 3));
  double worst = 0.0;
  for (int pair = 0; pair < 50; ++pair) {
    const SpectralField F = random_field(g, 1.0, rng, g.n() / 3);
    const SpectralField G = random_field(g, 2.0, rng, g.n() / 3);
    const TensorField a = tensor_product_pseudospectral(F, G);
    const TensorField b = tensor_product_direct(F, G);
    double d = 0.0;
    for (std::size_t q = 0; q < a.coefficients().size(); ++q)
      d = std::max(d, std::abs(a.coefficients()[q] - b.coefficients()[q]));
    worst = std::max(worst, d / b.max_abs());
  }
  return {worst <= 1e-12, fmt("50 pairs at n=8, band |k_i| <= 2: max rel diff %.2e (tol 1e-12)", worst)};
}

struct SmallRun {
  SolverConfig cfg;
  SpectralField v0;
  PicardResult result;
};

const SmallRun& small_run() {
  static const SmallRun run = [] {
    const ExperimentConfig ec = preset("small_ns.cfg", scratch("small"));
    const SolverConfig cfg = make_solver_config(ec);
    const SpectralField v0 = make_initial_data(ec);
    return SmallRun{cfg, v0, picard_solve(v0, cfg)};
  }();
  return run;
}

Outcome mild_residual() {
  const SmallRun& r = small_run();
  const Trajectory& v = r.result.solution;
  const Trajectory heat = heat_flow(r.v0, r.cfg.times, r.cfg.mu);
  const double residual =
      triple_norm(v - heat + duhamel_bilinear(v, v, r.cfg.mu)).triple;
  const double eta = calibration_n16().eta;
  const double limit = 4.0 * eta * r.result.report.heat_norm + 0.05;
  double worst = 0.0;
  for (double q : r.result.report.contraction_ratios) worst = std::max(worst, q);
  const bool geometric = r.result.report.contraction_ratios.size() >= 2;
  return {r.result.report.converged && residual <= 1e-9 && worst <= limit && geometric,
          fmt("residual %.2e (tol 1e-9); max ratio %.2e <= 4 eta x0 + 0.05 = %.4f (eta %.4e); "
              "%d iterations",
              residual, worst, limit, eta, r.result.report.iterations)};
}

Outcome solution_bound() {
  const SmallRun& r = small_run();
  const double mu = r.cfg.mu;
  const double sol = triple_norm(r.result.solution).triple;
  const double heat = triple_norm(heat_flow(r.v0, r.cfg.times, mu)).triple;
  // Quadrature slack: trapezoid value minus the exact heat-flow norm on [0, T].
  const GridSpec& g = r.cfg.grid;
  const double T = r.cfg.times.horizon();
  double exact = x_minus1_norm(r.v0);
  for (std::size_t m = 0; m < g.mode_count(); ++m) {
    if (m == g.zero_index()) continue;
    for (int i = 0; i < 3; ++i)
      exact += std::abs(r.v0(m, i)) / (mu * g.euclid_norm(m)) *
               (1.0 - std::exp(-mu * g.norm_sq(m) * T));
  }
  const double slack = std::max(0.0, heat - exact);
  const double data = (1.0 + 1.0 / mu) * x_minus1_norm(r.v0);
  return {sol <= 2.0 * heat + 1e-6 && heat <= data + slack,
          fmt("|||v||| %.6e <= 2|||heat||| + 1e-6 = %.6e; |||heat||| %.6e <= (1+1/mu)||v0|| + "
              "slack = %.6e + %.1e",
              sol, 2.0 * heat + 1e-6, heat, data, slack)};
}

Outcome analyticity_bound() {
  ExperimentConfig base = preset("radius.cfg", scratch("radius_a"));
  std::ostringstream diag;
  const ExperimentResult a = run_experiment(base, diag);
  ExperimentConfig fine = base;
  fine.samples = 2 * base.samples;
  fine.out = scratch("radius_b").string();
  const ExperimentResult b = run_experiment(fine, diag);
  if (a.exit_code != kExitOk || b.exit_code != kExitOk)
    return {false, fmt("radius runs exited with %d and %d: %s", a.exit_code, b.exit_code,
                       diag.str().c_str())};

  auto entry = [](const ExperimentResult& r, double alpha) {
    for (const json& e : r.summary["alphas"])
      if (e["alpha"].get<double>() == alpha) return e;
    return json();
  };
  const json ea = entry(a, 0.5), eb = entry(b, 0.5);
  const double margin = std::min(ea["min_margin"].get<double>(), eb["min_margin"].get<double>());
  const int valid = ea["valid_samples"].get<int>();
  const double ks = eb["K_sqrt"].get<double>() / ea["K_sqrt"].get<double>() - 1.0;
  const double kl = eb["K_linear"].get<double>() / ea["K_linear"].get<double>() - 1.0;
  const bool finite = std::isfinite(ea["K_sqrt"].get<double>()) &&
                      std::isfinite(ea["K_linear"].get<double>());

  // Crossover column of every row of the alpha = 0.5 CSV.
  std::ifstream csv(fs::path(base.out) / ea["csv"].get<std::string>());
  std::string line;
  std::getline(csv, line);
  std::getline(csv, line);
  bool crossover_exact = true;
  int rows = 0;
  while (std::getline(csv, line)) {
    crossover_exact = crossover_exact && line.substr(line.rfind(',') + 1) == "4.0";
    ++rows;
  }
  const bool pass = margin >= 0.0 && valid > 0 && std::abs(ks) <= 0.1 && std::abs(kl) <= 0.1 &&
                    finite && crossover_exact && rows == base.samples + 1;
  return {pass, fmt("alpha=0.5: min(rho - bound) %.3f over %d valid samples; K_sqrt %.4f -> %.4f "
                    "(%+.2f%%), K_linear %.4f -> %.4f (%+.2f%%) under M %d -> %d; crossover 4 "
                    "exact: %s",
                    margin, valid, ea["K_sqrt"].get<double>(), eb["K_sqrt"].get<double>(),
                    100 * ks, ea["K_linear"].get<double>(), eb["K_linear"].get<double>(),
                    100 * kl, base.samples, fine.samples, crossover_exact ? "yes" : "no")};
}

Outcome inequality_sweeps() {
  const ExperimentConfig ec = preset("verify.cfg", scratch("verify"));
  const DiscretenessReport d = verify_discreteness_inequality(
      GridSpec::make(3, ec.n), ec.mu, ec.alpha, make_time_grid(ec));
  const AuxSweep s = sweep_aux_a(-10.0, 10.0, 100001);
  const bool aux = s.sup <= 0.5 && std::abs(s.argmax - 1.0) <= 1e-6;
  return {d.total_violations() == 0 && aux,
          fmt("n=8, %ld time pairs: %ld violations; a(z) sup %.12f at z=%.8f over 100001 samples",
              d.time_pairs, d.total_violations(), s.sup, s.argmax)};
}

Outcome continuous_dependence() {
  const ExperimentConfig ec = preset("depend.cfg", scratch("depend"));
  const double C = calibration_n16().C_empirical;
  const double eps0 = epsilon0(ec.mu, C);
  ExperimentConfig data = ec;
  data.data_norm = ec.depend_fraction * eps0;
  const SpectralField u0 = make_initial_data(data);
  std::mt19937_64 rng(derive_seed(ec.seed, 99));
  const SpectralField w = random_field(u0.grid(), ec.slope, rng);
  const SpectralField v0 = u0 + scale_to_x_minus1(w, ec.depend_delta * x_minus1_norm(u0));
  const DependenceReport r = continuous_dependence_experiment(u0, v0, make_solver_config(ec), C);
  const bool pass = r.converged && r.solution_difference <= r.bound + 1e-8;
  return {pass, fmt("||u0|| = %.3f eps0 (eps0 %.4f, C %.4e): |||u-v||| %.4e <= factor %.4f * "
                    "||u0-v0|| %.4e + 1e-8 = %.4e",
                    r.u0_norm / eps0, eps0, C, r.solution_difference, r.lipschitz_factor,
                    r.data_difference, r.bound + 1e-8)};
}

Outcome determinism() {
  int compared = 0;
  for (const char* name : {"small_ns.cfg", "calibrate.cfg", "radius_heat.cfg", "verify.cfg"}) {
    ExperimentConfig cfg = preset(name, scratch("det_a"));
    std::ostringstream diag;
    const ExperimentResult a = run_experiment(cfg, diag);
    cfg.out = scratch("det_b").string();
    const ExperimentResult b = run_experiment(cfg, diag);
    if (a.artifacts.size() != b.artifacts.size() || a.artifacts.empty())
      return {false, fmt("%s: artifact lists differ", name)};
    for (std::size_t q = 0; q < a.artifacts.size(); ++q) {
      if (slurp(a.artifacts[q]) != slurp(b.artifacts[q]))
        return {false, fmt("%s: %s differs", name, a.artifacts[q].filename().c_str())};
      ++compared;
    }
  }
  return {true, fmt("%d artifacts byte-identical across two output directories", compared)};
}

}  // namespace

int main() {
  report("beltrami_oracle", beltrami_oracle);
  report("burgers_cole_hopf", burgers_cole_hopf);
  report("convolution_equivalence", convolution_equivalence);
  report("mild_residual", mild_residual);
  report("solution_bound", solution_bound);
  report("analyticity_bound", analyticity_bound);
  report("inequality_sweeps", inequality_sweeps);
  report("continuous_dependence", continuous_dependence);
  report("determinism", determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
