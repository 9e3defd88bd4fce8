#include "wns/mild_solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wns/error.hpp"

namespace wns {

const char* to_string(Problem p) { return p == Problem::ns3d ? "ns3d" : "burgers1d"; }

Problem problem_for(const GridSpec& grid) {
  return grid.dims() == 3 ? Problem::ns3d : Problem::burgers1d;
}

void SolverConfig::validate() const {
  require(mu > 0.0 && std::isfinite(mu), ErrorCode::invalid_argument, "viscosity must be > 0");
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  require(problem == problem_for(grid), ErrorCode::invalid_argument,
          "problem does not match grid dimension");
  require(picard_tol > 0.0, ErrorCode::invalid_argument, "Picard tolerance must be > 0");
  require(picard_max_iters >= 1, ErrorCode::invalid_argument, "need at least one Picard iteration");
  require(substeps >= 1, ErrorCode::invalid_argument, "need at least one substep");
}

SpectralField heat_propagate(const SpectralField& f, double dt, double mu) {
  require(dt >= 0.0, ErrorCode::invalid_argument, "heat propagation needs dt >= 0");
  const auto& grid = f.grid();
  std::vector<double> factor(static_cast<std::size_t>(grid.max_norm_sq()) + 1);
  for (std::size_t q = 0; q < factor.size(); ++q) factor[q] = std::exp(-mu * dt * double(q));
  SpectralField out = f;
  for (std::size_t m = 0; m < grid.mode_count(); ++m) {
    const double e = factor[grid.norm_sq(m)];
    for (int i = 0; i < f.components(); ++i) out(m, i) *= e;
  }
  return out;
}

Trajectory heat_flow(const SpectralField& v0, const TimeGrid& times, double mu) {
  std::vector<SpectralField> fields;
  fields.reserve(times.size());
  for (std::size_t m = 0; m < times.size(); ++m) fields.push_back(heat_propagate(v0, times[m], mu));
  return Trajectory(times, std::move(fields));
}

double phi1(double z) {
  if (z < 1e-4) return 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0;
  return -std::expm1(-z) / z;
}

// The closed form loses about 2 eps / z relative accuracy to cancellation,
// so the series is used up to z = 1 (20 terms reach round-off there).
double phi2(double z) {
  if (z < 1.0) {
    double acc = 1.0;
    for (int j = 20; j >= 1; --j) acc = 1.0 - z * acc / (j + 2);
    return acc / 2.0;
  }
  return (z + std::expm1(-z)) / (z * z);
}

DuhamelIntegrator::DuhamelIntegrator(const GridSpec& grid, int components, double mu)
    : grid_(grid), mu_(mu), integral_(grid, components), previous_(grid, components) {
  const std::size_t levels = static_cast<std::size_t>(grid.max_norm_sq()) + 1;
  decay_.resize(levels);
  left_.resize(levels);
  right_.resize(levels);
}

void DuhamelIntegrator::update_weights(double h) {
  if (h == weights_h_) return;
  for (std::size_t q = 0; q < decay_.size(); ++q) {
    const double z = mu_ * h * double(q);
    const double p1 = phi1(z);
    const double p2 = phi2(z);
    decay_[q] = std::exp(-z);
    left_[q] = h * (p1 - p2);
    right_[q] = h * p2;
  }
  weights_h_ = h;
}

const SpectralField& DuhamelIntegrator::push(double t, const SpectralField& forcing) {
  require(forcing.same_shape(integral_), ErrorCode::shape_mismatch, "forcing shape mismatch");
  if (!started_) {
    require(t == 0.0, ErrorCode::invalid_argument, "Duhamel integral starts at t = 0");
    started_ = true;
  } else {
    require(t > previous_t_, ErrorCode::invalid_argument, "forcing times must increase");
    update_weights(t - previous_t_);
    const int c = integral_.components();
    for (std::size_t m = 0; m < grid_.mode_count(); ++m) {
      const int q = grid_.norm_sq(m);
      for (int i = 0; i < c; ++i)
        integral_(m, i) =
            decay_[q] * integral_(m, i) + left_[q] * previous_(m, i) + right_[q] * forcing(m, i);
    }
  }
  previous_ = forcing;
  previous_t_ = t;
  return integral_;
}

Trajectory duhamel_integrate(const Trajectory& forcing, double mu) {
  require(mu > 0.0, ErrorCode::invalid_argument, "viscosity must be > 0");
  DuhamelIntegrator duh(forcing.grid(), forcing.components(), mu);
  std::vector<SpectralField> out;
  out.reserve(forcing.size());
  for (std::size_t m = 0; m < forcing.size(); ++m)
    out.push_back(duh.push(forcing.times()[m], forcing[m]));
  return Trajectory(forcing.times(), std::move(out));
}

Trajectory duhamel_bilinear(const Trajectory& F, const Trajectory& G, double mu) {
  require(F.same_shape(G), ErrorCode::shape_mismatch, "B(F, G) needs matching trajectories");
  require(mu > 0.0, ErrorCode::invalid_argument, "viscosity must be > 0");
  DuhamelIntegrator duh(F.grid(), F.components(), mu);
  std::vector<SpectralField> out;
  out.reserve(F.size());
  for (std::size_t m = 0; m < F.size(); ++m)
    out.push_back(duh.push(F.times()[m], convective_term(F[m], G[m])));
  return Trajectory(F.times(), std::move(out));
}

Trajectory duhamel_bilinear_sym(const Trajectory& F, const Trajectory& G, double mu) {
  Trajectory out = duhamel_bilinear(F, G, mu);
  out += duhamel_bilinear(G, F, mu);
  out *= 0.5;
  return out;
}

namespace {

SpectralField prepare_initial_data(const SpectralField& v0, const SolverConfig& cfg,
                                   std::vector<std::string>* warnings) {
  cfg.validate();
  require(v0.grid() == cfg.grid && v0.components() == components_for(cfg.grid),
          ErrorCode::shape_mismatch, "initial data does not live on the solver grid");
  require(v0.has_zero_mean(), ErrorCode::symmetry_violation, "initial data must have zero mean");
  require(v0.is_hermitian(1e-12), ErrorCode::symmetry_violation,
          "initial data must be Hermitian (real-valued)");
  if (cfg.problem == Problem::ns3d) {
    const double scale = std::max(v0.max_abs(), 1e-300);
    if (divergence_defect(v0) > 1e-12 * scale) {
      if (warnings) warnings->push_back("initial data was not divergence-free; Leray-projected");
      return leray_project(v0);
    }
  }
  return v0;
}

}  // namespace

PicardResult picard_solve(const SpectralField& v0_in, const SolverConfig& cfg) {
  PicardReport report;
  const SpectralField v0 = prepare_initial_data(v0_in, cfg, &report.warnings);
  const auto& times = cfg.times;
  const int c = v0.components();

  Trajectory heat = heat_flow(v0, times, cfg.mu);
  report.heat_norm = triple_norm(heat).triple;

  Trajectory v = heat;
  Trajectory next(cfg.grid, c, times);
  Trajectory best = v;
  double best_increment = std::numeric_limits<double>::infinity();

  // One sweep of the fixed-point map: out = heat - B(in, in). Returns
  // |||out - in|||.
  auto sweep = [&](const Trajectory& in, Trajectory* out) {
    DuhamelIntegrator duh(cfg.grid, c, cfg.mu);
    NormAccumulator inc(cfg.grid, c);
    for (std::size_t m = 0; m < times.size(); ++m) {
      const auto& integral = duh.push(times[m], convective_term(in[m], in[m]));
      SpectralField mapped = heat[m];
      mapped -= integral;
      SpectralField diff = mapped;
      diff -= in[m];
      inc.add(times[m], diff);
      if (out) (*out)[m] = std::move(mapped);
    }
    return inc.triple();
  };

  for (int it = 1; it <= cfg.picard_max_iters; ++it) {
    const double increment = sweep(v, &next);
    report.iterations = it;
    report.increment_norms.push_back(increment);
    if (report.increment_norms.size() >= 2) {
      const auto n = report.increment_norms.size();
      report.contraction_ratios.push_back(report.increment_norms[n - 1] /
                                          report.increment_norms[n - 2]);
    }
    std::swap(v, next);
    if (!std::isfinite(increment) || increment > 1e12) break;
    if (increment < best_increment) {
      best_increment = increment;
      if (increment >= cfg.picard_tol) best = v;
    }
    if (increment < cfg.picard_tol) {
      report.converged = true;
      break;
    }
  }

  if (!report.converged) {
    v = std::move(best);
    report.warnings.push_back("Picard iteration did not converge; returning best iterate");
  }
  report.residual = sweep(v, nullptr);
  report.solution_norm = triple_norm(v).triple;
  return {std::move(v), std::move(report)};
}

Trajectory timestep_solve(const SpectralField& v0_in, const SolverConfig& cfg) {
  const SpectralField v0 = prepare_initial_data(v0_in, cfg, nullptr);
  const auto& grid = cfg.grid;
  const auto& times = cfg.times;
  const std::size_t levels = static_cast<std::size_t>(grid.max_norm_sq()) + 1;
  std::vector<double> half(levels);

  // E^p u: multiply by e^{-mu |k|^2 p h / 2}.
  auto propagate = [&](SpectralField& f, int powers) {
    for (std::size_t m = 0; m < grid.mode_count(); ++m) {
      double e = half[grid.norm_sq(m)];
      if (powers == 2) e *= e;
      for (int i = 0; i < f.components(); ++i) f(m, i) *= e;
    }
  };
  // h N(u) with N(u) = -Q(u, u)
  auto rhs = [&](const SpectralField& u, double h) {
    SpectralField r = convective_term(u, u);
    r *= -h;
    return r;
  };

  std::vector<SpectralField> out;
  out.reserve(times.size());
  SpectralField u = v0;
  out.push_back(u);
  for (std::size_t m = 1; m < times.size(); ++m) {
    const double h = (times[m] - times[m - 1]) / cfg.substeps;
    for (std::size_t q = 0; q < levels; ++q) half[q] = std::exp(-0.5 * cfg.mu * h * double(q));
    for (int s = 0; s < cfg.substeps; ++s) {
      const SpectralField a = rhs(u, h);

      SpectralField stage = u;
      stage.axpy(0.5, a);
      propagate(stage, 1);
      const SpectralField b = rhs(stage, h);

      SpectralField eu = u;
      propagate(eu, 1);
      stage = eu;
      stage.axpy(0.5, b);
      const SpectralField c = rhs(stage, h);

      SpectralField ec = c;
      propagate(ec, 1);
      stage = eu;
      propagate(stage, 1);
      stage += ec;
      const SpectralField d = rhs(stage, h);

      // u <- E^2 u + (E^2 a + 2E(b + c) + d) / 6
      SpectralField acc = a;
      propagate(acc, 2);
      SpectralField bc = b;
      bc += c;
      propagate(bc, 1);
      acc.axpy(2.0, bc);
      acc += d;
      propagate(u, 2);
      u.axpy(1.0 / 6.0, acc);
      u.pin_zero_mode();
    }
    const double amp = u.max_abs();
    if (!(amp <= 1e12)) {
      std::ostringstream msg;
      msg << "time stepper blew up: max |u(k)| = " << amp << " at t = " << times[m];
      fail(ErrorCode::blow_up, msg.str());
    }
    out.push_back(u);
  }
  return Trajectory(times, std::move(out));
}

DependenceReport continuous_dependence_experiment(const SpectralField& u0,
                                                  const SpectralField& v0,
                                                  const SolverConfig& cfg, double C) {
  cfg.validate();
  require(C > 0.0, ErrorCode::invalid_argument, "bilinear constant must be > 0");
  DependenceReport r;
  r.mu = cfg.mu;
  r.C = C;
  r.u0_norm = x_minus1_norm(u0);
  r.v0_norm = x_minus1_norm(v0);
  const double g = 1.0 + 1.0 / cfg.mu;
  for (double norm : {r.u0_norm, r.v0_norm}) {
    if (!(4.0 * C * g * g * norm < 1.0)) {
      std::ostringstream msg;
      msg << "data violates 4C(1+1/mu)^2 ||w0|| < 1 (value " << 4.0 * C * g * g * norm
          << "); the Lipschitz estimate is not guaranteed";
      fail(ErrorCode::smallness_violated, msg.str());
    }
  }
  r.data_difference = x_minus1_norm(u0 - v0);
  r.lipschitz_factor = g / (1.0 - 2.0 * C * g * g * (r.u0_norm + r.v0_norm));
  r.bound = r.lipschitz_factor * r.data_difference;

  auto u = picard_solve(u0, cfg);
  auto v = picard_solve(v0, cfg);
  r.converged = u.report.converged && v.report.converged;

  Trajectory diff = u.solution - v.solution;
  r.solution_difference = triple_norm(diff).triple;
  r.holds = r.solution_difference <= r.bound + r.slack;

  Trajectory sum = u.solution + v.solution;
  Trajectory identity = diff;
  identity -= heat_flow(u0 - v0, cfg.times, cfg.mu);
  identity += duhamel_bilinear_sym(diff, sum, cfg.mu);
  r.identity_residual = triple_norm(identity).triple;
  return r;
}

}  // namespace wns
