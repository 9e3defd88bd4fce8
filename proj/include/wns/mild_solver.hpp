#pragma once

#include <string>
#include <vector>

#include "wns/field.hpp"
#include "wns/norms.hpp"
#include "wns/spectral_ops.hpp"
#include "wns/trajectory.hpp"

namespace wns {

enum class Problem { ns3d, burgers1d };

const char* to_string(Problem p);
Problem problem_for(const GridSpec& grid);

struct SolverConfig {
  SolverConfig(GridSpec g, TimeGrid t, double viscosity)
      : problem(problem_for(g)), mu(viscosity), grid(std::move(g)), times(std::move(t)) {}

  Problem problem;
  double mu;
  GridSpec grid;
  TimeGrid times;
  double picard_tol = 1e-10;
  int picard_max_iters = 50;
  double alpha = 0.5;
  /// RK4 steps per sample interval in timestep_solve.
  int substeps = 8;

  /// Throws Error(invalid_argument) on mu <= 0, alpha outside (0,1), a
  /// problem/grid mismatch or nonpositive iteration settings.
  void validate() const;
};

struct PicardReport {
  int iterations = 0;
  std::vector<double> increment_norms;
  std::vector<double> contraction_ratios;
  double residual = 0.0;
  bool converged = false;
  /// Triple norm of the heat flow e^{mu t Lap} v0 (the fixed-point datum x0).
  double heat_norm = 0.0;
  /// Triple norm of the returned iterate.
  double solution_norm = 0.0;
  std::vector<std::string> warnings;
};

struct PicardResult {
  Trajectory solution;
  PicardReport report;
};

/// u(k) -> e^{-mu dt |k|^2} u(k).
SpectralField heat_propagate(const SpectralField& f, double dt, double mu);

/// e^{mu t Lap} v0 sampled on `times`.
Trajectory heat_flow(const SpectralField& v0, const TimeGrid& times, double mu);

/// Running integral I(t_m) = int_0^{t_m} e^{-mu (t_m - s)|k|^2} H(s,k) ds with
/// H linear between samples and the kernel integrated exactly
/// (exponential trapezoid). Push the forcing at t_0, t_1, ... in order.
class DuhamelIntegrator {
 public:
  DuhamelIntegrator(const GridSpec& grid, int components, double mu);

  const SpectralField& push(double t, const SpectralField& forcing);
  const SpectralField& current() const { return integral_; }

 private:
  void update_weights(double h);

  GridSpec grid_;
  double mu_;
  SpectralField integral_;
  SpectralField previous_;
  double previous_t_ = 0.0;
  bool started_ = false;
  double weights_h_ = -1.0;
  // Per |k|^2: decay e^{-z}, weight of H at the left node, at the right node.
  std::vector<double> decay_, left_, right_;
};

/// (1 - e^{-z}) / z and (z - 1 + e^{-z}) / z^2. Taylor series below 1e-4
/// for phi1 and below 1 for phi2.
double phi1(double z);
double phi2(double z);

/// Duhamel integral of a sampled forcing trajectory.
Trajectory duhamel_integrate(const Trajectory& forcing, double mu);

/// B(F, G)(t) = int_0^t e^{mu (t-s) Lap} Q(F, G)(s) ds with Q the
/// convective term (P div(F (x) G) in 3-D).
Trajectory duhamel_bilinear(const Trajectory& F, const Trajectory& G, double mu);

/// (B(F, G) + B(G, F)) / 2.
Trajectory duhamel_bilinear_sym(const Trajectory& F, const Trajectory& G, double mu);

/// Space-time Picard iteration v <- e^{mu t Lap} v0 - B(v, v) starting from
/// the heat flow. Never refuses large data: non-contraction shows up as
/// converged = false with the increment history.
PicardResult picard_solve(const SpectralField& v0, const SolverConfig& cfg);

/// Integrating-factor RK4 on the Galerkin system with cfg.substeps steps per
/// sample interval. Throws Error(blow_up) if max |u(k)| exceeds 1e12.
Trajectory timestep_solve(const SpectralField& v0, const SolverConfig& cfg);

struct DependenceReport {
  double mu = 0.0;
  double C = 0.0;
  double u0_norm = 0.0;
  double v0_norm = 0.0;
  double data_difference = 0.0;     // ||u0 - v0||_{X^-1}
  double solution_difference = 0.0; // |||u - v|||
  double lipschitz_factor = 0.0;    // (1+1/mu) / (1 - 2C(1+1/mu)^2 (||u0|| + ||v0||))
  double bound = 0.0;               // factor * data_difference
  double slack = 1e-8;
  bool holds = false;
  /// |||(u - v) - e^{mu t Lap}(u0 - v0) + B_sym(u - v, u + v)|||
  double identity_residual = 0.0;
  bool converged = false;
};

/// Solves from u0 and v0 and compares |||u - v||| with the Lipschitz bound.
/// Throws Error(smallness_violated) unless 4C(1+1/mu)^2 ||w0|| < 1 for both.
DependenceReport continuous_dependence_experiment(const SpectralField& u0,
                                                  const SpectralField& v0,
                                                  const SolverConfig& cfg, double C);

}  // namespace wns
