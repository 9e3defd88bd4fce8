#pragma once

#include <vector>

#include "wns/field.hpp"
#include "wns/norms.hpp"
#include "wns/trajectory.hpp"

namespace wns {

enum class ShellMetric { l1, euclid };

struct Shell {
  int radius;
  double peak;
};

/// Peak coefficient modulus (over modes and components) on each occupied
/// shell, ascending in radius. l1 shells are indexed by sum_i |k_i|;
/// euclid shells by round(|k|). The zero mode is skipped.
struct ShellProfile {
  std::vector<Shell> shells;
};

ShellProfile shell_profile(const SpectralField& f, ShellMetric metric = ShellMetric::l1);

struct LowerBound {
  double bound_sqrt;   // mu sqrt(t)
  double bound_linear; // alpha mu t
  double bound;        // max of the two
};

/// Throws Error(invalid_argument) unless t >= 0, mu > 0, 0 < alpha < 1.
LowerBound lower_bound(double t, double mu, double alpha);

/// Time where mu sqrt(t) = alpha mu t.
double crossover_time(double alpha);

struct RadiusEstimate {
  double t = 0.0;
  double rho = 0.0;        // -slope of log(peak) against shell radius
  double intercept = 0.0;
  double fit_rms = 0.0;
  int shells_used = 0;
  int first_shell = 0;
  int last_shell = 0;
  bool valid = false;      // at least three shells survived the filters
  double bound_sqrt = 0.0;
  double bound_linear = 0.0;
  double bound = 0.0;
};

struct FitOptions {
  /// Shells with peak <= floor_relative * (largest peak) are dropped.
  double floor_relative = 1e-13;
  /// Shells with radius above this are dropped. <= 0 means 2n/3 when
  /// fitting a field and no limit when fitting a bare profile.
  int max_shell = 0;
  ShellMetric metric = ShellMetric::l1;
};

/// Least-squares line through (s, log peak) over the surviving shells.
/// Throws Error(invalid_argument) on a zero field.
RadiusEstimate fit_radius(const SpectralField& f, const FitOptions& options = {});
RadiusEstimate fit_radius(const ShellProfile& profile, const FitOptions& options);

struct RadiusSeries {
  std::vector<RadiusEstimate> estimates;
  /// ||e^{phi(t)|D|} v(t)||_{X^-1} at each sample, phi = mu sqrt(t) / alpha mu t.
  std::vector<double> weighted_x_minus1_sqrt;
  std::vector<double> weighted_x_minus1_linear;
  NormReport weighted_sqrt;   // |||e^{mu sqrt(t)|D|} v|||
  NormReport weighted_linear; // |||e^{alpha mu t|D|} v|||
  double data_norm = 0.0;     // ||v(0)||_{X^-1}
  double K_sqrt = 0.0;        // weighted_sqrt.triple / data_norm
  double K_linear = 0.0;
  double min_margin = 0.0;    // min over valid samples of rho - bound
  int valid_samples = 0;
  double window_start = 0.0;  // first and last valid sample time
  double window_end = 0.0;
  double mu = 0.0;
  double alpha = 0.0;
};

/// Radius fit at every sample plus the two weighted triple norms.
/// Coefficients below fit.floor_relative * max|v(t)| are treated as
/// round-off and excluded from the weighted norms as well as from the fit.
RadiusSeries radius_series(const Trajectory& v, double mu, double alpha,
                           const FitOptions& fit = {});

}  // namespace wns
