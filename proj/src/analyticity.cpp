#include "wns/analyticity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "wns/error.hpp"

namespace wns {

ShellProfile shell_profile(const SpectralField& f, ShellMetric metric) {
  const auto& grid = f.grid();
  std::map<int, double> peaks;
  bool any = false;
  for (std::size_t m = 0; m < grid.mode_count(); ++m) {
    if (m == grid.zero_index()) continue;
    const int s = metric == ShellMetric::l1 ? grid.l1_norm(m)
                                            : static_cast<int>(std::lround(grid.euclid_norm(m)));
    double& peak = peaks[s];
    for (int i = 0; i < f.components(); ++i) {
      const double a = std::abs(f(m, i));
      peak = std::max(peak, a);
      any = any || a > 0.0;
    }
  }
  require(any, ErrorCode::invalid_argument, "shell profile of a zero field");
  ShellProfile out;
  for (const auto& [s, p] : peaks)
    if (p > 0.0) out.shells.push_back({s, p});
  return out;
}

LowerBound lower_bound(double t, double mu, double alpha) {
  require(t >= 0.0, ErrorCode::invalid_argument, "time must be >= 0");
  require(mu > 0.0, ErrorCode::invalid_argument, "viscosity must be > 0");
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  LowerBound b;
  b.bound_sqrt = mu * std::sqrt(t);
  b.bound_linear = alpha * mu * t;
  b.bound = std::max(b.bound_sqrt, b.bound_linear);
  return b;
}

double crossover_time(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  return 1.0 / (alpha * alpha);
}

RadiusEstimate fit_radius(const ShellProfile& profile, const FitOptions& options) {
  double top = 0.0;
  for (const auto& s : profile.shells) top = std::max(top, s.peak);
  require(top > 0.0, ErrorCode::invalid_argument, "radius fit of a zero field");
  const double floor = options.floor_relative * top;

  std::vector<double> xs, ys;
  for (const auto& s : profile.shells) {
    if (s.peak <= floor) continue;
    if (options.max_shell > 0 && s.radius > options.max_shell) continue;
    xs.push_back(s.radius);
    ys.push_back(std::log(s.peak));
  }
  RadiusEstimate est;
  est.shells_used = static_cast<int>(xs.size());
  if (xs.empty()) return est;
  est.first_shell = static_cast<int>(xs.front());
  est.last_shell = static_cast<int>(xs.back());
  if (xs.size() < 2) {
    est.rho = std::numeric_limits<double>::quiet_NaN();
    return est;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t q = 0; q < xs.size(); ++q) {
    mx += xs[q];
    my += ys[q];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t q = 0; q < xs.size(); ++q) {
    sxx += (xs[q] - mx) * (xs[q] - mx);
    sxy += (xs[q] - mx) * (ys[q] - my);
  }
  const double slope = sxy / sxx;
  est.rho = -slope;
  est.intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t q = 0; q < xs.size(); ++q) {
    const double r = ys[q] - (est.intercept + slope * xs[q]);
    ss += r * r;
  }
  est.fit_rms = std::sqrt(ss / n);
  est.valid = xs.size() >= 3;
  return est;
}

RadiusEstimate fit_radius(const SpectralField& f, const FitOptions& options) {
  FitOptions opts = options;
  if (opts.max_shell <= 0) opts.max_shell = (2 * f.grid().n()) / 3;
  return fit_radius(shell_profile(f, opts.metric), opts);
}

namespace {

// Zeroes coefficients at or below the round-off floor, then weights.
SpectralField trusted_weighted(const SpectralField& f, double exponent, double floor_relative) {
  SpectralField g = f;
  const double floor = floor_relative * f.max_abs();
  for (auto& z : g.coefficients())
    if (std::abs(z) <= floor) z = cplx{};
  return weight_field(g, exponent, Multiplier::l1);
}

}  // namespace

RadiusSeries radius_series(const Trajectory& v, double mu, double alpha, const FitOptions& fit) {
  (void)lower_bound(0.0, mu, alpha);
  const auto& times = v.times();
  const auto& grid = v.grid();
  const double max_exponent =
      std::max(mu * std::sqrt(times.horizon()), alpha * mu * times.horizon()) *
      grid.max_l1_norm();
  require(max_exponent <= 700.0, ErrorCode::overflow,
          "weight exponent phi(T) * max |k|_1 exceeds 700; shorten the horizon or grid");

  RadiusSeries out;
  out.mu = mu;
  out.alpha = alpha;
  out.data_norm = x_minus1_norm(v[0]);
  out.min_margin = std::numeric_limits<double>::infinity();

  NormAccumulator acc_sqrt(grid, v.components());
  NormAccumulator acc_linear(grid, v.components());
  bool first_valid = true;
  for (std::size_t m = 0; m < v.size(); ++m) {
    const double t = times[m];
    const auto b = lower_bound(t, mu, alpha);
    RadiusEstimate est;
    if (v[m].max_abs() > 0.0) est = fit_radius(v[m], fit);
    est.t = t;
    est.bound_sqrt = b.bound_sqrt;
    est.bound_linear = b.bound_linear;
    est.bound = b.bound;
    if (est.valid) {
      out.min_margin = std::min(out.min_margin, est.rho - est.bound);
      ++out.valid_samples;
      if (first_valid) out.window_start = t;
      first_valid = false;
      out.window_end = t;
    }
    out.estimates.push_back(est);

    const SpectralField ws = trusted_weighted(v[m], b.bound_sqrt, fit.floor_relative);
    const SpectralField wl = trusted_weighted(v[m], b.bound_linear, fit.floor_relative);
    out.weighted_x_minus1_sqrt.push_back(x_minus1_norm(ws));
    out.weighted_x_minus1_linear.push_back(x_minus1_norm(wl));
    acc_sqrt.add(t, ws);
    acc_linear.add(t, wl);
  }
  auto report = [&](const NormAccumulator& acc) {
    NormReport r;
    r.x_minus1 = acc.x_minus1();
    r.x1 = acc.x1();
    r.triple = r.x_minus1 + r.x1;
    r.time_grid = times.times();
    return r;
  };
  out.weighted_sqrt = report(acc_sqrt);
  out.weighted_linear = report(acc_linear);
  if (out.data_norm > 0.0) {
    out.K_sqrt = out.weighted_sqrt.triple / out.data_norm;
    out.K_linear = out.weighted_linear.triple / out.data_norm;
  }
  if (out.valid_samples == 0) out.min_margin = std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace wns
