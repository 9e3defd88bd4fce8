#include "wns/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wns/error.hpp"
#include "wns/mild_solver.hpp"
#include "wns/norms.hpp"
#include "wns/random_fields.hpp"

namespace wns {

const char* to_string(Envelope e) {
  switch (e) {
    case Envelope::constant: return "0";
    case Envelope::unit_decay: return "1";
    case Envelope::heat_decay: return "|k|^2";
  }
  return "?";
}

Trajectory random_trajectory(const GridSpec& grid, const TimeGrid& times, double slope,
                             Envelope envelope, std::mt19937_64& rng) {
  const SpectralField f0 = random_field(grid, slope, rng);
  std::vector<SpectralField> fields;
  fields.reserve(times.size());
  for (std::size_t m = 0; m < times.size(); ++m) {
    const double t = times[m];
    switch (envelope) {
      case Envelope::constant: fields.push_back(f0); break;
      case Envelope::unit_decay: fields.push_back(std::exp(-t) * f0); break;
      case Envelope::heat_decay: fields.push_back(heat_propagate(f0, t, 1.0)); break;
    }
  }
  return Trajectory(times, std::move(fields));
}

double bilinear_ratio(const Trajectory& F, const Trajectory& G, double mu) {
  const double nf = triple_norm(F).triple;
  const double ng = triple_norm(G).triple;
  if (nf == 0.0 || ng == 0.0) return 0.0;
  const double nb = triple_norm(duhamel_bilinear(F, G, mu)).triple;
  return nb / ((1.0 + 1.0 / mu) * nf * ng);
}

ConstantEstimate measure_bilinear_constant(double mu, int trials, const GridSpec& grid,
                                           const TimeGrid& times, std::uint64_t seed) {
  require(trials >= 1, ErrorCode::invalid_argument, "need at least one trial");
  require(mu > 0.0, ErrorCode::invalid_argument, "viscosity must be > 0");
  static constexpr double kSlopes[] = {2.0, 3.0, 4.0};
  static constexpr Envelope kEnvelopes[] = {Envelope::constant, Envelope::unit_decay,
                                            Envelope::heat_decay};
  ConstantEstimate est;
  est.mu = mu;
  est.trials = trials;
  est.seed = seed;
  est.sampler =
      "complex Gaussian |k|^-beta, beta in {2,3,4}; Hermitian, Leray-projected; "
      "envelope e^{-gamma t}, gamma in {0,1,|k|^2}";
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    std::uniform_int_distribution<int> pick(0, 2);
    double ratio = 0.0;
    std::ostringstream desc;
    // Redraw on a zero-norm pair.
    for (int attempt = 0; attempt < 8; ++attempt) {
      const double bf = kSlopes[pick(rng)];
      const Envelope ef = kEnvelopes[pick(rng)];
      const double bg = kSlopes[pick(rng)];
      const Envelope eg = kEnvelopes[pick(rng)];
      const Trajectory F = random_trajectory(grid, times, bf, ef, rng);
      const Trajectory G = random_trajectory(grid, times, bg, eg, rng);
      if (triple_norm(F).triple == 0.0 || triple_norm(G).triple == 0.0) continue;
      ratio = bilinear_ratio(F, G, mu);
      desc.str("");
      desc << "trial=" << trial << " F:beta=" << bf << ",gamma=" << to_string(ef)
           << " G:beta=" << bg << ",gamma=" << to_string(eg);
      break;
    }
    require(std::isfinite(ratio), ErrorCode::invalid_argument, "non-finite bilinear ratio");
    est.ratios.push_back(ratio);
    if (ratio > est.C_empirical || trial == 0) {
      est.C_empirical = std::max(est.C_empirical, ratio);
      est.argmax_descriptor = desc.str();
    }
  }
  est.eta = est.C_empirical * (1.0 + 1.0 / mu);
  est.epsilon0 = est.C_empirical > 0.0 ? epsilon0(mu, est.C_empirical) : 0.0;
  return est;
}

double epsilon0(double mu, double C) {
  require(mu > 0.0 && C > 0.0, ErrorCode::invalid_argument, "epsilon0 needs mu > 0 and C > 0");
  return mu * mu / (4.0 * C * (1.0 + mu) * (1.0 + mu));
}

double epsilon0_alpha(double mu, double C, double alpha) {
  require(mu > 0.0 && C > 0.0, ErrorCode::invalid_argument, "epsilon0 needs mu > 0 and C > 0");
  require(alpha >= 0.0 && alpha < 1.0, ErrorCode::invalid_argument, "alpha must lie in [0, 1)");
  const double g = 1.0 + 1.0 / ((1.0 - alpha) * mu);
  return 1.0 / (4.0 * C * g * g);
}

bool contraction_precondition(double x0_norm, double eta) { return 4.0 * eta * x0_norm < 1.0; }

double aux_a(double z) { return z - 0.5 * z * z; }

AuxSweep sweep_aux_a(double lo, double hi, long samples) {
  require(samples >= 2 && hi > lo, ErrorCode::invalid_argument, "bad sweep range");
  AuxSweep s;
  s.samples = samples;
  s.sup = -std::numeric_limits<double>::infinity();
  for (long q = 0; q < samples; ++q) {
    const double z = lo + (hi - lo) * double(q) / double(samples - 1);
    const double a = aux_a(z);
    if (a > s.sup) {
      s.sup = a;
      s.argmax = z;
    }
  }
  return s;
}

long DiscretenessReport::total_violations() const {
  return discreteness_euclid.violations + discreteness_l1.violations +
         triangle_euclid.violations + triangle_l1.violations + heat_weight_euclid.violations +
         heat_weight_aux.violations + heat_weight_l1.violations;
}

namespace {

void record(InequalityCount& c, double exponent, double limit) {
  if (c.checks == 0 || exponent > c.max_exponent) c.max_exponent = exponent;
  ++c.checks;
  // Euclidean triangle equality holds for collinear vectors; allow for the
  // rounding of the square roots.
  if (exponent > limit + 1e-12 * std::max(1.0, std::abs(limit))) ++c.violations;
}

}  // namespace

DiscretenessReport verify_discreteness_inequality(const GridSpec& grid, double mu, double alpha,
                                                  const TimeGrid& times) {
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  require(mu > 0.0, ErrorCode::invalid_argument, "viscosity must be > 0");
  DiscretenessReport r;
  r.mu = mu;
  r.alpha = alpha;
  r.n = grid.n();
  const std::size_t zero = grid.zero_index();
  const std::size_t modes = grid.mode_count();

  for (std::size_t a = 0; a < times.size(); ++a) {
    for (std::size_t b = a; b < times.size(); ++b) {
      const double dt = times[b] - times[a];
      ++r.time_pairs;
      for (std::size_t m = 0; m < modes; ++m) {
        if (m == zero) continue;
        const double k = grid.euclid_norm(m);
        const double k2 = grid.norm_sq(m);
        record(r.discreteness_euclid, alpha * mu * dt * k * (1.0 - k), 0.0);
        record(r.discreteness_l1, alpha * mu * dt * (grid.l1_norm(m) - k2), 0.0);
      }
    }
  }

  for (std::size_t mk = 0; mk < modes; ++mk) {
    const WaveVector& k = grid.wave(mk);
    for (std::size_t ml = 0; ml < modes; ++ml) {
      const WaveVector& l = grid.wave(ml);
      const WaveVector d = k - l;
      const double gap_e = k.euclid_norm() - l.euclid_norm() - d.euclid_norm();
      const double gap_1 = double(k.l1_norm() - l.l1_norm() - d.l1_norm());
      for (std::size_t q = 0; q < times.size(); ++q) {
        record(r.triangle_euclid, alpha * mu * times[q] * gap_e, 0.0);
        record(r.triangle_l1, alpha * mu * times[q] * gap_1, 0.0);
      }
    }
  }

  for (std::size_t q = 0; q < times.size(); ++q) {
    const double st = std::sqrt(times[q]);
    for (std::size_t m = 0; m < modes; ++m) {
      if (m == zero) continue;
      const double k = grid.euclid_norm(m);
      const double k2 = grid.norm_sq(m);
      record(r.heat_weight_euclid, mu * st * k - mu * times[q] * k2, mu / 2.0);
      record(r.heat_weight_aux, mu * aux_a(st * k), mu / 2.0);
      record(r.heat_weight_l1, mu * (st * grid.l1_norm(m) - 0.5 * times[q] * k2), 1.5 * mu);
    }
  }
  return r;
}

}  // namespace wns
