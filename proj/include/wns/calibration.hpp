#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wns/trajectory.hpp"

namespace wns {

/// Empirical constant of |||B(F,G)||| <= C (1 + 1/mu) |||F||| |||G|||.
/// C_empirical is a sup over sampled pairs, hence a lower bound for the
/// true operator constant.
struct ConstantEstimate {
  double mu = 0.0;
  int trials = 0;
  double C_empirical = 0.0;
  double eta = 0.0;      // C (1 + 1/mu)
  double epsilon0 = 0.0; // mu^2 / (4 C (1 + mu)^2)
  std::string argmax_descriptor;
  std::string sampler;
  std::uint64_t seed = 0;
  std::vector<double> ratios; // one per trial, in trial order
};

/// Time envelope of a sampled trajectory: e^{-gamma t} with gamma = 0, 1
/// or |k|^2 (mode by mode).
enum class Envelope { constant, unit_decay, heat_decay };

const char* to_string(Envelope e);

/// F(t, k) = F0(k) e^{-gamma t} with F0 from random_field(grid, slope).
Trajectory random_trajectory(const GridSpec& grid, const TimeGrid& times, double slope,
                             Envelope envelope, std::mt19937_64& rng);

/// |||B(F,G)||| / ((1 + 1/mu) |||F||| |||G|||), or 0 when F or G vanishes.
double bilinear_ratio(const Trajectory& F, const Trajectory& G, double mu);

/// Draws `trials` independent pairs (per-trial seeds derived from `seed`)
/// with slopes in {2, 3, 4} and envelopes in {0, 1, |k|^2}.
ConstantEstimate measure_bilinear_constant(double mu, int trials, const GridSpec& grid,
                                           const TimeGrid& times, std::uint64_t seed);

/// mu^2 / (4 C (1 + mu)^2).
double epsilon0(double mu, double C);

/// Data-size threshold of the alpha-weighted fixed point, obtained by
/// replacing mu with (1 - alpha) mu in both the heat bound and the bilinear
/// constant: 1 / (4 C (1 + 1/((1 - alpha) mu))^2). Reduces to epsilon0 as
/// alpha -> 0 and vanishes as alpha -> 1.
double epsilon0_alpha(double mu, double C, double alpha);

/// 4 eta x0_norm < 1.
bool contraction_precondition(double x0_norm, double eta);

/// a(z) = z - z^2 / 2.
double aux_a(double z);

struct AuxSweep {
  double sup = 0.0;
  double argmax = 0.0;
  long samples = 0;
};

/// Dense uniform sampling of aux_a on [lo, hi].
AuxSweep sweep_aux_a(double lo, double hi, long samples);

struct InequalityCount {
  long checks = 0;
  long violations = 0;
  double max_exponent = 0.0; // largest exponent observed (<= 0 expected)
};

struct DiscretenessReport {
  double mu = 0.0;
  double alpha = 0.0;
  int n = 0;
  long time_pairs = 0;
  /// alpha mu (t - s) |k| (1 - |k|) <= 0 with the Euclidean |k|.
  InequalityCount discreteness_euclid;
  /// alpha mu (t - s) (|k|_1 - |k|^2) <= 0 with the l1 weight multiplier.
  InequalityCount discreteness_l1;
  /// alpha mu s (|k| - |l| - |k - l|) <= 0 over all retained (k, l) pairs.
  InequalityCount triangle_euclid;
  InequalityCount triangle_l1;
  /// mu sqrt(t)|k| - mu t |k|^2 <= mu / 2.
  InequalityCount heat_weight_euclid;
  /// mu a(sqrt(t)|k|) <= mu / 2, the constant c = e^{mu/2}.
  InequalityCount heat_weight_aux;
  /// mu (sqrt(t)|k|_1 - t|k|^2 / 2) <= 3 mu / 2 (l1 multiplier variant).
  InequalityCount heat_weight_l1;

  long total_violations() const;
};

/// Exhaustive check over every retained k != 0, every retained pair (k, l),
/// and every pair s <= t of grid times.
DiscretenessReport verify_discreteness_inequality(const GridSpec& grid, double mu, double alpha,
                                                  const TimeGrid& times);

}  // namespace wns
