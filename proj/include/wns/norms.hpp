#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wns/field.hpp"
#include "wns/trajectory.hpp"

namespace wns {

/// Norms of a trajectory on its sampled time grid. The sup over t >= 0 is a
/// max over samples, the time integral a composite trapezoid on [0, T].
struct NormReport {
  double x_minus1 = 0.0;
  double x1 = 0.0;
  double triple = 0.0;
  std::vector<double> time_grid;
  std::string quadrature = "trapezoid";
  /// Heat-decay estimate of the neglected integral over [T, inf), if known.
  std::optional<double> x1_tail_estimate;
};

/// sum over k != 0 and components i of |u_i(k)| / |k|.
/// Throws Error(symmetry_violation) if the zero mode is not exactly zero.
double x_minus1_norm(const SpectralField& f);

/// sum over (k, i) of sup_t |u_i(t,k)| / |k| (sup first, then sum).
double script_x_minus1_norm(const Trajectory& v);

/// sum over (k, i) of the trapezoid integral of |k| |u_i(t,k)| on [0, T].
double script_x1_norm(const Trajectory& v);

NormReport triple_norm(const Trajectory& v);

/// sum over (k, i) of |u_i(T,k)| / (mu |k|): the tail integral if every
/// mode kept decaying like the heat flow beyond the horizon.
double x1_tail_estimate(const Trajectory& v, double mu);

/// Streaming version of the trajectory norms. Fields must be added in
/// increasing time order; the first one must be at the first grid time.
class NormAccumulator {
 public:
  NormAccumulator(const GridSpec& grid, int components);

  void add(double t, const SpectralField& f);

  double x_minus1() const;
  double x1() const;
  double triple() const { return x_minus1() + x1(); }

 private:
  GridSpec grid_;
  int components_;
  std::vector<double> sup_;
  std::vector<double> integral_;
  std::vector<double> previous_;
  double previous_t_ = 0.0;
  bool started_ = false;
};

/// Fourier multiplier used by the exponential weights: sum_i |k_i| or |k|.
enum class Multiplier { l1, euclid };

double multiplier_value(const GridSpec& grid, std::size_t mode, Multiplier mult);

/// Time profile phi(t) of a weight e^{phi(t) |D|}.
using WeightProfile = std::function<double(double)>;

/// Multiplies u(t,k) by e^{phi(t) m(k)}. Requires phi(0) >= 0 and phi
/// nondecreasing on the grid. Throws Error(overflow) if
/// phi(T) * max m(k) > 700.
Trajectory apply_weight(const Trajectory& v, const WeightProfile& phi,
                        Multiplier mult = Multiplier::l1);

/// Multiplies u(t,k) by e^{-phi(t) m(k)}; inverse of apply_weight.
Trajectory remove_weight(const Trajectory& v, const WeightProfile& phi,
                         Multiplier mult = Multiplier::l1);

/// Single-field form: u(k) e^{exponent * m(k)}.
SpectralField weight_field(const SpectralField& f, double exponent,
                           Multiplier mult = Multiplier::l1);

}  // namespace wns
