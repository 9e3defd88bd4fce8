#include "wns/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wns/error.hpp"

namespace wns {

// ---- TimeGrid / Trajectory ------------------------------------------------

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  require(times_.size() >= 3, ErrorCode::invalid_argument, "time grid needs M >= 2 intervals");
  require(times_.front() == 0.0, ErrorCode::invalid_argument, "time grid must start at t = 0");
  for (std::size_t m = 1; m < times_.size(); ++m)
    require(times_[m] > times_[m - 1], ErrorCode::invalid_argument,
            "time grid must be strictly increasing");
}

TimeGrid TimeGrid::uniform(double horizon, int intervals) {
  require(horizon > 0.0 && intervals >= 2, ErrorCode::invalid_argument,
          "uniform time grid needs T > 0 and M >= 2");
  std::vector<double> t(static_cast<std::size_t>(intervals) + 1);
  for (int m = 0; m <= intervals; ++m) t[m] = horizon * m / intervals;
  t.back() = horizon;
  return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::geometric(double first, double horizon, int intervals) {
  require(intervals >= 2 && first > 0.0 && first < horizon, ErrorCode::invalid_argument,
          "geometric time grid needs 0 < t_1 < T and M >= 2");
  const double log_ratio = std::log(first / horizon) / (intervals - 1);
  std::vector<double> t(static_cast<std::size_t>(intervals) + 1, 0.0);
  for (int m = 1; m <= intervals; ++m) t[m] = horizon * std::exp(log_ratio * (intervals - m));
  t[1] = first;
  t.back() = horizon;
  return TimeGrid(std::move(t));
}

Trajectory::Trajectory(GridSpec grid, int components, TimeGrid times) : times_(std::move(times)) {
  fields_.assign(times_.size(), SpectralField(grid, components));
}

Trajectory::Trajectory(TimeGrid times, std::vector<SpectralField> fields)
    : times_(std::move(times)), fields_(std::move(fields)) {
  require(fields_.size() == times_.size(), ErrorCode::shape_mismatch,
          "trajectory needs one field per sample time");
  for (const auto& f : fields_)
    require(f.same_shape(fields_.front()), ErrorCode::shape_mismatch,
            "trajectory fields must share a grid");
}

Trajectory& Trajectory::operator+=(const Trajectory& o) {
  require(same_shape(o), ErrorCode::shape_mismatch, "trajectory shapes differ");
  for (std::size_t m = 0; m < fields_.size(); ++m) fields_[m] += o.fields_[m];
  return *this;
}

Trajectory& Trajectory::operator-=(const Trajectory& o) {
  require(same_shape(o), ErrorCode::shape_mismatch, "trajectory shapes differ");
  for (std::size_t m = 0; m < fields_.size(); ++m) fields_[m] -= o.fields_[m];
  return *this;
}

Trajectory& Trajectory::operator*=(double s) {
  for (auto& f : fields_) f *= s;
  return *this;
}

Trajectory operator+(Trajectory a, const Trajectory& b) { return a += b; }
Trajectory operator-(Trajectory a, const Trajectory& b) { return a -= b; }
Trajectory operator*(double s, Trajectory a) { return a *= s; }

// ---- norms -----------------------------------------------------------------

double x_minus1_norm(const SpectralField& f) {
  require(f.has_zero_mean(), ErrorCode::symmetry_violation,
          "X^-1 norm requires a mean-zero field");
  const auto& grid = f.grid();
  const std::size_t zero = grid.zero_index();
  double sum = 0.0;
  for (std::size_t m = 0; m < grid.mode_count(); ++m) {
    if (m == zero) continue;
    const double inv = 1.0 / grid.euclid_norm(m);
    for (int i = 0; i < f.components(); ++i) sum += std::abs(f(m, i)) * inv;
  }
  return sum;
}

NormAccumulator::NormAccumulator(const GridSpec& grid, int components)
    : grid_(grid), components_(components) {
  const std::size_t size = grid.mode_count() * static_cast<std::size_t>(components);
  sup_.assign(size, 0.0);
  integral_.assign(size, 0.0);
  previous_.assign(size, 0.0);
}

void NormAccumulator::add(double t, const SpectralField& f) {
  require(f.grid() == grid_ && f.components() == components_, ErrorCode::shape_mismatch,
          "norm accumulator shape mismatch");
  require(f.has_zero_mean(), ErrorCode::symmetry_violation,
          "trajectory norms require mean-zero samples");
  require(!started_ || t > previous_t_, ErrorCode::invalid_argument,
          "samples must be added in increasing time order");
  const double half_dt = started_ ? 0.5 * (t - previous_t_) : 0.0;
  const std::size_t zero = grid_.zero_index();
  for (std::size_t m = 0; m < grid_.mode_count(); ++m) {
    if (m == zero) continue;
    const double k = grid_.euclid_norm(m);
    for (int i = 0; i < components_; ++i) {
      const std::size_t q = m * components_ + i;
      const double a = std::abs(f(m, i));
      sup_[q] = std::max(sup_[q], a / k);
      const double g = k * a;
      if (started_) integral_[q] += half_dt * (previous_[q] + g);
      previous_[q] = g;
    }
  }
  previous_t_ = t;
  started_ = true;
}

double NormAccumulator::x_minus1() const {
  double s = 0.0;
  for (double v : sup_) s += v;
  return s;
}

double NormAccumulator::x1() const {
  double s = 0.0;
  for (double v : integral_) s += v;
  return s;
}

namespace {

NormAccumulator accumulate(const Trajectory& v) {
  NormAccumulator acc(v.grid(), v.components());
  for (std::size_t m = 0; m < v.size(); ++m) acc.add(v.times()[m], v[m]);
  return acc;
}

}  // namespace

double script_x_minus1_norm(const Trajectory& v) { return accumulate(v).x_minus1(); }

double script_x1_norm(const Trajectory& v) { return accumulate(v).x1(); }

NormReport triple_norm(const Trajectory& v) {
  const auto acc = accumulate(v);
  NormReport r;
  r.x_minus1 = acc.x_minus1();
  r.x1 = acc.x1();
  r.triple = r.x_minus1 + r.x1;
  r.time_grid = v.times().times();
  return r;
}

double x1_tail_estimate(const Trajectory& v, double mu) {
  require(mu > 0.0, ErrorCode::invalid_argument, "viscosity must be positive");
  return x_minus1_norm(v[v.size() - 1]) / mu;
}

double multiplier_value(const GridSpec& grid, std::size_t mode, Multiplier mult) {
  return mult == Multiplier::l1 ? double(grid.l1_norm(mode)) : grid.euclid_norm(mode);
}

SpectralField weight_field(const SpectralField& f, double exponent, Multiplier mult) {
  SpectralField out = f;
  const auto& grid = f.grid();
  for (std::size_t m = 0; m < grid.mode_count(); ++m) {
    const double w = std::exp(exponent * multiplier_value(grid, m, mult));
    for (int i = 0; i < f.components(); ++i) out(m, i) *= w;
  }
  return out;
}

namespace {

Trajectory weight_trajectory(const Trajectory& v, const WeightProfile& phi, Multiplier mult,
                             double sign) {
  const auto& times = v.times();
  const double max_mult = mult == Multiplier::l1 ? double(v.grid().max_l1_norm())
                                                 : std::sqrt(double(v.grid().max_norm_sq()));
  const double peak = std::abs(phi(times.horizon())) * max_mult;
  if (peak > 700.0) {
    std::ostringstream msg;
    msg << "weight exponent phi(T) * max multiplier = " << peak
        << " exceeds 700; e^{phi |D|} would overflow double precision";
    fail(ErrorCode::overflow, msg.str());
  }
  std::vector<SpectralField> out;
  out.reserve(v.size());
  for (std::size_t m = 0; m < v.size(); ++m)
    out.push_back(weight_field(v[m], sign * phi(times[m]), mult));
  return Trajectory(times, std::move(out));
}

void check_profile(const Trajectory& v, const WeightProfile& phi) {
  const auto& times = v.times();
  require(phi(0.0) >= 0.0, ErrorCode::invalid_argument, "weight profile needs phi(0) >= 0");
  for (std::size_t m = 1; m < times.size(); ++m)
    require(phi(times[m]) >= phi(times[m - 1]), ErrorCode::invalid_argument,
            "weight profile must be nondecreasing");
}

}  // namespace

Trajectory apply_weight(const Trajectory& v, const WeightProfile& phi, Multiplier mult) {
  check_profile(v, phi);
  return weight_trajectory(v, phi, mult, 1.0);
}

Trajectory remove_weight(const Trajectory& v, const WeightProfile& phi, Multiplier mult) {
  check_profile(v, phi);
  return weight_trajectory(v, phi, mult, -1.0);
}

}  // namespace wns
