#pragma once

#include <cstddef>
#include <vector>

#include "wns/field.hpp"

namespace wns {

/// Sample times 0 = t_0 < t_1 < ... < t_M with M >= 2.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);

  static TimeGrid uniform(double horizon, int intervals);
  /// t_0 = 0 and t_m = T r^{M-m} for m >= 1, with r chosen so t_1 = first.
  static TimeGrid geometric(double first, double horizon, int intervals);

  std::size_t size() const { return times_.size(); }
  std::size_t intervals() const { return times_.size() - 1; }
  double operator[](std::size_t m) const { return times_[m]; }
  double horizon() const { return times_.back(); }
  const std::vector<double>& times() const { return times_; }

  bool operator==(const TimeGrid&) const = default;

 private:
  std::vector<double> times_;
};

/// One SpectralField per sample time, all on the same grid.
class Trajectory {
 public:
  Trajectory(GridSpec grid, int components, TimeGrid times);
  Trajectory(TimeGrid times, std::vector<SpectralField> fields);

  const GridSpec& grid() const { return fields_.front().grid(); }
  int components() const { return fields_.front().components(); }
  const TimeGrid& times() const { return times_; }
  std::size_t size() const { return fields_.size(); }

  SpectralField& operator[](std::size_t m) { return fields_[m]; }
  const SpectralField& operator[](std::size_t m) const { return fields_[m]; }
  const std::vector<SpectralField>& fields() const { return fields_; }

  bool same_shape(const Trajectory& o) const {
    return times_ == o.times_ && fields_.front().same_shape(o.fields_.front());
  }

  Trajectory& operator+=(const Trajectory& o);
  Trajectory& operator-=(const Trajectory& o);
  Trajectory& operator*=(double s);

 private:
  TimeGrid times_;
  std::vector<SpectralField> fields_;
};

Trajectory operator+(Trajectory a, const Trajectory& b);
Trajectory operator-(Trajectory a, const Trajectory& b);
Trajectory operator*(double s, Trajectory a);

}  // namespace wns
