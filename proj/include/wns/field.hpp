#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wns/grid.hpp"

namespace wns {

using cplx = std::complex<double>;

/// Truncated Fourier coefficients of a real periodic field, one complex
/// value per (retained wavevector, component). Storage is mode-major: the
/// components of one wavevector are contiguous.
class SpectralField {
 public:
  SpectralField(GridSpec grid, int components);
  explicit SpectralField(GridSpec grid) : SpectralField(grid, components_for(grid)) {}

  const GridSpec& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t mode_count() const { return grid_.mode_count(); }

  cplx& operator()(std::size_t mode, int comp) { return data_[mode * components_ + comp]; }
  const cplx& operator()(std::size_t mode, int comp) const {
    return data_[mode * components_ + comp];
  }

  std::span<cplx> coefficients() { return data_; }
  std::span<const cplx> coefficients() const { return data_; }

  double max_abs() const;
  /// max over (k, i) of |u(-k) - conj(u(k))|.
  double hermitian_defect() const;
  bool is_hermitian(double rel_tol = 1e-12) const;
  bool has_zero_mean() const;
  void pin_zero_mode();
  /// Replaces u(k) by (u(k) + conj(u(-k)))/2.
  void symmetrize();

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  /// this += s * o
  void axpy(double s, const SpectralField& o);

  bool same_shape(const SpectralField& o) const {
    return grid_ == o.grid_ && components_ == o.components_;
  }

 private:
  GridSpec grid_;
  int components_;
  std::vector<cplx> data_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Fourier coefficients of the c x c tensor (F_i G_j), stored per mode as a
/// row-major c x c block.
class TensorField {
 public:
  TensorField(GridSpec grid, int components);

  const GridSpec& grid() const { return grid_; }
  int components() const { return components_; }

  cplx& operator()(std::size_t mode, int i, int j) {
    return data_[(mode * components_ + i) * components_ + j];
  }
  const cplx& operator()(std::size_t mode, int i, int j) const {
    return data_[(mode * components_ + i) * components_ + j];
  }
  std::span<const cplx> coefficients() const { return data_; }
  double max_abs() const;

 private:
  GridSpec grid_;
  int components_;
  std::vector<cplx> data_;
};

/// Real samples on the uniform n^dims grid x_j = 2 pi j / n. Components are
/// stored in consecutive blocks; within a block the last axis varies fastest.
struct PhysicalField {
  GridSpec grid;
  int components;
  std::vector<double> values;

  PhysicalField(GridSpec g, int c)
      : grid(g), components(c), values(g.physical_size() * static_cast<std::size_t>(c), 0.0) {}

  std::span<double> component(int c) {
    return {values.data() + grid.physical_size() * c, grid.physical_size()};
  }
  std::span<const double> component(int c) const {
    return {values.data() + grid.physical_size() * c, grid.physical_size()};
  }
};

}  // namespace wns
