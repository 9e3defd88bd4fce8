#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "wns/field.hpp"

namespace wns {

/// Real-to-complex FFT between retained coefficients of a GridSpec and real
/// samples on a physical grid with `physical_n` points per axis
/// (physical_n >= n). Coefficient convention: f(x) = sum_k f^(k) e^{ik.x},
/// f^(k) = (2 pi)^-d int f e^{-ik.x} dx. Plans are created with
/// FFTW_ESTIMATE so results are bit-reproducible run to run.
class Transformer {
 public:
  Transformer(const GridSpec& grid, int physical_n);
  ~Transformer();
  Transformer(const Transformer&) = delete;
  Transformer& operator=(const Transformer&) = delete;

  const GridSpec& grid() const { return grid_; }
  int physical_n() const { return physical_n_; }
  std::size_t physical_size() const { return physical_size_; }

  /// Synthesizes component `comp` of f on the physical grid.
  void to_physical(const SpectralField& f, int comp, std::span<double> out);
  /// Analyzes real samples and stores the retained coefficients.
  void to_spectral(std::span<const double> in, SpectralField& f, int comp);
  void to_spectral(std::span<const double> in, TensorField& t, int i, int j);

 private:
  template <class Store>
  void analyze(std::span<const double> in, Store&& store);

  GridSpec grid_;
  int physical_n_;
  std::size_t physical_size_;
  std::size_t spectrum_size_;
  double* real_ = nullptr;
  void* spectrum_ = nullptr;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
  // Half-spectrum slot of each retained mode, or of its negative when the
  // last component is negative (flagged by `conjugated_`).
  std::vector<std::size_t> slot_;
  std::vector<char> conjugated_;
};

/// Per-thread transformer cache keyed by (grid, physical_n).
Transformer& cached_transformer(const GridSpec& grid, int physical_n);

/// Samples every component of f on the unpadded n^dims grid.
/// Throws Error(symmetry_violation) if f is not Hermitian to 1e-12 relative.
PhysicalField transform_to_physical(const SpectralField& f);

/// Inverse of transform_to_physical. The zero mode is reported as computed;
/// callers decide whether to pin it. Content outside the retained set
/// (the Nyquist planes) is discarded.
SpectralField transform_to_spectral(const PhysicalField& samples);

}  // namespace wns
