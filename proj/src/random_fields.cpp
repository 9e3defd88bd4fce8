#include "wns/random_fields.hpp"

#include <cmath>
#include <cstdlib>

#include "wns/norms.hpp"
#include "wns/spectral_ops.hpp"

namespace wns {

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SpectralField random_field(const GridSpec& grid, double slope, std::mt19937_64& rng, int band,
                           bool solenoidal) {
  SpectralField f(grid);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t modes = grid.mode_count();
  const std::size_t zero = grid.zero_index();
  // Draw the upper half and mirror it.
  for (std::size_t m = zero + 1; m < modes; ++m) {
    const auto& w = grid.wave(m);
    bool inside = true;
    if (band > 0)
      for (int d = 0; d < 3; ++d) inside = inside && std::abs(w.k[d]) <= band;
    const double amp = std::pow(grid.euclid_norm(m), -slope);
    for (int i = 0; i < f.components(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      if (!inside) continue;
      f(m, i) = amp * cplx{re, im} / std::sqrt(2.0);
      f(grid.conjugate_index(m), i) = std::conj(f(m, i));
    }
  }
  if (solenoidal && grid.dims() == 3) f = leray_project(f);
  return f;
}

SpectralField scale_to_x_minus1(SpectralField f, double target) {
  const double norm = x_minus1_norm(f);
  if (norm > 0.0) f *= target / norm;
  return f;
}

}  // namespace wns
