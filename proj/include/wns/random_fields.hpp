#pragma once

#include <cstdint>
#include <random>

#include "wns/field.hpp"

namespace wns {

/// splitmix64 step; derives independent per-trial seeds from a root seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

/// Complex Gaussian coefficients with modulus scaled by |k|^-slope,
/// Hermitian-symmetrized, zero mean, and Leray-projected on 3-D grids.
/// If band > 0 only modes with max_i |k_i| <= band are populated.
SpectralField random_field(const GridSpec& grid, double slope, std::mt19937_64& rng,
                           int band = 0, bool solenoidal = true);

/// Rescales f so that its X^-1 norm equals target (no-op on a zero field).
SpectralField scale_to_x_minus1(SpectralField f, double target);

}  // namespace wns
