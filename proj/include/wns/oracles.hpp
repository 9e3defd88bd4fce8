#pragma once

#include <array>

#include "wns/field.hpp"

namespace wns {

/// ABC flow (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x) e^{-mu t}.
/// Beltrami with curl u = u, so it is an exact Navier-Stokes solution.
SpectralField beltrami_field(double A, double B, double C, double t, double mu,
                             const GridSpec& grid);

/// a * amplitude * cos(k.x) * e^{-mu |k|^2 t}. Requires a.k = 0 and k
/// retained and nonzero.
SpectralField single_mode_field(const WaveVector& k, const std::array<double, 3>& a,
                                double amplitude, double t, double mu, const GridSpec& grid);

/// Viscous Burgers u_t + u u_x = mu u_xx from u0 = A sin x, by Cole-Hopf:
/// u = -2 mu d/dx log theta with theta solving the heat equation from
/// theta0 = exp(-(A / 2mu)(1 - cos x)). theta is evaluated spectrally on a
/// grid `refine` times finer than `grid`, and u is projected back onto it.
/// Throws Error(overflow) if |A| / mu > 600 (theta0 leaves double range).
SpectralField cole_hopf_burgers(double A, double mu, double t, const GridSpec& grid,
                                int refine = 4);

}  // namespace wns
