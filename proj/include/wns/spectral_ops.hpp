#pragma once

#include "wns/field.hpp"

namespace wns {

enum class ProductMethod { pseudospectral, direct };

/// u(k) - k (k.u(k)) / |k|^2 at every k != 0; the zero mode is left as is.
/// Requires a 3-D field with zero mean.
SpectralField leray_project(const SpectralField& f);

/// max_k |k . u(k)|.
double divergence_defect(const SpectralField& f);

/// Coefficients of F_i G_j on the retained set, computed through physical
/// space on a 3/2-padded grid. Padding by 3/2 makes the result identical to
/// the truncated lattice convolution for every retained input.
TensorField tensor_product_pseudospectral(const SpectralField& F, const SpectralField& G);

/// sum over retained l with k-l retained of F_i(l) G_j(k-l). Cost grows as
/// the square of the mode count; intended for n <= 16.
TensorField tensor_product_direct(const SpectralField& F, const SpectralField& G);

/// P div(F (x) G): i sum_j k_j (F_i G_j)^(k), Leray-projected, zero mode
/// pinned. On 1-D grids this is d/dx(F G) with no projection.
SpectralField nonlinear_term(const SpectralField& F, const SpectralField& G,
                             ProductMethod method = ProductMethod::pseudospectral);

/// Quadratic term Q(F, G) of the evolution u_t = mu Lap u - Q(u, u):
/// the Navier-Stokes nonlinearity P div(F (x) G) in 3-D, and
/// (1/2) d/dx(F G) for Burgers, so that Q(u, u) = u u_x.
SpectralField convective_term(const SpectralField& F, const SpectralField& G,
                              ProductMethod method = ProductMethod::pseudospectral);

}  // namespace wns
