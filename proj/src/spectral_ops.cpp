#include "wns/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

#include "wns/error.hpp"
#include "wns/transform.hpp"

namespace wns {
namespace {

void check_pair(const SpectralField& F, const SpectralField& G) {
  require(F.same_shape(G), ErrorCode::shape_mismatch, "product operands live on different grids");
}

void project_in_place(SpectralField& f) {
  const auto& grid = f.grid();
  const std::size_t modes = grid.mode_count();
  const std::size_t zero = grid.zero_index();
  for (std::size_t m = 0; m < modes; ++m) {
    if (m == zero) continue;
    const auto& k = grid.wave(m).k;
    const cplx dot = double(k[0]) * f(m, 0) + double(k[1]) * f(m, 1) + double(k[2]) * f(m, 2);
    const cplx s = dot / double(grid.norm_sq(m));
    for (int i = 0; i < 3; ++i) f(m, i) -= double(k[i]) * s;
  }
}

}  // namespace

SpectralField leray_project(const SpectralField& f) {
  require(f.grid().dims() == 3 && f.components() == 3, ErrorCode::invalid_argument,
          "Leray projection needs a 3-D vector field");
  require(f.has_zero_mean(), ErrorCode::symmetry_violation,
          "Leray projection is undefined at k = 0; pin the zero mode first");
  SpectralField out = f;
  project_in_place(out);
  return out;
}

double divergence_defect(const SpectralField& f) {
  require(f.grid().dims() == 3 && f.components() == 3, ErrorCode::invalid_argument,
          "divergence needs a 3-D vector field");
  const auto& grid = f.grid();
  double defect = 0.0;
  for (std::size_t m = 0; m < grid.mode_count(); ++m) {
    const auto& k = grid.wave(m).k;
    const cplx dot = double(k[0]) * f(m, 0) + double(k[1]) * f(m, 1) + double(k[2]) * f(m, 2);
    defect = std::max(defect, std::abs(dot));
  }
  return defect;
}

TensorField tensor_product_pseudospectral(const SpectralField& F, const SpectralField& G) {
  check_pair(F, G);
  const int c = F.components();
  auto& tr = cached_transformer(F.grid(), F.grid().padded_n());
  const std::size_t np = tr.physical_size();
  const bool same = &F == &G;

  std::vector<std::vector<double>> f(c, std::vector<double>(np));
  std::vector<std::vector<double>> g;
  for (int i = 0; i < c; ++i) tr.to_physical(F, i, f[i]);
  if (!same) {
    g.assign(c, std::vector<double>(np));
    for (int j = 0; j < c; ++j) tr.to_physical(G, j, g[j]);
  }
  const auto& gref = same ? f : g;

  TensorField out(F.grid(), c);
  std::vector<double> prod(np);
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) {
      if (same && j < i) {
        // symmetric: copy the transposed entry
        for (std::size_t m = 0; m < F.mode_count(); ++m) out(m, i, j) = out(m, j, i);
        continue;
      }
      const auto& a = f[i];
      const auto& b = gref[j];
      for (std::size_t q = 0; q < np; ++q) prod[q] = a[q] * b[q];
      tr.to_spectral(prod, out, i, j);
    }
  }
  return out;
}

TensorField tensor_product_direct(const SpectralField& F, const SpectralField& G) {
  check_pair(F, G);
  const auto& grid = F.grid();
  const int c = F.components();
  const std::size_t modes = grid.mode_count();
  TensorField out(grid, c);
  for (std::size_t mk = 0; mk < modes; ++mk) {
    const WaveVector& k = grid.wave(mk);
    for (std::size_t ml = 0; ml < modes; ++ml) {
      const auto mr = grid.index_of(k - grid.wave(ml));
      if (!mr) continue;
      for (int i = 0; i < c; ++i) {
        const cplx fi = F(ml, i);
        if (fi == cplx{}) continue;
        for (int j = 0; j < c; ++j) out(mk, i, j) += fi * G(*mr, j);
      }
    }
  }
  return out;
}

SpectralField nonlinear_term(const SpectralField& F, const SpectralField& G,
                             ProductMethod method) {
  check_pair(F, G);
  const auto& grid = F.grid();
  const int c = F.components();
  if (grid.dims() == 3) {
    require(F.has_zero_mean() && G.has_zero_mean(), ErrorCode::symmetry_violation,
            "nonlinear term operands must have zero mean");
  }
  const TensorField t = method == ProductMethod::direct ? tensor_product_direct(F, G)
                                                       : tensor_product_pseudospectral(F, G);
  SpectralField out(grid, c);
  const cplx I{0.0, 1.0};
  for (std::size_t m = 0; m < grid.mode_count(); ++m) {
    const auto& k = grid.wave(m).k;
    for (int i = 0; i < c; ++i) {
      cplx acc{};
      for (int j = 0; j < c; ++j) acc += double(k[j]) * t(m, i, j);
      out(m, i) = I * acc;
    }
  }
  out.pin_zero_mode();
  if (grid.dims() == 3) project_in_place(out);
  return out;
}

SpectralField convective_term(const SpectralField& F, const SpectralField& G,
                              ProductMethod method) {
  SpectralField out = nonlinear_term(F, G, method);
  if (F.grid().dims() == 1) out *= 0.5;
  return out;
}

}  // namespace wns
