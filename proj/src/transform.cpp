#include "wns/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "wns/error.hpp"

namespace wns {
namespace {

// The FFTW planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t wrap(int k, int n) { return static_cast<std::size_t>(k < 0 ? k + n : k); }

}  // namespace

Transformer::Transformer(const GridSpec& grid, int physical_n)
    : grid_(grid), physical_n_(physical_n) {
  require(physical_n >= grid.n(), ErrorCode::invalid_argument,
          "physical grid must have at least n points per axis");
  const int d = grid.dims();
  const std::size_t np = static_cast<std::size_t>(physical_n);
  const std::size_t half = np / 2 + 1;
  physical_size_ = d == 1 ? np : np * np * np;
  spectrum_size_ = d == 1 ? half : np * np * half;

  real_ = fftw_alloc_real(physical_size_);
  auto* spec = fftw_alloc_complex(spectrum_size_);
  spectrum_ = spec;
  {
    std::lock_guard lock(planner_mutex());
    if (d == 1) {
      forward_plan_ = fftw_plan_dft_r2c_1d(physical_n, real_, spec, FFTW_ESTIMATE);
      backward_plan_ = fftw_plan_dft_c2r_1d(physical_n, spec, real_, FFTW_ESTIMATE);
    } else {
      forward_plan_ =
          fftw_plan_dft_r2c_3d(physical_n, physical_n, physical_n, real_, spec, FFTW_ESTIMATE);
      backward_plan_ =
          fftw_plan_dft_c2r_3d(physical_n, physical_n, physical_n, spec, real_, FFTW_ESTIMATE);
    }
  }

  const std::size_t modes = grid.mode_count();
  slot_.resize(modes);
  conjugated_.resize(modes);
  for (std::size_t m = 0; m < modes; ++m) {
    WaveVector w = grid.wave(m);
    const int last = w.k[d - 1];
    conjugated_[m] = last < 0;
    if (last < 0) w = -w;
    if (d == 1) {
      slot_[m] = static_cast<std::size_t>(w.k[0]);
    } else {
      slot_[m] = (wrap(w.k[0], physical_n) * np + wrap(w.k[1], physical_n)) * half +
                 static_cast<std::size_t>(w.k[2]);
    }
  }
}

Transformer::~Transformer() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  fftw_free(real_);
  fftw_free(spectrum_);
}

void Transformer::to_physical(const SpectralField& f, int comp, std::span<double> out) {
  require(f.grid() == grid_, ErrorCode::shape_mismatch, "transformer grid mismatch");
  require(out.size() == physical_size_, ErrorCode::shape_mismatch, "physical buffer size");
  auto* spec = reinterpret_cast<cplx*>(spectrum_);
  std::fill(spec, spec + spectrum_size_, cplx{});
  const std::size_t modes = grid_.mode_count();
  for (std::size_t m = 0; m < modes; ++m)
    if (!conjugated_[m]) spec[slot_[m]] = f(m, comp);
  fftw_execute(static_cast<fftw_plan>(backward_plan_));
  std::copy(real_, real_ + physical_size_, out.begin());
}

template <class Store>
void Transformer::analyze(std::span<const double> in, Store&& store) {
  require(in.size() == physical_size_, ErrorCode::shape_mismatch, "physical buffer size");
  std::copy(in.begin(), in.end(), real_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  const auto* spec = reinterpret_cast<const cplx*>(spectrum_);
  const double scale = 1.0 / static_cast<double>(physical_size_);
  const std::size_t modes = grid_.mode_count();
  for (std::size_t m = 0; m < modes; ++m) {
    const cplx z = spec[slot_[m]] * scale;
    store(m, conjugated_[m] ? std::conj(z) : z);
  }
}

void Transformer::to_spectral(std::span<const double> in, SpectralField& f, int comp) {
  require(f.grid() == grid_, ErrorCode::shape_mismatch, "transformer grid mismatch");
  analyze(in, [&](std::size_t m, cplx z) { f(m, comp) = z; });
}

void Transformer::to_spectral(std::span<const double> in, TensorField& t, int i, int j) {
  require(t.grid() == grid_, ErrorCode::shape_mismatch, "transformer grid mismatch");
  analyze(in, [&](std::size_t m, cplx z) { t(m, i, j) = z; });
}

Transformer& cached_transformer(const GridSpec& grid, int physical_n) {
  thread_local std::map<std::tuple<int, int, int>, std::unique_ptr<Transformer>> cache;
  auto key = std::make_tuple(grid.dims(), grid.n(), physical_n);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<Transformer>(grid, physical_n)).first;
  return *it->second;
}

PhysicalField transform_to_physical(const SpectralField& f) {
  require(f.is_hermitian(1e-12), ErrorCode::symmetry_violation,
          "field is not Hermitian; physical samples would not be real");
  PhysicalField out(f.grid(), f.components());
  auto& tr = cached_transformer(f.grid(), f.grid().n());
  for (int c = 0; c < f.components(); ++c) tr.to_physical(f, c, out.component(c));
  return out;
}

SpectralField transform_to_spectral(const PhysicalField& samples) {
  require(samples.values.size() ==
              samples.grid.physical_size() * static_cast<std::size_t>(samples.components),
          ErrorCode::shape_mismatch, "sample count does not match grid");
  SpectralField f(samples.grid, samples.components);
  auto& tr = cached_transformer(samples.grid, samples.grid.n());
  for (int c = 0; c < samples.components; ++c) tr.to_spectral(samples.component(c), f, c);
  return f;
}

}  // namespace wns
