#include "wns/grid.hpp"

#include <cmath>
#include <cstdlib>

#include "wns/error.hpp"

namespace wns {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::shape_mismatch: return "shape_mismatch";
    case ErrorCode::symmetry_violation: return "symmetry_violation";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::blow_up: return "blow_up";
    case ErrorCode::smallness_violated: return "smallness_violated";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

double WaveVector::euclid_norm() const { return std::sqrt(static_cast<double>(norm_sq())); }

int WaveVector::l1_norm() const { return std::abs(k[0]) + std::abs(k[1]) + std::abs(k[2]); }

GridSpec GridSpec::make(int dims, int n) {
  require(dims == 1 || dims == 3, ErrorCode::invalid_argument,
          "grid dimension must be 1 or 3, got " + std::to_string(dims));
  require(n >= 4 && n % 2 == 0, ErrorCode::invalid_argument,
          "modes per axis must be even and >= 4, got " + std::to_string(n));

  auto tables = std::make_shared<Tables>();
  const int kmax = n / 2 - 1;
  auto push = [&](WaveVector w) {
    tables->waves.push_back(w);
    tables->norm_sq.push_back(w.norm_sq());
    tables->euclid.push_back(w.euclid_norm());
    tables->l1.push_back(w.l1_norm());
  };
  if (dims == 1) {
    for (int a = -kmax; a <= kmax; ++a) push({{a, 0, 0}});
  } else {
    for (int a = -kmax; a <= kmax; ++a)
      for (int b = -kmax; b <= kmax; ++b)
        for (int c = -kmax; c <= kmax; ++c) push({{a, b, c}});
  }
  return GridSpec(dims, n, std::move(tables));
}

std::optional<std::size_t> GridSpec::index_of(const WaveVector& w) const {
  const int km = kmax();
  const int s = side();
  for (int d = 0; d < 3; ++d) {
    if (d >= dims_) {
      if (w.k[d] != 0) return std::nullopt;
    } else if (std::abs(w.k[d]) > km) {
      return std::nullopt;
    }
  }
  if (dims_ == 1) return static_cast<std::size_t>(w.k[0] + km);
  return static_cast<std::size_t>(((w.k[0] + km) * s + (w.k[1] + km)) * s + (w.k[2] + km));
}

std::size_t GridSpec::physical_size() const {
  std::size_t size = 1;
  for (int d = 0; d < dims_; ++d) size *= static_cast<std::size_t>(n_);
  return size;
}

}  // namespace wns
