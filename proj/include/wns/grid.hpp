#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wns {

/// Integer wavevector. Unused trailing components are zero for 1-D grids.
struct WaveVector {
  std::array<int, 3> k{0, 0, 0};

  int norm_sq() const { return k[0] * k[0] + k[1] * k[1] + k[2] * k[2]; }
  double euclid_norm() const;
  int l1_norm() const;
  bool is_zero() const { return k[0] == 0 && k[1] == 0 && k[2] == 0; }
  WaveVector operator-() const { return {{-k[0], -k[1], -k[2]}}; }
  WaveVector operator-(const WaveVector& o) const {
    return {{k[0] - o.k[0], k[1] - o.k[1], k[2] - o.k[2]}};
  }
  WaveVector operator+(const WaveVector& o) const {
    return {{k[0] + o.k[0], k[1] + o.k[1], k[2] + o.k[2]}};
  }
  bool operator==(const WaveVector&) const = default;
};

/// Truncated lattice {k : |k_i| <= n/2 - 1} on the 2pi-periodic torus of
/// dimension 1 or 3. Wavevectors are stored in lexicographic order over
/// components (first component slowest), so mode m and mode
/// mode_count()-1-m are each other's negatives and the zero mode sits in the
/// middle. Copies share the immutable wavevector tables.
class GridSpec {
 public:
  /// Throws Error(invalid_argument) unless dims is 1 or 3 and n is even, >= 4.
  static GridSpec make(int dims, int n);

  int dims() const { return dims_; }
  int n() const { return n_; }
  int kmax() const { return n_ / 2 - 1; }
  int side() const { return n_ - 1; }
  std::size_t mode_count() const { return tables_->waves.size(); }
  std::size_t zero_index() const { return mode_count() / 2; }
  std::size_t conjugate_index(std::size_t m) const { return mode_count() - 1 - m; }

  const WaveVector& wave(std::size_t m) const { return tables_->waves[m]; }
  int norm_sq(std::size_t m) const { return tables_->norm_sq[m]; }
  double euclid_norm(std::size_t m) const { return tables_->euclid[m]; }
  int l1_norm(std::size_t m) const { return tables_->l1[m]; }
  int max_l1_norm() const { return dims_ * kmax(); }
  int max_norm_sq() const { return dims_ * kmax() * kmax(); }

  std::optional<std::size_t> index_of(const WaveVector& k) const;

  /// Physical points per axis used for quadratic products (3/2 zero padding).
  int padded_n() const { return 3 * n_ / 2; }
  static constexpr const char* dealias_rule() { return "pad-3/2"; }

  /// Physical samples per component on the unpadded n^dims grid.
  std::size_t physical_size() const;

  bool operator==(const GridSpec& o) const { return dims_ == o.dims_ && n_ == o.n_; }

 private:
  struct Tables {
    std::vector<WaveVector> waves;
    std::vector<int> norm_sq;
    std::vector<double> euclid;
    std::vector<int> l1;
  };

  GridSpec(int dims, int n, std::shared_ptr<const Tables> tables)
      : dims_(dims), n_(n), tables_(std::move(tables)) {}

  int dims_;
  int n_;
  std::shared_ptr<const Tables> tables_;
};

/// Vector components carried by a field on this grid: 3 for the 3-D
/// velocity, 1 for the scalar Burgers unknown.
inline int components_for(const GridSpec& grid) { return grid.dims() == 3 ? 3 : 1; }

}  // namespace wns
