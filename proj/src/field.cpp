#include "wns/field.hpp"

#include <algorithm>
#include <cmath>

#include "wns/error.hpp"

namespace wns {

SpectralField::SpectralField(GridSpec grid, int components)
    : grid_(std::move(grid)), components_(components) {
  require(components >= 1, ErrorCode::invalid_argument, "field needs at least one component");
  data_.assign(grid_.mode_count() * static_cast<std::size_t>(components_), cplx{});
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double SpectralField::hermitian_defect() const {
  double d = 0.0;
  const std::size_t modes = mode_count();
  for (std::size_t m = 0; m < modes; ++m) {
    const std::size_t mc = grid_.conjugate_index(m);
    for (int i = 0; i < components_; ++i)
      d = std::max(d, std::abs((*this)(mc, i) - std::conj((*this)(m, i))));
  }
  return d;
}

bool SpectralField::is_hermitian(double rel_tol) const {
  return hermitian_defect() <= rel_tol * std::max(max_abs(), 1e-300);
}

bool SpectralField::has_zero_mean() const {
  const std::size_t z = grid_.zero_index();
  for (int i = 0; i < components_; ++i)
    if ((*this)(z, i) != cplx{}) return false;
  return true;
}

void SpectralField::pin_zero_mode() {
  const std::size_t z = grid_.zero_index();
  for (int i = 0; i < components_; ++i) (*this)(z, i) = cplx{};
}

void SpectralField::symmetrize() {
  const std::size_t modes = mode_count();
  for (std::size_t m = 0; m <= modes / 2; ++m) {
    const std::size_t mc = grid_.conjugate_index(m);
    for (int i = 0; i < components_; ++i) {
      const cplx avg = 0.5 * ((*this)(m, i) + std::conj((*this)(mc, i)));
      (*this)(m, i) = avg;
      (*this)(mc, i) = std::conj(avg);
    }
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require(same_shape(o), ErrorCode::shape_mismatch, "field shapes differ");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] += o.data_[q];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require(same_shape(o), ErrorCode::shape_mismatch, "field shapes differ");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] -= o.data_[q];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& z : data_) z *= s;
  return *this;
}

void SpectralField::axpy(double s, const SpectralField& o) {
  require(same_shape(o), ErrorCode::shape_mismatch, "field shapes differ");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] += s * o.data_[q];
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

TensorField::TensorField(GridSpec grid, int components)
    : grid_(std::move(grid)), components_(components) {
  data_.assign(grid_.mode_count() * static_cast<std::size_t>(components_ * components_), cplx{});
}

double TensorField::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace wns
