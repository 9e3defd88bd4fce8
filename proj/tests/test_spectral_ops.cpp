#include <cmath>
#include <random>

#include "doctest.h"
#include "wns/error.hpp"
#include "wns/oracles.hpp"
#include "wns/random_fields.hpp"
#include "wns/spectral_ops.hpp"

using namespace wns;

namespace {

SpectralField cosine_mode(const GridSpec& g, const WaveVector& k, int comp, double amp) {
  SpectralField f(g);
  f(*g.index_of(k), comp) += amp / 2;
  f(*g.index_of(-k), comp) += amp / 2;
  return f;
}

// Reference convolution by explicit lookup of k - l.
cplx reference_product(const SpectralField& F, const SpectralField& G, std::size_t m, int i,
                       int j) {
  const GridSpec& g = F.grid();
  cplx sum = 0.0;
  for (std::size_t l = 0; l < g.mode_count(); ++l) {
    const auto q = g.index_of(g.wave(m) - g.wave(l));
    if (q) sum += F(l, i) * G(*q, j);
  }
  return sum;
}

double tensor_diff(const TensorField& a, const TensorField& b) {
  double d = 0.0;
  for (std::size_t q = 0; q < a.coefficients().size(); ++q)
    d = std::max(d, std::abs(a.coefficients()[q] - b.coefficients()[q]));
  return d;
}

}  // namespace

TEST_CASE("leray_project annihilates gradients and fixes solenoidal modes") {
  const GridSpec g = GridSpec::make(3, 8);
  const WaveVector k{{1, 2, -1}};
  SpectralField grad(g);
  for (int i = 0; i < 3; ++i) {
    grad(*g.index_of(k), i) = cplx{0.0, 1.0} * static_cast<double>(k.k[i]);
    grad(*g.index_of(-k), i) = cplx{0.0, -1.0} * static_cast<double>(k.k[i]);
  }
  CHECK(leray_project(grad).max_abs() < 1e-15);

  SpectralField sol(g);
  const std::array<double, 3> a{1.0, 0.0, 1.0};  // a.k = 0
  for (int i = 0; i < 3; ++i) {
    sol(*g.index_of(k), i) = a[i];
    sol(*g.index_of(-k), i) = a[i];
  }
  CHECK((leray_project(sol) - sol).max_abs() == 0.0);
}

TEST_CASE("leray_project is idempotent, pointwise contractive and divergence-free") {
  std::mt19937_64 rng(21);
  const GridSpec g = GridSpec::make(3, 8);
  for (int trial = 0; trial < 10; ++trial) {
    const SpectralField f = random_field(g, 1.0, rng, 0, false);
    const SpectralField p = leray_project(f);
    CHECK((leray_project(p) - p).max_abs() <= 1e-13 * p.max_abs());
    CHECK(divergence_defect(p) <= 1e-12 * f.max_abs());
    CHECK(p.is_hermitian());
    for (std::size_t m = 0; m < g.mode_count(); ++m) {
      double before = 0.0, after = 0.0;
      for (int i = 0; i < 3; ++i) {
        before += std::norm(f(m, i));
        after += std::norm(p(m, i));
      }
      CHECK(after <= before * (1 + 1e-14));
    }
  }
}

TEST_CASE("leray_project preconditions") {
  CHECK_THROWS_AS(leray_project(SpectralField(GridSpec::make(1, 8))), Error);
  SpectralField f(GridSpec::make(3, 4));
  f(f.grid().zero_index(), 0) = 1.0;
  CHECK_THROWS_AS(leray_project(f), Error);
}

TEST_CASE("divergence_defect examples") {
  const GridSpec g = GridSpec::make(3, 8);
  CHECK(divergence_defect(SpectralField(g)) == 0.0);
  const WaveVector k{{1, 2, 2}};
  SpectralField f(g);
  for (int i = 0; i < 3; ++i) {
    f(*g.index_of(k), i) = k.k[i];
    f(*g.index_of(-k), i) = k.k[i];
  }
  CHECK(divergence_defect(f) == doctest::Approx(9.0));
}

TEST_CASE("cos^2 identity for the tensor product") {
  const GridSpec g = GridSpec::make(3, 8);
  const SpectralField F = cosine_mode(g, {{1, 0, 0}}, 1, 1.0);
  for (const TensorField& T :
       {tensor_product_pseudospectral(F, F), tensor_product_direct(F, F)}) {
    CHECK(std::abs(T(*g.index_of({{2, 0, 0}}), 1, 1) - 0.25) < 1e-15);
    CHECK(std::abs(T(*g.index_of({{-2, 0, 0}}), 1, 1) - 0.25) < 1e-15);
    CHECK(std::abs(T(g.zero_index(), 1, 1) - 0.5) < 1e-15);
    double rest = 0.0;
    for (std::size_t m = 0; m < g.mode_count(); ++m)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const WaveVector& k = g.wave(m);
          const bool expected = i == 1 && j == 1 && k.k[1] == 0 && k.k[2] == 0 &&
                                (k.k[0] == 0 || std::abs(k.k[0]) == 2);
          if (!expected) rest = std::max(rest, std::abs(T(m, i, j)));
        }
    CHECK(rest < 1e-15);
  }
}

TEST_CASE("products with a zero factor vanish") {
  std::mt19937_64 rng(1);
  const GridSpec g = GridSpec::make(3, 6);
  const SpectralField F = random_field(g, 1.0, rng);
  CHECK(tensor_product_pseudospectral(SpectralField(g), F).max_abs() == 0.0);
  CHECK(tensor_product_direct(F, SpectralField(g)).max_abs() == 0.0);
}

TEST_CASE("one-term and three-term convolutions") {
  const GridSpec g = GridSpec::make(3, 8);
  const WaveVector l0{{1, 0, 1}}, k0{{2, 1, 0}};
  SpectralField F(g, 3), G(g, 3);
  F(*g.index_of(l0), 0) = cplx{2.0, 1.0};
  G(*g.index_of(k0 - l0), 2) = cplx{0.0, 3.0};
  const TensorField T = tensor_product_direct(F, G);
  CHECK(std::abs(T(*g.index_of(k0), 0, 2) - cplx{2.0, 1.0} * cplx{0.0, 3.0}) < 1e-15);
  CHECK(T.max_abs() == doctest::Approx(std::abs(cplx{2.0, 1.0} * cplx{0.0, 3.0})));

  const WaveVector k{{1, 1, 0}};
  const SpectralField P = cosine_mode(g, k, 2, 1.0);  // a = e3, a.k = 0
  const TensorField S = tensor_product_direct(P, P);
  for (std::size_t m = 0; m < g.mode_count(); ++m) {
    const WaveVector& w = g.wave(m);
    if (!(w.is_zero() || w == k + k || w == -(k + k))) CHECK(std::abs(S(m, 2, 2)) == 0.0);
  }
}

TEST_CASE("tensor_product_direct matches a reference convolution") {
  std::mt19937_64 rng(4);
  const GridSpec g = GridSpec::make(3, 6);
  const SpectralField F = random_field(g, 1.0, rng);
  const SpectralField G = random_field(g, 2.0, rng);
  const TensorField T = tensor_product_direct(F, G);
  for (std::size_t m = 0; m < g.mode_count(); m += 7)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(T(m, i, j) - reference_product(F, G, m, i, j)) < 1e-14);
}

TEST_CASE("pseudospectral and direct products agree") {
  std::mt19937_64 rng(8);
  for (int dims : {1, 3}) {
    const GridSpec g = GridSpec::make(dims, 8);
    for (int trial = 0; trial < 10; ++trial) {
      // Full retained support: padding by 3/2 makes the agreement exact
      // without the |k_i| <= n/3 restriction.
      const SpectralField F = random_field(g, 0.5, rng);
      const SpectralField G = random_field(g, 1.5, rng);
      const TensorField a = tensor_product_pseudospectral(F, G);
      const TensorField b = tensor_product_direct(F, G);
      CHECK(tensor_diff(a, b) <= 1e-12 * std::max(b.max_abs(), 1e-300));
      const TensorField s = tensor_product_pseudospectral(F, F);
      CHECK(tensor_diff(s, tensor_product_direct(F, F)) <= 1e-12 * s.max_abs());
    }
  }
}

TEST_CASE("grid mismatch is rejected") {
  std::mt19937_64 rng(2);
  const SpectralField a = random_field(GridSpec::make(3, 4), 1.0, rng);
  const SpectralField b = random_field(GridSpec::make(3, 6), 1.0, rng);
  CHECK_THROWS_AS(tensor_product_pseudospectral(a, b), Error);
  CHECK_THROWS_AS(nonlinear_term(a, b), Error);
}

TEST_CASE("single real mode with a.k = 0 does not self-interact") {
  const GridSpec g = GridSpec::make(3, 8);
  const SpectralField F = single_mode_field({{1, 2, 0}}, {2.0, -1.0, 0.5}, 0.7, 0.0, 1.0, g);
  for (auto method : {ProductMethod::pseudospectral, ProductMethod::direct})
    CHECK(nonlinear_term(F, F, method).max_abs() <= 1e-12);
}

TEST_CASE("Beltrami nonlinearity is a pure gradient") {
  const GridSpec g = GridSpec::make(3, 8);
  const SpectralField u = beltrami_field(1.0, 0.7, -0.4, 0.0, 1.0, g);
  CHECK(nonlinear_term(u, u).max_abs() <= 1e-12);
  // Before projection the term is nonzero, so the projection is doing work.
  const TensorField T = tensor_product_pseudospectral(u, u);
  double raw = 0.0;
  for (std::size_t m = 0; m < g.mode_count(); ++m)
    for (int i = 0; i < 3; ++i) {
      cplx d = 0.0;
      for (int j = 0; j < 3; ++j) d += cplx{0.0, 1.0} * double(g.wave(m).k[j]) * T(m, i, j);
      raw = std::max(raw, std::abs(d));
    }
  CHECK(raw > 0.1);
}

TEST_CASE("Burgers nonlinear term of sin x is sin 2x") {
  const GridSpec g = GridSpec::make(1, 8);
  SpectralField s(g);
  s(*g.index_of({{1, 0, 0}}), 0) = cplx{0.0, -0.5};
  s(*g.index_of({{-1, 0, 0}}), 0) = cplx{0.0, 0.5};
  const SpectralField N = nonlinear_term(s, s);
  CHECK(std::abs(N(*g.index_of({{2, 0, 0}}), 0) - cplx{0.0, -0.5}) < 1e-15);
  CHECK(std::abs(N(*g.index_of({{-2, 0, 0}}), 0) - cplx{0.0, 0.5}) < 1e-15);
  double rest = 0.0;
  for (std::size_t m = 0; m < g.mode_count(); ++m)
    if (std::abs(g.wave(m).k[0]) != 2) rest = std::max(rest, std::abs(N(m, 0)));
  CHECK(rest < 1e-15);
  CHECK((convective_term(s, s) - 0.5 * N).max_abs() < 1e-16);
}

TEST_CASE("nonlinear term preserves the field invariants") {
  std::mt19937_64 rng(12);
  const GridSpec g = GridSpec::make(3, 8);
  for (int trial = 0; trial < 5; ++trial) {
    const SpectralField F = random_field(g, 1.0, rng);
    const SpectralField G = random_field(g, 2.0, rng);
    const SpectralField N = nonlinear_term(F, G);
    CHECK(N.is_hermitian());
    CHECK(N.has_zero_mean());
    CHECK(divergence_defect(N) <= 1e-12 * N.max_abs());
    const SpectralField D = nonlinear_term(F, G, ProductMethod::direct);
    CHECK((N - D).max_abs() <= 1e-12 * D.max_abs());
  }
}

TEST_CASE("nonlinear term is bilinear") {
  std::mt19937_64 rng(13);
  const GridSpec g = GridSpec::make(3, 6);
  const SpectralField F1 = random_field(g, 1.0, rng), F2 = random_field(g, 1.0, rng);
  const SpectralField G = random_field(g, 1.0, rng);
  const SpectralField lhs = nonlinear_term(2.0 * F1 + (-3.0) * F2, G);
  const SpectralField rhs = 2.0 * nonlinear_term(F1, G) + (-3.0) * nonlinear_term(F2, G);
  CHECK((lhs - rhs).max_abs() <= 1e-12 * rhs.max_abs());
}
