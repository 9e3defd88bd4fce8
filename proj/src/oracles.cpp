#include "wns/oracles.hpp"

#include <cmath>
#include <sstream>

#include "wns/error.hpp"
#include "wns/transform.hpp"

namespace wns {

SpectralField beltrami_field(double A, double B, double C, double t, double mu,
                             const GridSpec& grid) {
  require(grid.dims() == 3, ErrorCode::invalid_argument, "ABC flow lives on a 3-D grid");
  SpectralField f(grid);
  const double decay = std::exp(-mu * t);
  const cplx I{0.0, 1.0};
  auto at = [&](int a, int b, int c) { return *grid.index_of({{a, b, c}}); };
  // sin(x) -> -i/2 at +1, +i/2 at -1;  cos(x) -> 1/2 at +-1
  const std::size_t xp = at(1, 0, 0), xm = at(-1, 0, 0);
  const std::size_t yp = at(0, 1, 0), ym = at(0, -1, 0);
  const std::size_t zp = at(0, 0, 1), zm = at(0, 0, -1);

  f(zp, 0) += -0.5 * I * A;  f(zm, 0) += 0.5 * I * A;   // A sin z
  f(yp, 0) += 0.5 * C;       f(ym, 0) += 0.5 * C;       // C cos y
  f(xp, 1) += -0.5 * I * B;  f(xm, 1) += 0.5 * I * B;   // B sin x
  f(zp, 1) += 0.5 * A;       f(zm, 1) += 0.5 * A;       // A cos z
  f(yp, 2) += -0.5 * I * C;  f(ym, 2) += 0.5 * I * C;   // C sin y
  f(xp, 2) += 0.5 * B;       f(xm, 2) += 0.5 * B;       // B cos x
  f *= decay;
  return f;
}

SpectralField single_mode_field(const WaveVector& k, const std::array<double, 3>& a,
                                double amplitude, double t, double mu, const GridSpec& grid) {
  const int c = components_for(grid);
  double dot = 0.0;
  for (int i = 0; i < c; ++i) dot += a[i] * k.k[i];
  require(grid.dims() == 1 || std::abs(dot) <= 1e-14, ErrorCode::invalid_argument,
          "single mode needs a . k = 0");
  require(!k.is_zero(), ErrorCode::invalid_argument, "single mode needs k != 0");
  const auto plus = grid.index_of(k);
  const auto minus = grid.index_of(-k);
  require(plus.has_value() && minus.has_value(), ErrorCode::invalid_argument,
          "wavevector outside the retained set");
  SpectralField f(grid);
  const double scale = 0.5 * amplitude * std::exp(-mu * k.norm_sq() * t);
  for (int i = 0; i < c; ++i) {
    f(*plus, i) = scale * a[i];
    f(*minus, i) = scale * a[i];
  }
  return f;
}

SpectralField cole_hopf_burgers(double A, double mu, double t, const GridSpec& grid, int refine) {
  require(grid.dims() == 1, ErrorCode::invalid_argument, "Cole-Hopf oracle is 1-D");
  require(mu > 0.0 && t >= 0.0 && refine >= 1, ErrorCode::invalid_argument,
          "Cole-Hopf needs mu > 0, t >= 0, refine >= 1");
  if (std::abs(A) / mu > 600.0) {
    std::ostringstream msg;
    msg << "Cole-Hopf: |A|/mu = " << std::abs(A) / mu
        << " makes theta0 = exp(-(A/2mu)(1 - cos x)) underflow";
    fail(ErrorCode::overflow, msg.str());
  }
  SpectralField out(grid, 1);
  if (A == 0.0) return out;

  const int nf = refine * grid.n();
  const GridSpec fine = GridSpec::make(1, nf);
  const double a = A / (2.0 * mu);
  std::vector<double> samples(static_cast<std::size_t>(nf));
  for (int j = 0; j < nf; ++j) {
    const double x = 2.0 * M_PI * j / nf;
    samples[j] = std::exp(-a * (1.0 - std::cos(x)));
  }
  auto& tr = cached_transformer(fine, nf);
  SpectralField theta(fine, 1);
  tr.to_spectral(samples, theta, 0);

  SpectralField dtheta(fine, 1);
  const cplx I{0.0, 1.0};
  for (std::size_t m = 0; m < fine.mode_count(); ++m) {
    const double k = fine.wave(m).k[0];
    theta(m, 0) *= std::exp(-mu * k * k * t);
    dtheta(m, 0) = I * k * theta(m, 0);
  }
  std::vector<double> th(samples.size()), dth(samples.size()), u(samples.size());
  tr.to_physical(theta, 0, th);
  tr.to_physical(dtheta, 0, dth);
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = -2.0 * mu * dth[j] / th[j];

  SpectralField ufine(fine, 1);
  tr.to_spectral(u, ufine, 0);
  for (std::size_t m = 0; m < grid.mode_count(); ++m)
    out(m, 0) = ufine(*fine.index_of(grid.wave(m)), 0);
  out.pin_zero_mode();
  out.symmetrize();
  return out;
}

}  // namespace wns
