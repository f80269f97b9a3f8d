#include "plasmon/errors.hpp"
#include "plasmon/mie_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace plasmon;
using std::numbers::pi;

namespace {

MaterialConfig material(cplx mu_c, double omega) {
  MaterialConfig m;
  m.mu_c = mu_c;
  m.omega = omega;
  return m;
}

std::vector<Vec2> ring(double r, int count, double phase = 0.1) {
  std::vector<Vec2> p;
  for (int i = 0; i < count; ++i) {
    const double t = phase + 2 * pi * i / count;
    p.emplace_back(r * std::cos(t), r * std::sin(t));
  }
  return p;
}

}  // namespace

TEST_CASE("plane-wave series reproduces the incident field") {
  const IncidentWave inc{pi / 3, 1.0};
  for (double omega : {0.01, 1.0, 3.0}) {
    const auto sol = mie_coefficients(0.8, material(5.0, omega), inc);
    const auto pts = ring(1.3, 17);
    const auto u = mie_plane_wave(sol, pts);
    for (size_t i = 0; i < pts.size(); ++i)
      CHECK(std::abs(u[i] - inc.value(omega, pts[i])) < 1e-12);
  }
}

TEST_CASE("transmission conditions hold across the interface") {
  const IncidentWave inc{pi / 3, 1.0};
  for (cplx mu : {cplx(5.0, 0.0), cplx(-1.0, 0.004), cplx(-0.4508, 0.1058)}) {
    for (double omega : {0.01, 1.5}) {
      const auto sol = mie_coefficients(0.8, material(mu, omega), inc);
      const double h = 1e-9;
      const auto out = mie_field(sol, ring(0.8 + h, 12), MieField::total);
      const auto in = mie_field(sol, ring(0.8 - h, 12), MieField::total);
      std::vector<double> ang;
      for (int i = 0; i < 12; ++i) ang.push_back(0.1 + 2 * pi * i / 12);
      const auto dout = mie_radial_derivative(sol, 0.8 + h, ang);
      const auto din = mie_radial_derivative(sol, 0.8 - h, ang);
      double scale = 0.0;
      for (size_t i = 0; i < out.size(); ++i) scale = std::max(scale, std::abs(out[i]));
      for (size_t i = 0; i < out.size(); ++i) {
        CAPTURE(mu);
        CAPTURE(omega);
        CHECK(std::abs(out[i] - in[i]) < 1e-7 * scale);
        CHECK(std::abs(dout[i] / sol.mat.mu_m - din[i] / mu) < 1e-6 * std::max(1.0, std::abs(dout[i])));
      }
    }
  }
}

TEST_CASE("energy flux vanishes without loss and is negative with loss") {
  const IncidentWave inc{0.4, 1.0};
  const auto lossless = mie_coefficients(0.8, material(5.0, 1.2), inc);
  CHECK(std::abs(mie_net_flux(lossless, 1.4)) < 1e-12);
  const auto lossy = mie_coefficients(0.8, material(cplx(-1.0, 0.3), 1.2), inc);
  CHECK(mie_net_flux(lossy, 1.4) < -1e-6);
  // flux of the total field is independent of the radius outside the disk
  CHECK(mie_net_flux(lossy, 1.1) == doctest::Approx(mie_net_flux(lossy, 2.0)).epsilon(1e-10));
}

TEST_CASE("coefficient structure") {
  const IncidentWave inc{pi / 3, 1.0};
  const auto sol = mie_coefficients(0.8, material(cplx(-1.0, 0.004), 0.5), inc);
  CHECK(sol.tail_bound < kMieTailTolerance);
  // the scattering ratio a_n / incident coefficient is even in n
  for (int n = 1; n < 8; ++n) {
    const cplx cn = std::exp(cplx(0.0, n * (pi / 2 - inc.angle)));
    const cplx cm = std::exp(cplx(0.0, -n * (pi / 2 - inc.angle)));
    CHECK(std::abs(sol.a_n(n) / cn - sol.a_n(-n) / cm) < 1e-13 * std::abs(sol.a_n(n)));
  }
  // homogeneous inclusion: no scattering when mu_c = mu_m and k_c = k_m
  MaterialConfig same = material(1.0, 0.7);
  same.eps_c = 1.0;
  const auto none = mie_coefficients(0.8, same, inc);
  for (int n = -none.order; n <= none.order; ++n) CHECK(std::abs(none.a_n(n)) < 1e-15);
}

TEST_CASE("fields on the boundary are rejected") {
  const auto sol = mie_coefficients(0.8, material(5.0, 0.5), IncidentWave{});
  try {
    mie_field(sol, {Vec2(0.8, 0.0)});
    FAIL("expected RadiusOnBoundary");
  } catch (const NumericalError &e) {
    CHECK(e.kind() == ErrorKind::RadiusOnBoundary);
  }
}
