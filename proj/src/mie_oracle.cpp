#include "plasmon/mie_oracle.hpp"

#include "plasmon/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace plasmon {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

cplx incident_phase(int n, double t_d) { return std::exp(kI * (n * (0.5 * kPi - t_d))); }

struct Coefficient {
  cplx a, b;
};

// Continuity and flux matching at r = r0 for mode n >= 0 (without the incident phase).
Coefficient mode_coefficients(int n, double r0, const MaterialConfig &mat) {
  const double km = mat.k_m();
  const cplx kc = mat.k_c();
  const cplx zm = km * r0;
  const cplx zc = kc * r0;
  const cplx jm = bessel_j(n, zm), djm = bessel_j_prime(n, zm);
  const cplx hm = hankel1(n, zm), dhm = hankel1_prime(n, zm);
  const cplx jc = bessel_j(n, zc), djc = bessel_j_prime(n, zc);
  const cplx outer = km / mat.mu_m;
  const cplx inner = kc / mat.mu_c;
  const cplx den = inner * djc * hm - outer * jc * dhm;
  if (std::abs(den) == 0.0)
    throw NumericalError(ErrorKind::SeriesDivergence, "vanishing Mie denominator");
  Coefficient c;
  c.a = (outer * djm * jc - inner * djc * jm) / den;
  c.b = outer * (djm * hm - jm * dhm) / den;
  return c;
}

}  // namespace

MieSolution mie_coefficients(double r0, const MaterialConfig &mat, const IncidentWave &inc,
                             int order) {
  mat.validate();
  if (!(r0 > 0.0)) throw NumericalError(ErrorKind::NonPositiveRadius, "disk radius must be positive");
  const double km = mat.k_m();
  const cplx kc = mat.k_c();
  for (int trunc = std::max(order, 1); trunc <= kMaxBesselOrder - 1; ++trunc) {
    MieSolution sol;
    sol.r0 = r0;
    sol.mat = mat;
    sol.inc = inc;
    sol.order = trunc;
    sol.a.assign(2 * trunc + 1, 0.0);
    sol.b.assign(2 * trunc + 1, 0.0);
    double peak = 0.0;
    for (int n = 0; n <= trunc; ++n) {
      const Coefficient c = mode_coefficients(n, r0, mat);
      for (int sgn : {1, -1}) {
        if (n == 0 && sgn < 0) continue;
        const int idx = sgn * n + trunc;
        // J_{-n} = (-1)^n J_n, H_{-n} = (-1)^n H_n: only the phase changes.
        const cplx phase = incident_phase(sgn * n, inc.angle) * inc.amplitude;
        sol.a[idx] = phase * c.a;
        sol.b[idx] = phase * c.b;
      }
      const double term = std::abs(c.a * hankel1(n, km * r0)) + std::abs(c.b * bessel_j(n, kc * r0)) +
                          std::abs(bessel_j(n, cplx(km * r0)));
      peak = std::max(peak, term);
      if (n == trunc) sol.tail_bound = term / peak;
    }
    if (sol.tail_bound < kMieTailTolerance) return sol;
    if (trunc >= order && trunc == kMaxBesselOrder - 1) break;
  }
  std::ostringstream os;
  os << "Mie tail bound not met below order " << kMaxBesselOrder;
  throw NumericalError(ErrorKind::SeriesDivergence, os.str());
}

std::vector<cplx> mie_field(const MieSolution &sol, const std::vector<Vec2> &points,
                            MieField part) {
  const int trunc = sol.order;
  const double km = sol.mat.k_m();
  const cplx kc = sol.mat.k_c();
  std::vector<cplx> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double r = points[p].norm();
    const double t = std::atan2(points[p].y(), points[p].x());
    if (std::abs(r - sol.r0) < 1e-12) {
      std::ostringstream os;
      os << "|x| = " << r << " is on the disk boundary";
      throw NumericalError(ErrorKind::RadiusOnBoundary, os.str());
    }
    cplx acc = 0.0;
    if (r > sol.r0) {
      const std::vector<cplx> j = bessel_j_sequence(trunc, cplx(km * r));
      const std::vector<cplx> y = bessel_y_sequence(trunc, cplx(km * r));
      for (int n = -trunc; n <= trunc; ++n) {
        const int an = std::abs(n);
        const double sg = (n < 0 && an % 2) ? -1.0 : 1.0;
        const cplx e = std::exp(kI * (n * t));
        acc += sol.a_n(n) * sg * (j[an] + kI * y[an]) * e;
        if (part == MieField::total)
          acc += incident_phase(n, sol.inc.angle) * sol.inc.amplitude * sg * j[an] * e;
      }
    } else {
      const std::vector<cplx> j = bessel_j_sequence(trunc, kc * r);
      for (int n = -trunc; n <= trunc; ++n) {
        const int an = std::abs(n);
        const double sg = (n < 0 && an % 2) ? -1.0 : 1.0;
        acc += sol.b_n(n) * sg * j[an] * std::exp(kI * (n * t));
      }
    }
    out[p] = acc;
  }
  return out;
}

std::vector<cplx> mie_radial_derivative(const MieSolution &sol, double radius,
                                        const std::vector<double> &angles) {
  const int trunc = sol.order;
  const bool outside = radius >= sol.r0;
  const double km = sol.mat.k_m();
  const cplx kc = sol.mat.k_c();
  std::vector<cplx> dmode(2 * trunc + 1);
  for (int n = -trunc; n <= trunc; ++n) {
    if (outside) {
      const cplx z = km * radius;
      dmode[n + trunc] = km * (incident_phase(n, sol.inc.angle) * sol.inc.amplitude *
                                   bessel_j_prime(n, z) +
                               sol.a_n(n) * hankel1_prime(n, z));
    } else {
      dmode[n + trunc] = kc * sol.b_n(n) * bessel_j_prime(n, kc * radius);
    }
  }
  std::vector<cplx> out(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    cplx acc = 0.0;
    for (int n = -trunc; n <= trunc; ++n) acc += dmode[n + trunc] * std::exp(kI * (n * angles[i]));
    out[i] = acc;
  }
  return out;
}

std::vector<cplx> mie_plane_wave(const MieSolution &sol, const std::vector<Vec2> &points) {
  const double km = sol.mat.k_m();
  std::vector<cplx> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double r = points[p].norm();
    const double t = std::atan2(points[p].y(), points[p].x());
    const std::vector<cplx> j = bessel_j_sequence(sol.order, cplx(km * r));
    cplx acc = 0.0;
    for (int n = -sol.order; n <= sol.order; ++n) {
      const int an = std::abs(n);
      const double sg = (n < 0 && an % 2) ? -1.0 : 1.0;
      acc += incident_phase(n, sol.inc.angle) * sol.inc.amplitude * sg * j[an] *
             std::exp(kI * (n * t));
    }
    out[p] = acc;
  }
  return out;
}

double mie_net_flux(const MieSolution &sol, double radius, int quadrature_points) {
  std::vector<double> angles(quadrature_points);
  std::vector<Vec2> pts(quadrature_points);
  for (int i = 0; i < quadrature_points; ++i) {
    angles[i] = 2.0 * kPi * i / quadrature_points;
    pts[i] = radius * Vec2(std::cos(angles[i]), std::sin(angles[i]));
  }
  const std::vector<cplx> u = mie_field(sol, pts, MieField::total);
  const std::vector<cplx> du = mie_radial_derivative(sol, radius, angles);
  cplx acc = 0.0;
  for (int i = 0; i < quadrature_points; ++i) acc += std::conj(u[i]) * du[i];
  return (acc * (2.0 * kPi * radius / quadrature_points) / sol.mat.mu_m).imag();
}

}  // namespace plasmon
