#pragma once

#include "plasmon/forward_solver.hpp"
#include "plasmon/materials.hpp"

#include <vector>

namespace plasmon {

/// Separable solution for a disk of radius r0 centered at the origin:
///   outside  u = sum_n [e^{in(pi/2 - t_d)} J_n(k_m r) + a_n H_n(k_m r)] e^{int}
///   inside   u = sum_n b_n J_n(k_c r) e^{int}
/// Coefficients are stored for n = -N..N at index n + N.
struct MieSolution {
  double r0 = 1.0;
  MaterialConfig mat;
  IncidentWave inc;
  int order = 0;
  std::vector<cplx> a;
  std::vector<cplx> b;
  /// Relative size of the order-N terms at r = r0, the truncation tail bound.
  double tail_bound = 0.0;

  cplx a_n(int n) const { return a[n + order]; }
  cplx b_n(int n) const { return b[n + order]; }
};

inline constexpr double kMieTailTolerance = 1e-14;

/// Coefficients with truncation order `order`; the order is raised
/// automatically (up to 60) until the tail bound is below 1e-14, otherwise
/// SeriesDivergence is thrown.
MieSolution mie_coefficients(double r0, const MaterialConfig &mat, const IncidentWave &inc,
                             int order = 20);

enum class MieField { scattered, total };

/// Field at points; points with |x| > r0 use the exterior series (scattered or
/// total), points with |x| < r0 the interior series (always total).
/// Throws RadiusOnBoundary for ||x| - r0| < 1e-12.
std::vector<cplx> mie_field(const MieSolution &sol, const std::vector<Vec2> &points,
                            MieField part = MieField::scattered);

/// Radial derivative of the total field at the given radius and angles
/// (exterior or interior branch chosen by the radius).
std::vector<cplx> mie_radial_derivative(const MieSolution &sol, double radius,
                                        const std::vector<double> &angles);

/// Plane-wave expansion with all a_n forced to zero, i.e. the incident field
/// reconstructed from its Bessel series.
std::vector<cplx> mie_plane_wave(const MieSolution &sol, const std::vector<Vec2> &points);

/// Im of the outward flux (1/mu_m) * integral of conj(u) du/dr over the circle
/// |x| = radius > r0, total field. Zero for lossless inclusions and negative
/// when the inclusion absorbs.
double mie_net_flux(const MieSolution &sol, double radius, int quadrature_points = 256);

}  // namespace plasmon
