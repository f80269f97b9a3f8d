#pragma once

#include "plasmon/geometry.hpp"
#include "plasmon/materials.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace plasmon {

/// Plane wave exp(i k_m d . x) with d = (cos angle, sin angle).
struct IncidentWave {
  double angle = 0.0;
  double amplitude = 1.0;

  Vec2 direction() const;
  cplx value(double k_m, const Vec2 &x) const;
  /// Normal derivative at x along nu.
  cplx normal_derivative(double k_m, const Vec2 &x, const Vec2 &nu) const;
};

/// Boundary densities of u = u^i + S^{k_m}[psi] outside and S^{k_c}[phi] inside.
struct DensityPair {
  Eigen::VectorXcd psi;
  Eigen::VectorXcd phi;
  double residual = 0.0;        // ||A x - b|| / ||b||
  double condition_estimate = 0.0;
};

/// Observation setup on the circle |x| = R0.
struct ObservationCircle {
  double radius = 1.5;
  int count = 50;

  std::vector<double> angles() const;
  std::vector<Vec2> points() const;
  /// Arclength quadrature weight per point, 2 pi R0 / count.
  double weight() const;
};

struct NearFieldData {
  ObservationCircle circle;
  Eigen::VectorXcd values;
  double noise_level = 0.0;
  std::optional<std::uint64_t> seed;
};

/// Condition estimates above this make solve_densities throw SingularSystem.
inline constexpr double kSingularConditionLimit = 1e14;

/// Dense Nystrom solve of the transmission system
///   S^{k_m} psi - S^{k_c} phi = -u^i
///   (1/mu_m)(1/2 + K^{k_m}*) psi + (1/mu_c)(1/2 - K^{k_c}*) phi = -(1/mu_m) du^i/dnu.
DensityPair solve_densities(const BoundaryGrid &grid, const MaterialConfig &mat,
                            const IncidentWave &inc);

/// u^s = S^{k_m}[psi] at points outside the inclusion. Throws PointInsideInclusion
/// when a point is not strictly outside `shape`.
Eigen::VectorXcd scattered_field(const DensityPair &densities, const BoundaryGrid &grid,
                                 const StarlikeShape &shape, const MaterialConfig &mat,
                                 const std::vector<Vec2> &points);

/// Total interior field S^{k_c}[phi] at points inside the inclusion.
Eigen::VectorXcd interior_field(const DensityPair &densities, const BoundaryGrid &grid,
                                const MaterialConfig &mat, const std::vector<Vec2> &points);

/// Discretize, solve and sample u^s on the observation circle in one call.
Eigen::VectorXcd measure(const StarlikeShape &shape, int n, const MaterialConfig &mat,
                         const IncidentWave &inc, const ObservationCircle &circle);

/// Everything the measurement map needs besides the shape. `n` is half the
/// boundary node count.
struct ForwardSetup {
  MaterialConfig mat;
  IncidentWave inc;
  ObservationCircle circle;
  int n = 25;

  Eigen::VectorXcd operator()(const StarlikeShape &shape) const {
    return measure(shape, n, mat, inc, circle);
  }
};

/// u^{s,delta} = u^s + delta xi / |xi| with xi having independent standard
/// normal real and imaginary parts; |xi| is the norm of the stacked real vector.
NearFieldData add_noise(const NearFieldData &data, double delta, std::uint64_t seed);

/// [Re v; Im v]
Eigen::VectorXd stack_complex(const Eigen::VectorXcd &v);

}  // namespace plasmon
