#include "plasmon/layer_potentials.hpp"

#include <cmath>
#include <numbers>

namespace plasmon {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
}  // namespace

Eigen::MatrixXd log_split_weights(int node_count) {
  const int n = node_count / 2;
  Eigen::VectorXd by_offset(node_count);
  for (int d = 0; d < node_count; ++d) {
    const double dt = kPi * d / n;
    double s = 0.0;
    for (int m = 1; m < n; ++m) s += std::cos(m * dt) / m;
    by_offset[d] = -2.0 * kPi / n * s - kPi / (static_cast<double>(n) * n) * ((d % 2) ? -1.0 : 1.0);
  }
  Eigen::MatrixXd r(node_count, node_count);
  for (int i = 0; i < node_count; ++i)
    for (int j = 0; j < node_count; ++j) r(i, j) = by_offset[(i - j + node_count) % node_count];
  return r;
}

cplx helmholtz_green(cplx k, double r) { return -0.25 * kI * hankel1(0, k * r); }

HelmholtzLayers assemble_helmholtz_layers(const BoundaryGrid &grid, cplx k) {
  const int count = grid.size();
  const double h = grid.step();
  const Eigen::MatrixXd weights = log_split_weights(count);
  HelmholtzLayers out;
  out.single.resize(count, count);
  out.adjoint.resize(count, count);

  for (int i = 0; i < count; ++i) {
    const double speed_i = grid.speed[i];
    out.single(i, i) = (weights(i, i) / (4.0 * kPi) +
                        h * (-0.25 * kI + (std::log(k * speed_i / 2.0) + kEulerGamma) / (2.0 * kPi))) *
                       speed_i;
    out.adjoint(i, i) = h * grid.curvature[i] * speed_i / (4.0 * kPi);
  }
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const Vec2 diff = grid.x[i] - grid.x[j];
      const double r = diff.norm();
      const LowOrderCyl c = low_order_cyl(k * r);
      const double dt = grid.t[i] - grid.t[j];
      const double s = std::sin(0.5 * dt);
      const double logsin = std::log(4.0 * s * s);

      // single layer: kernel symmetric up to the |y'| factor
      const cplx g = -0.25 * kI * c.h0;
      const cplx s1 = c.j0 / (4.0 * kPi);
      const cplx s2 = g - s1 * logsin;
      out.single(i, j) = (weights(i, j) * s1 + h * s2) * grid.speed[j];
      out.single(j, i) = (weights(j, i) * s1 + h * s2) * grid.speed[i];

      // adjoint double layer: depends on the normal at the target point
      const cplx radial = 0.25 * kI * k * c.h1 / r;
      const cplx radial1 = -k * c.j1 / (4.0 * kPi * r);
      const double proj_i = diff.dot(grid.normal[i]);
      const double proj_j = -diff.dot(grid.normal[j]);
      out.adjoint(i, j) =
          (weights(i, j) * radial1 * proj_i + h * (radial - radial1 * logsin) * proj_i) *
          grid.speed[j];
      out.adjoint(j, i) =
          (weights(j, i) * radial1 * proj_j + h * (radial - radial1 * logsin) * proj_j) *
          grid.speed[i];
    }
  }
  return out;
}

LaplaceLayers assemble_laplace_layers(const BoundaryGrid &grid) {
  const int count = grid.size();
  const double h = grid.step();
  const Eigen::MatrixXd weights = log_split_weights(count);
  LaplaceLayers out;
  out.single.resize(count, count);
  out.adjoint.resize(count, count);
  for (int i = 0; i < count; ++i) {
    const double speed_i = grid.speed[i];
    out.single(i, i) =
        (weights(i, i) / (4.0 * kPi) + h * std::log(speed_i) / (2.0 * kPi)) * speed_i;
    out.adjoint(i, i) = h * grid.curvature[i] * speed_i / (4.0 * kPi);
    for (int j = 0; j < count; ++j) {
      if (j == i) continue;
      const Vec2 diff = grid.x[i] - grid.x[j];
      const double r2 = diff.squaredNorm();
      const double s = std::sin(0.5 * (grid.t[i] - grid.t[j]));
      const double s2 = std::log(r2) / (4.0 * kPi) - std::log(4.0 * s * s) / (4.0 * kPi);
      out.single(i, j) = (weights(i, j) / (4.0 * kPi) + h * s2) * grid.speed[j];
      out.adjoint(i, j) = h * diff.dot(grid.normal[i]) / (2.0 * kPi * r2) * grid.speed[j];
    }
  }
  return out;
}

Eigen::VectorXcd single_layer_potential(const BoundaryGrid &grid, cplx k,
                                        const Eigen::VectorXcd &density,
                                        const std::vector<Vec2> &points) {
  const double h = grid.step();
  Eigen::VectorXcd out(static_cast<Eigen::Index>(points.size()));
  for (std::size_t p = 0; p < points.size(); ++p) {
    cplx acc = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
      const double r = (points[p] - grid.x[j]).norm();
      acc += helmholtz_green(k, r) * grid.speed[j] * density[j];
    }
    out[static_cast<Eigen::Index>(p)] = h * acc;
  }
  return out;
}

}  // namespace plasmon
