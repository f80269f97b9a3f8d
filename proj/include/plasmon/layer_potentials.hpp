#pragma once

#include "plasmon/geometry.hpp"
#include "plasmon/special_functions.hpp"

#include <Eigen/Dense>

namespace plasmon {

// Nystrom matrices for the layer operators on a BoundaryGrid, acting on
// densities sampled at the grid nodes (densities per unit arclength).
//
// Fundamental solution G(x, y) = -(i/4) H_0^(1)(k|x-y|); at k = 0 it is
// (1/2pi) log|x-y|. Jump relations: d/dnu S[psi]|_{+-} = (+-1/2 + K*)[psi].
//
// Log-singular kernels use the Martensen-Kussmaul splitting
//   M(t, s) = M1(t, s) log(4 sin^2((t-s)/2)) + M2(t, s)
// with product weights for the log part and the trapezoid rule for M2.

struct HelmholtzLayers {
  Eigen::MatrixXcd single;  // S^k
  Eigen::MatrixXcd adjoint; // (K^k)*
};

struct LaplaceLayers {
  Eigen::MatrixXd single;   // S
  Eigen::MatrixXd adjoint;  // K*
};

/// R_{ij}: product-quadrature weights for log(4 sin^2((t_i - s)/2)) on 2n nodes.
Eigen::MatrixXd log_split_weights(int node_count);

HelmholtzLayers assemble_helmholtz_layers(const BoundaryGrid &grid, cplx k);
LaplaceLayers assemble_laplace_layers(const BoundaryGrid &grid);

/// -(i/4) H_0^(1)(k r)
cplx helmholtz_green(cplx k, double r);

/// Single-layer potential S^k[density] at off-boundary points (plain trapezoid rule).
Eigen::VectorXcd single_layer_potential(const BoundaryGrid &grid, cplx k,
                                        const Eigen::VectorXcd &density,
                                        const std::vector<Vec2> &points);

}  // namespace plasmon
