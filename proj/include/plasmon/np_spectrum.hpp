#pragma once

#include "plasmon/geometry.hpp"

#include <Eigen/Dense>

#include <vector>

namespace plasmon {

/// Static layer operators on one boundary grid.
struct NPDiscretization {
  BoundaryGrid grid;
  Eigen::MatrixXd single;   // S_D (log kernel)
  Eigen::MatrixXd kstar;    // K*_D
  Eigen::VectorXd weights;  // arclength quadrature weights |x'(t_j)| * 2pi/(2n)
};

NPDiscretization assemble(const BoundaryGrid &grid);

struct NPEigenpair {
  double value = 0.0;
  Eigen::VectorXd density;  // H*-normalized
};

/// Eigenvalues with |lambda| below this are reported as the numerically-zero cluster.
inline constexpr double kZeroClusterThreshold = 1e-4;

struct NPSpectrum {
  /// The eigenvalue 1/2 with the equilibrium density (integral normalized to 1).
  NPEigenpair top;
  /// Resonance candidates, sorted by |lambda| descending, excluding 1/2 and the zero cluster.
  std::vector<NPEigenpair> candidates;
  /// Eigenvalues with |lambda| < kZeroClusterThreshold, sorted by |lambda| descending.
  std::vector<double> zero_cluster;
  /// Largest |Im| of the plain (nonsymmetric) eigenvalues of K*, a consistency diagnostic.
  double max_imag_part = 0.0;
};

/// Equilibrium density: K* phi = phi / 2 with sum_j w_j phi_j = 1.
Eigen::VectorXd equilibrium_density(const NPDiscretization &d);

/// Matrix of the modified single layer S~ (S on mean-zero densities, -1 on the
/// equilibrium density).
Eigen::MatrixXd modified_single_layer(const NPDiscretization &d, const Eigen::VectorXd &phi0);

/// Eigenpairs of K* in the H* inner product <u, v> = -<u, S~ v>. `count` caps the
/// number of candidates returned (<= 0 returns all).
NPSpectrum spectrum(const NPDiscretization &d, int count = 0);

}  // namespace plasmon
