#pragma once

#include "plasmon/forward_solver.hpp"
#include "plasmon/geometry.hpp"

#include <Eigen/Dense>

#include <string>

namespace plasmon {

struct SensitivityReport {
  Eigen::VectorXcd values;      // SSF at the observation points
  double norm = 0.0;            // arclength-weighted discrete L2 norm over the circle
  double eps = 0.0;             // finest central-difference step used
  double error_estimate = 0.0;  // Richardson estimate of ||values - exact||
  std::string h_id;
};

struct SSFOptions {
  double eps = 1e-4;
  /// Relative tolerance for the Richardson check; FDUnstable beyond 10x this.
  double rel_tol = 1e-4;
  int fit_order = 64;
};

/// Shape derivative of the measurement map in the normal direction h:
/// central differences of full forward solves at eps and eps/2. The returned
/// values are the eps/2 difference quotient.
SensitivityReport ssf(const StarlikeShape &shape, const ForwardSetup &setup,
                      const BoundaryFunction &h, const std::string &h_id = "h",
                      const SSFOptions &opts = {});

/// Discrete L2(circle) norm, sqrt(sum |v_i|^2 * 2 pi R0 / count).
double circle_l2_norm(const Eigen::VectorXcd &values, const ObservationCircle &circle);

/// Real-stacked measurement map q -> [Re u^s; Im u^s] for a trigonometric-series shape.
Eigen::VectorXd stacked_forward(const Eigen::VectorXd &coeffs, const ForwardSetup &setup);

/// Forward-difference Jacobian of stacked_forward, 2*count x (2m+1), with
/// step fd_step * max(1, |q_k|) for coefficient k. `base` may carry a
/// precomputed stacked_forward(coeffs).
Eigen::MatrixXd jacobian(const Eigen::VectorXd &coeffs, const ForwardSetup &setup,
                         double fd_step = 1e-6, const Eigen::VectorXd *base = nullptr);

struct SVDReport {
  Eigen::VectorXd singular_values;  // descending
  double s_max = 0.0;
  double s_min = 0.0;
  double cond = 0.0;
};

SVDReport svd_report(const Eigen::MatrixXd &g);

}  // namespace plasmon
