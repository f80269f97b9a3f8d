#pragma once

#include "plasmon/forward_solver.hpp"
#include "plasmon/geometry.hpp"

#include <Eigen/Dense>

#include <limits>
#include <string_view>
#include <vector>

namespace plasmon {

/// Alternating Levenberg-Marquardt / hyperparameter iteration settings.
struct InversionConfig {
  int m = 3;                  // trigonometric order, 2m+1 unknowns
  Eigen::VectorXd q0;         // empty: unit circle
  double eta0 = 10.0;
  double alpha0 = 800.0;
  double beta0 = 0.01;
  double delta = 0.01;        // noise level, enters the damping eta * delta^2
  int max_iters = 100;
  double stop_tol = 1e-5;     // on ||q_z - q_{z-1}||
  double fd_step = 1e-6;
  bool update_eta = true;     // false freezes eta at eta0
  int backtrack_limit = 20;

  void validate() const;
  Eigen::VectorXd initial_coeffs() const;
};

struct IterationRecord {
  int z = 0;
  double eta = 0.0;
  double residual_norm = 0.0;  // ||u^{s,delta} - F(q_{z-1})||, stacked real 2-norm
  double step_norm = 0.0;      // E_z
  int halvings = 0;
};

enum class Termination { converged, max_iters, step_rejected };
std::string_view termination_name(Termination t);

struct ReconstructionResult {
  Eigen::VectorXd q_map;
  double eta = 0.0;
  int iterations = 0;
  Termination reason = Termination::max_iters;
  std::vector<IterationRecord> log;
};

struct LMStep {
  Eigen::VectorXd q_next;
  Eigen::VectorXd delta_q;
  int halvings = 0;
};

/// Solves (G^T G + damping I) dq = G^T residual and returns q + dq, halving dq
/// while the radius of q + dq is not positive or reaches `outer_radius` (the
/// curve must stay inside the measurement circle). Throws StepRejected when
/// `backtrack_limit` halvings do not restore feasibility and SingularNormalEq
/// when damping = 0 and G is rank deficient.
LMStep lm_step(const Eigen::VectorXd &q, const Eigen::MatrixXd &g,
               const Eigen::VectorXd &residual, double damping, int backtrack_limit = 20,
               double outer_radius = std::numeric_limits<double>::infinity());

/// ((2m+1)/2 + alpha0 - 1) / (q^T q / 2 + beta0) with 2m+1 = q.size().
double eta_update(const Eigen::VectorXd &q, double alpha0, double beta0);

/// Runs the alternating iteration from cfg.initial_coeffs() against noisy data.
ReconstructionResult reconstruct(const NearFieldData &data, const InversionConfig &cfg,
                                 const ForwardSetup &setup);

/// Relative discrete L2 error of two radius functions on `samples` equispaced angles.
double relative_error(const StarlikeShape &estimate, const StarlikeShape &truth,
                      int samples = 256);

}  // namespace plasmon
