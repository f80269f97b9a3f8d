#include "plasmon/inversion.hpp"

#include "plasmon/errors.hpp"
#include "plasmon/sensitivity.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace plasmon {

namespace {
// Dense enough that a feasible sample set implies a feasible solver grid.
constexpr int kFeasibilitySamples = 4096;
}  // namespace

void InversionConfig::validate() const {
  if (m < 0) throw NumericalError(ErrorKind::InvalidArgument, "trig order m must be >= 0");
  if (q0.size() != 0 && q0.size() != 2 * m + 1)
    throw NumericalError(ErrorKind::InvalidArgument, "q0 must have 2m+1 entries");
  if (!(beta0 > 0.0)) throw NumericalError(ErrorKind::InvalidArgument, "beta0 must be positive");
  if (!(alpha0 + 0.5 * (2 * m + 1) > 1.0))
    throw NumericalError(ErrorKind::InvalidArgument, "alpha0 + (2m+1)/2 must exceed 1");
  if (!(delta >= 0.0)) throw NumericalError(ErrorKind::InvalidArgument, "delta must be >= 0");
  if (!(eta0 > 0.0)) throw NumericalError(ErrorKind::InvalidArgument, "eta0 must be positive");
  if (max_iters < 1 || !(stop_tol >= 0.0) || !(fd_step > 0.0))
    throw NumericalError(ErrorKind::InvalidArgument, "bad iteration controls");
}

Eigen::VectorXd InversionConfig::initial_coeffs() const {
  if (q0.size() != 0) return q0;
  Eigen::VectorXd q = Eigen::VectorXd::Zero(2 * m + 1);
  q[0] = 1.0;
  return q;
}

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iters: return "max_iters";
    case Termination::step_rejected: return "step_rejected";
  }
  return "unknown";
}

LMStep lm_step(const Eigen::VectorXd &q, const Eigen::MatrixXd &g,
               const Eigen::VectorXd &residual, double damping, int backtrack_limit,
               double outer_radius) {
  const Eigen::Index dim = q.size();
  Eigen::MatrixXd normal = g.transpose() * g;
  normal.diagonal().array() += damping;
  const Eigen::VectorXd rhs = g.transpose() * residual;

  Eigen::VectorXd dq;
  if (damping > 0.0) {
    Eigen::LLT<Eigen::MatrixXd> llt(normal);
    if (llt.info() != Eigen::Success)
      throw NumericalError(ErrorKind::SingularNormalEq, "normal equations not positive definite");
    dq = llt.solve(rhs);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd s = svd.singularValues();
    if (s.size() < dim || s[s.size() - 1] <= 1e-12 * s[0])
      throw NumericalError(ErrorKind::SingularNormalEq, "rank-deficient Jacobian with zero damping");
    dq = svd.solve(residual);
  }

  LMStep step;
  step.delta_q = dq;
  for (int halving = 0; halving <= backtrack_limit; ++halving) {
    const Eigen::VectorXd candidate = q + step.delta_q;
    const StarlikeShape shape = StarlikeShape::trig_series(candidate);
    if (shape.min_radius(kFeasibilitySamples) > 0.0 &&
        shape.max_radius(kFeasibilitySamples) < outer_radius) {
      step.q_next = candidate;
      step.halvings = halving;
      return step;
    }
    step.delta_q *= 0.5;
  }
  std::ostringstream os;
  os << "step still infeasible after " << backtrack_limit << " halvings";
  throw NumericalError(ErrorKind::StepRejected, os.str());
}

double eta_update(const Eigen::VectorXd &q, double alpha0, double beta0) {
  const double shape_param = 0.5 * static_cast<double>(q.size()) + alpha0 - 1.0;
  return shape_param / (0.5 * q.squaredNorm() + beta0);
}

ReconstructionResult reconstruct(const NearFieldData &data, const InversionConfig &cfg,
                                 const ForwardSetup &setup) {
  cfg.validate();
  const Eigen::VectorXd target = stack_complex(data.values);
  ReconstructionResult out;
  Eigen::VectorXd q = cfg.initial_coeffs();
  double eta = cfg.eta0;
  out.reason = Termination::max_iters;

  for (int z = 0; z < cfg.max_iters; ++z) {
    const Eigen::VectorXd model = stacked_forward(q, setup);
    const Eigen::VectorXd residual = target - model;
    const Eigen::MatrixXd g = jacobian(q, setup, cfg.fd_step, &model);
    LMStep step;
    try {
      step = lm_step(q, g, residual, eta * cfg.delta * cfg.delta, cfg.backtrack_limit,
                     setup.circle.radius);
    } catch (const NumericalError &e) {
      if (e.kind() != ErrorKind::StepRejected) throw;
      out.reason = Termination::step_rejected;
      break;
    }
    const double step_norm = (step.q_next - q).norm();
    q = step.q_next;
    if (cfg.update_eta) eta = eta_update(q, cfg.alpha0, cfg.beta0);
    out.log.push_back({z + 1, eta, residual.norm(), step_norm, step.halvings});
    out.iterations = z + 1;
    if (step_norm <= cfg.stop_tol) {
      out.reason = Termination::converged;
      break;
    }
  }
  out.q_map = q;
  out.eta = eta;
  return out;
}

double relative_error(const StarlikeShape &estimate, const StarlikeShape &truth, int samples) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * std::numbers::pi * i / samples;
    const double rt = truth.radius(t);
    const double d = estimate.radius(t) - rt;
    num += d * d;
    den += rt * rt;
  }
  return std::sqrt(num / den);
}

}  // namespace plasmon
