#include "plasmon/sensitivity.hpp"

#include "plasmon/errors.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <sstream>

namespace plasmon {

double circle_l2_norm(const Eigen::VectorXcd &values, const ObservationCircle &circle) {
  return std::sqrt(values.squaredNorm() * circle.weight());
}

SensitivityReport ssf(const StarlikeShape &shape, const ForwardSetup &setup,
                      const BoundaryFunction &h, const std::string &h_id,
                      const SSFOptions &opts) {
  if (!(opts.eps > 0.0)) throw NumericalError(ErrorKind::InvalidArgument, "eps must be positive");
  auto quotient = [&](double eps) -> Eigen::VectorXcd {
    const Eigen::VectorXcd plus = setup(perturb(shape, h, eps, opts.fit_order));
    const Eigen::VectorXcd minus = setup(perturb(shape, h, -eps, opts.fit_order));
    return (plus - minus) / (2.0 * eps);
  };
  const Eigen::VectorXcd coarse = quotient(opts.eps);
  const Eigen::VectorXcd fine = quotient(0.5 * opts.eps);
  const double gap = (coarse - fine).norm();

  SensitivityReport out;
  out.values = fine;
  out.eps = 0.5 * opts.eps;
  out.error_estimate = gap / 3.0 * std::sqrt(setup.circle.weight());
  out.norm = circle_l2_norm(fine, setup.circle);
  out.h_id = h_id;
  // Absolute floor: roundoff of the forward map amplified by 1/eps.
  const double floor = 1e-13 * setup(shape).norm() / opts.eps;
  if (gap > 10.0 * opts.rel_tol * fine.norm() + floor) {
    std::ostringstream os;
    os << "Richardson pair disagrees: |D(eps) - D(eps/2)| = " << gap << " vs |D| = " << fine.norm();
    throw NumericalError(ErrorKind::FDUnstable, os.str());
  }
  return out;
}

Eigen::VectorXd stacked_forward(const Eigen::VectorXd &coeffs, const ForwardSetup &setup) {
  return stack_complex(setup(StarlikeShape::trig_series(coeffs)));
}

Eigen::MatrixXd jacobian(const Eigen::VectorXd &coeffs, const ForwardSetup &setup, double fd_step,
                         const Eigen::VectorXd *base) {
  const Eigen::VectorXd f0 = base ? *base : stacked_forward(coeffs, setup);
  Eigen::MatrixXd g(f0.size(), coeffs.size());
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    const double step = fd_step * std::max(1.0, std::abs(coeffs[k]));
    Eigen::VectorXd q = coeffs;
    q[k] += step;
    g.col(k) = (stacked_forward(q, setup) - f0) / step;
  }
  return g;
}

SVDReport svd_report(const Eigen::MatrixXd &g) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  SVDReport r;
  r.singular_values = svd.singularValues();
  if (r.singular_values.size() == 0) return r;
  r.s_max = r.singular_values[0];
  r.s_min = r.singular_values[r.singular_values.size() - 1];
  r.cond = r.s_min > 0.0 ? r.s_max / r.s_min : std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace plasmon
