#include "plasmon/materials.hpp"

#include "plasmon/errors.hpp"

#include <cmath>
#include <sstream>

namespace plasmon {

double MaterialConfig::k_m() const { return omega * std::sqrt(eps_m * mu_m); }

cplx MaterialConfig::k_c() const { return omega * std::sqrt(cplx(eps_c) * mu_c); }

void MaterialConfig::validate() const {
  if (!(eps_m > 0.0) || !(mu_m > 0.0) || !(eps_c > 0.0) || !(omega > 0.0))
    throw NumericalError(ErrorKind::InvalidArgument,
                         "eps_m, mu_m, eps_c and omega must be positive");
  if (mu_c.imag() < 0.0)
    throw NumericalError(ErrorKind::InvalidArgument, "Im mu_c must be nonnegative");
  if (std::abs(mu_c + mu_m) == 0.0)
    throw NumericalError(ErrorKind::DegenerateContrast, "mu_c = -mu_m");
}

cplx lambda_of_mu(double mu_m, cplx mu_c) {
  const cplx den = 2.0 * (mu_m - mu_c);
  if (std::abs(den) == 0.0)
    throw NumericalError(ErrorKind::DegenerateContrast, "mu_c equals mu_m");
  return (mu_m + mu_c) / den;
}

cplx mu_of_lambda(double mu_m, cplx lambda) {
  const cplx den = 2.0 * lambda + 1.0;
  if (std::abs(den) == 0.0)
    throw NumericalError(ErrorKind::DegenerateLambda, "lambda = -1/2");
  return mu_m * (2.0 * lambda - 1.0) / den;
}

void DrudeParams::validate() const {
  if (!(mu0 > 0.0) || !(filling > 0.0) || !(filling < 1.0) || !(omega0 > 0.0) || !(tau > 0.0))
    throw NumericalError(ErrorKind::InvalidArgument,
                         "Drude parameters need mu0, omega0, tau > 0 and 0 < F < 1");
}

DrudeValue drude_mu(const DrudeParams &p, double omega) {
  const double w2 = omega * omega;
  const double d = w2 - p.omega0 * p.omega0;
  const cplx den(d, omega / p.tau);
  DrudeValue v;
  v.mu = p.mu0 * (1.0 - p.filling * w2 / den);
  const double crit = (1.0 - p.filling) * d * d - p.filling * p.omega0 * p.omega0 * d +
                      w2 / (p.tau * p.tau);
  v.negative_criterion = crit < 0.0;
  return v;
}

double find_resonant_omega(const DrudeParams &p, double mu_m, double target, double lo,
                           double hi) {
  p.validate();
  auto f = [&](double w) { return lambda_of_mu(mu_m, drude_mu(p, w).mu).real() - target; };
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    std::ostringstream os;
    os << "Re lambda - target has the same sign at omega=" << lo << " and " << hi;
    throw NumericalError(ErrorKind::NoBracket, os.str());
  }
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace plasmon
