#pragma once

#include "plasmon/special_functions.hpp"

namespace plasmon {

/// Background (m) and inclusion (c) parameters at one frequency.
struct MaterialConfig {
  double eps_m = 1.0;
  double mu_m = 1.0;
  double eps_c = 2.0;
  cplx mu_c = 5.0;
  double omega = 0.01;

  double k_m() const;
  /// Principal square root, so Im k_c >= 0 whenever Im mu_c >= 0.
  cplx k_c() const;
  /// Throws InvalidArgument when a positivity constraint or Im mu_c >= 0 fails,
  /// DegenerateContrast when mu_c = -mu_m.
  void validate() const;
};

/// lambda = (mu_m + mu_c) / (2 (mu_m - mu_c)). Throws DegenerateContrast at mu_c = mu_m.
cplx lambda_of_mu(double mu_m, cplx mu_c);

/// mu_c = mu_m (2 lambda - 1) / (2 lambda + 1). Throws DegenerateLambda at lambda = -1/2.
cplx mu_of_lambda(double mu_m, cplx lambda);

struct DrudeParams {
  double mu0 = 1.0;
  double filling = 0.5;   // F in (0, 1)
  double omega0 = 1.0;    // resonant frequency
  double tau = 100.0;     // relaxation rate

  void validate() const;
};

struct DrudeValue {
  cplx mu;
  /// (1-F)(w^2-w0^2)^2 - F w0^2 (w^2-w0^2) + w^2/tau^2 < 0, which implies Re mu < 0.
  bool negative_criterion = false;
};

DrudeValue drude_mu(const DrudeParams &p, double omega);

/// Bisection for Re lambda(mu_m, drude_mu(p, omega)) = target on [lo, hi],
/// to |d omega| < 1e-10. Throws NoBracket without a sign change.
double find_resonant_omega(const DrudeParams &p, double mu_m, double target, double lo,
                           double hi);

}  // namespace plasmon
