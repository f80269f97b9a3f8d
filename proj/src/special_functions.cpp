#include "plasmon/special_functions.hpp"

#include "plasmon/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace plasmon {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesRadius = 2.0;
constexpr double kSeriesTol = 1e-18;

void check_domain(int n, cplx z, bool singular_at_zero) {
  if (std::abs(n) > kMaxBesselOrder) {
    std::ostringstream os;
    os << "order " << n << " exceeds " << kMaxBesselOrder;
    throw NumericalError(ErrorKind::DomainError, os.str());
  }
  const double az = std::abs(z);
  if (az == 0.0) {
    if (singular_at_zero)
      throw NumericalError(ErrorKind::DomainError, "singular at z = 0");
    return;
  }
  if (!std::isfinite(az) || az > kMaxBesselArgument) {
    std::ostringstream os;
    os << "|z| = " << az << " outside (0, " << kMaxBesselArgument << "]";
    throw NumericalError(ErrorKind::DomainError, os.str());
  }
  if (std::abs(std::arg(z)) > 0.5 * kPi + 1e-12) {
    std::ostringstream os;
    os << "arg z = " << std::arg(z) << " outside [-pi/2, pi/2]";
    throw NumericalError(ErrorKind::DomainError, os.str());
  }
}

double sign_for_negative_order(int n) { return (n < 0 && (-n) % 2 == 1) ? -1.0 : 1.0; }

// Ascending series sum_k (-z^2/4)^k (z/2)^n / (k! (n+k)!).
cplx j_series(int n, cplx z) {
  if (z == cplx(0.0)) return n == 0 ? cplx(1.0) : cplx(0.0);
  const cplx half = 0.5 * z;
  const cplx mq = -half * half;
  cplx term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / static_cast<double>(k);
  cplx sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= mq / (static_cast<double>(k) * static_cast<double>(n + k));
    sum += term;
    if (std::abs(term) < kSeriesTol * std::abs(sum)) break;
  }
  return sum;
}

// Y_0 and Y_1 from their logarithmic series (valid for any z, used for |z| <= 2).
void y01_series(cplx z, cplx j0, cplx j1, cplx &y0, cplx &y1) {
  const cplx half = 0.5 * z;
  const cplx mq = -half * half;
  const cplx lg = std::log(half);

  // Y_0 = (2/pi)(log(z/2)+gamma) J_0 + (2/pi) sum_{k>=1} (-1)^{k+1} H_k (z^2/4)^k / (k!)^2
  cplx s0 = 0.0;
  {
    cplx term = 1.0;
    double harmonic = 0.0;
    for (int k = 1; k < 500; ++k) {
      term *= mq / (static_cast<double>(k) * static_cast<double>(k));
      harmonic += 1.0 / k;
      const cplx add = -harmonic * term;
      s0 += add;
      if (std::abs(add) < kSeriesTol * (std::abs(s0) + 1e-300)) break;
    }
  }
  y0 = (2.0 / kPi) * ((lg + kEulerGamma) * j0 + s0);

  // Y_1 = -2/(pi z) + (2/pi) log(z/2) J_1
  //       - (1/pi) sum_{k>=0} (psi(k+1) + psi(k+2)) (-z^2/4)^k (z/2) / (k! (k+1)!)
  cplx s1 = 0.0;
  {
    cplx term = half;
    double hk = 0.0;
    for (int k = 0; k < 500; ++k) {
      if (k > 0) {
        term *= mq / (static_cast<double>(k) * static_cast<double>(k + 1));
        hk += 1.0 / k;
      }
      const double psi_sum = -2.0 * kEulerGamma + hk + (hk + 1.0 / (k + 1));
      const cplx add = psi_sum * term;
      s1 += add;
      if (k > 0 && std::abs(add) < kSeriesTol * std::abs(s1)) break;
    }
  }
  y1 = -2.0 / (kPi * z) + (2.0 / kPi) * lg * j1 - s1 / kPi;
}

// Miller backward recurrence; returns J_0..J_top with top >= nmax.
std::vector<cplx> j_miller(int nmax, cplx z) {
  const double az = std::abs(z);
  const double base = std::max(static_cast<double>(nmax), az);
  int top = static_cast<int>(base + 20.0 + std::sqrt(40.0 * base));
  top += top % 2;
  std::vector<cplx> f(top + 2, cplx(0.0));
  f[top + 1] = 0.0;
  f[top] = 1e-30;
  for (int k = top; k >= 1; --k) {
    f[k - 1] = (2.0 * k / z) * f[k] - f[k + 1];
    if (std::abs(f[k - 1]) > 1e250) {
      for (int i = k - 1; i <= top + 1; ++i) f[i] *= 1e-250;
    }
  }
  // Normalize with exp(-+iz) = sum_k (-+i)^k J_k, choosing the sign whose
  // terms do not cancel.
  const cplx unit = z.imag() >= 0.0 ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
  cplx s = f[0];
  cplx p = 1.0;
  for (int k = 1; k <= top; ++k) {
    p *= unit;
    s += 2.0 * p * f[k];
  }
  const cplx target = std::exp(unit * z);
  const cplx norm = target / s;
  for (auto &v : f) v *= norm;
  f.resize(top + 1);
  return f;
}

// Neumann series for Y_0 and Y_1 = -Y_0' from a Miller J table.
void y01_neumann(cplx z, const std::vector<cplx> &j, cplx &y0, cplx &y1) {
  const cplx lg = std::log(0.5 * z) + kEulerGamma;
  cplx s = 0.0, ds = 0.0;
  const int top = static_cast<int>(j.size()) - 1;
  for (int k = 1; 2 * k + 1 <= top; ++k) {
    const double sg = (k % 2 == 0) ? 1.0 : -1.0;
    s += sg * j[2 * k] / static_cast<double>(k);
    ds += sg * 0.5 * (j[2 * k - 1] - j[2 * k + 1]) / static_cast<double>(k);
  }
  y0 = (2.0 / kPi) * lg * j[0] - (4.0 / kPi) * s;
  const cplx dy0 = (2.0 / kPi) * (j[0] / z - lg * j[1]) - (4.0 / kPi) * ds;
  y1 = -dy0;
}

// H_0'/H_0 = i - 1/(2z) + (i/z) K with the continued fraction
//   K = a_1/(b_1 + a_2/(b_2 + ...)),  a_k = ((2k-1)/2)^2,  b_k = 2(z + ik),
// evaluated by the modified Lentz algorithm (Steed's method). Converges
// quickly for |z| > 2 in the closed upper half-plane.
cplx hankel0_log_derivative(cplx z) {
  constexpr double tiny = 1e-300;
  const cplx i(0.0, 1.0);
  cplx f = tiny, c = f, d = 0.0;
  for (int k = 1; k < 10000; ++k) {
    const double a = (k - 0.5) * (k - 0.5);
    const cplx b = 2.0 * (z + i * static_cast<double>(k));
    d = b + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const cplx delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return i - 0.5 / z + (i / z) * f;
  }
  throw NumericalError(ErrorKind::DomainError, "Hankel continued fraction did not converge");
}

// J, Y and H of orders 0 and 1 at one argument. Away from the origin in the
// upper half-plane H is the small solution, so J + iY would cancel; there H
// comes from its continued fraction normalized by the Wronskian
// J H' - J' H = 2i/(pi z), and Y = -i (H - J).
struct Cyl01 {
  cplx j0, j1, y0, y1, h0, h1;
};

Cyl01 cyl01(cplx z) {
  Cyl01 c;
  const cplx i(0.0, 1.0);
  if (std::abs(z) <= kSeriesRadius) {
    c.j0 = j_series(0, z);
    c.j1 = j_series(1, z);
    y01_series(z, c.j0, c.j1, c.y0, c.y1);
  } else {
    const std::vector<cplx> j = j_miller(1, z);
    c.j0 = j[0];
    c.j1 = j[1];
    if (z.imag() >= 0.0) {
      const cplx g = hankel0_log_derivative(z);
      c.h0 = 2.0 * i / (kPi * z * (c.j0 * g + c.j1));
      c.h1 = -g * c.h0;
      c.y0 = -i * (c.h0 - c.j0);
      c.y1 = -i * (c.h1 - c.j1);
      return c;
    }
    y01_neumann(z, j, c.y0, c.y1);
  }
  c.h0 = c.j0 + i * c.y0;
  c.h1 = c.j1 + i * c.y1;
  return c;
}

// C_{k+1} = (2k/z) C_k - C_{k-1}; stable upward for Y and H.
std::vector<cplx> upward(cplx c0, cplx c1, int nmax, cplx z) {
  std::vector<cplx> c(std::max(nmax, 1) + 1);
  c[0] = c0;
  c[1] = c1;
  for (int k = 1; k < nmax; ++k) c[k + 1] = (2.0 * k / z) * c[k] - c[k - 1];
  c.resize(nmax + 1);
  return c;
}

std::vector<cplx> hankel1_sequence(int nmax, cplx z) {
  const Cyl01 c = cyl01(z);
  return upward(c.h0, c.h1, nmax, z);
}

}  // namespace

std::vector<cplx> bessel_j_sequence(int nmax, cplx z) {
  check_domain(nmax, z, false);
  std::vector<cplx> out(nmax + 1);
  if (std::abs(z) <= kSeriesRadius) {
    for (int n = 0; n <= nmax; ++n) out[n] = j_series(n, z);
    return out;
  }
  const std::vector<cplx> f = j_miller(nmax, z);
  for (int n = 0; n <= nmax; ++n) out[n] = f[n];
  return out;
}

std::vector<cplx> bessel_y_sequence(int nmax, cplx z) {
  check_domain(nmax, z, true);
  const Cyl01 c = cyl01(z);
  return upward(c.y0, c.y1, nmax, z);
}

cplx bessel_j(int n, cplx z) {
  check_domain(n, z, false);
  const int an = std::abs(n);
  const cplx v = std::abs(z) <= kSeriesRadius ? j_series(an, z) : j_miller(an, z)[an];
  return sign_for_negative_order(n) * v;
}

cplx bessel_y(int n, cplx z) {
  check_domain(n, z, true);
  const int an = std::abs(n);
  return sign_for_negative_order(n) * bessel_y_sequence(an, z)[an];
}

cplx hankel1(int n, cplx z) {
  check_domain(n, z, true);
  const int an = std::abs(n);
  return sign_for_negative_order(n) * hankel1_sequence(an, z)[an];
}

cplx bessel_j_prime(int n, cplx z) {
  if (n == 0) return -bessel_j(1, z);
  return 0.5 * (bessel_j(n - 1, z) - bessel_j(n + 1, z));
}

cplx bessel_y_prime(int n, cplx z) {
  if (n == 0) return -bessel_y(1, z);
  return 0.5 * (bessel_y(n - 1, z) - bessel_y(n + 1, z));
}

cplx hankel1_prime(int n, cplx z) {
  if (n == 0) return -hankel1(1, z);
  return 0.5 * (hankel1(n - 1, z) - hankel1(n + 1, z));
}

LowOrderCyl low_order_cyl(cplx z) {
  check_domain(1, z, true);
  const Cyl01 c = cyl01(z);
  return {c.j0, c.j1, c.h0, c.h1};
}

}  // namespace plasmon
