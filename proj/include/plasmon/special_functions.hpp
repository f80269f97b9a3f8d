#pragma once

#include <complex>
#include <vector>

namespace plasmon {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Largest order accepted by the cylinder-function routines.
inline constexpr int kMaxBesselOrder = 60;
/// Largest |z| accepted by the cylinder-function routines.
inline constexpr double kMaxBesselArgument = 30.0;

// Integer-order Bessel functions for 0 < |z| <= 30 and |arg z| <= pi/2.
// Negative orders use C_{-n} = (-1)^n C_n. DomainError is thrown outside
// that range (and at z = 0 for the singular functions).
//
// |z| <= 2 uses the ascending series for J_n, Y_0 and Y_1; larger |z| uses
// Miller's backward recurrence for J_n and the Neumann series for Y_0, Y_1.
// Higher Y_n always come from upward recurrence, which is stable for Y.

cplx bessel_j(int n, cplx z);
cplx bessel_y(int n, cplx z);
cplx hankel1(int n, cplx z);
cplx bessel_j_prime(int n, cplx z);
cplx bessel_y_prime(int n, cplx z);
cplx hankel1_prime(int n, cplx z);

/// J_0..J_nmax in one pass.
std::vector<cplx> bessel_j_sequence(int nmax, cplx z);
/// Y_0..Y_nmax in one pass.
std::vector<cplx> bessel_y_sequence(int nmax, cplx z);

/// J_0, J_1, H_0^(1), H_1^(1) at one argument; the layer-potential kernels
/// need exactly these four.
struct LowOrderCyl {
  cplx j0, j1, h0, h1;
};
LowOrderCyl low_order_cyl(cplx z);

}  // namespace plasmon
