#pragma once

// Complex Gamma and Bessel/Hankel functions of complex order at real positive
// argument. Everything here is evaluated from convergent power series, which is
// accurate on the compact argument range used by the radial solvers
// (0 < r <= kRMax) and for orders |nu| <= kNuMax.

#include <complex>
#include <utility>

namespace regge::specfun {

using cplx = std::complex<double>;

inline constexpr double kNuMax = 60.0;
inline constexpr double kRMax = 20.0;
inline constexpr int kKMax = 400;

/// Orders closer than this to an integer n use the integer-order branch.
inline constexpr double kIntegerThreshold = 1e-4;

/// Values of the cylinder functions of order nu at r, with r-derivatives.
struct BesselValue {
  cplx J, Y, H1, H2;
  cplx dJ, dY, dH1, dH2;
};

/// sin(pi z) and cos(pi z) with exact reduction of the real part.
cplx sin_pi(cplx z);
cplx cos_pi(cplx z);

/// Gamma(z). Lanczos (g = 7, 9 terms) for Re z >= 1/2, reflection otherwise.
/// Throws PoleError at nonpositive integers.
cplx gamma_complex(cplx z);

/// log Gamma(z) on the principal branch for Re z >= 1/2 (Lanczos form).
cplx log_gamma(cplx z);

/// 1/Gamma(z), entire; exactly zero at nonpositive integers.
cplx rgamma(cplx z);

/// J_nu(r) from the ascending series.
cplx bessel_j(cplx nu, double r);

/// J_nu(r) and dJ_nu/dr from the ascending series (termwise derivative).
std::pair<cplx, cplx> bessel_j_with_derivative(cplx nu, double r);

/// Y_n(r) and dY_n/dr for integer n from the classical limiting series.
std::pair<double, double> bessel_y_integer(int n, double r);

/// J, Y, H1, H2 and their r-derivatives.
///
/// Non-integer orders use H1 = (J_{-nu} - e^{-i pi nu} J_nu) / (i sin(pi nu)).
/// Exact integers use the limiting series for Y_n. For 0 < |nu - n| < 1e-4,
/// Y is the Taylor polynomial in (nu - n) whose coefficients come from a
/// 16-point trapezoidal Cauchy integral of the non-integer formula on the
/// circle |mu - n| = 1/4.
BesselValue bessel_h(cplx nu, double r);

/// Leading term -(i/pi) Gamma(nu) (r/2)^{-nu} of H1 for large |nu| in the
/// sector |Arg nu| <= pi/2 - 0.1, |nu| >= 5. Cross-check reference only.
cplx hankel_asymptotic_large_nu(cplx nu, double r);

/// Ratios |H1_{iy}(r)| / (sqrt(2/(pi|y|)) e^{pi y/2}) and
/// |H2_{iy}(r)| / (sqrt(2/(pi|y|)) e^{-pi y/2}). Requires |y| >= 5.
std::pair<double, double> hankel_imaginary_axis_check(double y, double r);

}  // namespace regge::specfun
