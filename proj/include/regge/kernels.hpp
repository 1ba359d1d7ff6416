#pragma once

// Green kernels of the free radial equation
//
//   N(r,s,nu) = u(r) v(s) - u(s) v(r),   u = sqrt(pi r/2) J_{nu_R}, v = -i sqrt(pi r/2) H1_{nu_R}
//   M(r,s,nu) = (r/s)^{nu_R} N(r,s,nu)
//   K(r,s,nu) = F0+(s,nu) / F0+(r,nu) N(r,s,nu)
//
// and empirical checks of their bounds on [r0, R]^2.

#include <complex>
#include <vector>

#include "json.hpp"

namespace regge {

using cplx = std::complex<double>;

struct KernelPoint {
  double r = 0.0;
  double s = 0.0;
  cplx nu;  // full nu; nu_R = nu - flux
};

/// N depends on nu_R^2 only; evaluated with the order of non-negative real
/// part. Near the imaginary axis u and v are both exponentially large and
/// the equivalent form (h2(r) v(s) - h2(s) v(r)) / 2, h2 = sqrt(pi r/2) H2,
/// is used instead.
cplx kernel_N(const KernelPoint& p, double flux);

/// Requires Re(nu_R) >= 0.
cplx kernel_M(const KernelPoint& p, double flux);

/// Throws DivisionByNearZero if |F0+(r, nu)| < 1e-300.
cplx kernel_K(const KernelPoint& p, double flux);

/// The free regular solution written with Hankel products,
/// i (pi sqrt(r r0) / 2) (H2(r0) H1(r) - H1(r0) H2(r)). Equals 2 N(r, r0, nu).
cplx free_regular_hankel(double r, double r0, cplx nu, double flux);

struct KernelBox {
  double r0 = 0.5;
  double R = 2.0;
  int n = 33;  // points per axis
};

enum class KernelWeight {
  N,  // |N| (|nu_R| + 1) (r/s)^{Re nu_R}
  M,  // |M| (|nu_R| + 1)
};

struct KernelBoundReport {
  KernelWeight weight = KernelWeight::N;
  KernelBox box;
  double c_emp = 0.0;          // n x n grid
  double c_emp_refined = 0.0;  // (2n-1) x (2n-1) grid
  double drift = 0.0;          // max / min of the two
  bool pass = false;
  double max_r = 0.0, max_s = 0.0;
  cplx max_nu_R;
  std::vector<cplx> nu_R;          // samples
  std::vector<double> per_sample;  // refined-grid maximum for each sample

  nlohmann::json to_json() const;
};

/// Sup of the weighted kernel over r0 <= r <= s <= R for each sample nu
/// (Re(nu - flux) >= 0, else DomainError). Passes when the constant is finite
/// and the grid-doubling drift is below 2.
KernelBoundReport verify_kernel_bounds(const KernelBox& box, const std::vector<cplx>& nu_samples,
                                       double flux, KernelWeight weight = KernelWeight::N,
                                       int threads = 0);

/// nu_R samples: real axis 1..40, imaginary axis 5i..40i step 5, rays arg = +-pi/4 with
/// |nu_R| = 5..40 step 5.
std::vector<cplx> default_kernel_samples();

}  // namespace regge
