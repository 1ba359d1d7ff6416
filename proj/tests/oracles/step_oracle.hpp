#pragma once

// Two-region matching for V = V0 on [r0, R], no field, integer order l.
// Inside, -u'' + (l^2 - 1/4)/r^2 u + V0 u = u has the solutions
// sqrt(r) J_l(kr), sqrt(r) Y_l(kr) with k = sqrt(1 - V0). Only the C++17
// standard-library Bessel functions are used, so this is independent of
// the library's complex-order series.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

namespace oracle {

using cplx = std::complex<double>;

struct StepResult {
  cplx F_plus_r0, F_minus_r0;  // Jost solutions at r0
  cplx alpha, beta, sigma;
  double delta;                // principal branch, (-pi/2, pi/2]
};

inline double jl(int l, double x) { return std::cyl_bessel_j(static_cast<double>(l), x); }
inline double yl(int l, double x) { return std::cyl_neumann(static_cast<double>(l), x); }
inline double djl(int l, double x) {
  return l == 0 ? -jl(1, x) : 0.5 * (jl(l - 1, x) - jl(l + 1, x));
}
inline double dyl(int l, double x) {
  return l == 0 ? -yl(1, x) : 0.5 * (yl(l - 1, x) - yl(l + 1, x));
}

// free Jost solution of sign s (+1 / -1) at r, value and derivative
inline std::pair<cplx, cplx> free_jost(int l, int sign, double r) {
  const double s = sign;
  const double pi = std::numbers::pi;
  const cplx I(0.0, 1.0);
  const double f = std::sqrt(0.5 * pi * r), df = 0.5 * f / r;
  const cplx H = jl(l, r) + s * I * yl(l, r);
  const cplx dH = djl(l, r) + s * I * dyl(l, r);
  const cplx e = std::exp(s * I * (0.5 * pi * (l + 0.5)));
  return {e * f * H, e * (df * H + f * dH)};
}

inline StepResult step_potential(int l, double V0, double r0, double R) {
  const double pi = std::numbers::pi;
  const cplx I(0.0, 1.0);
  const double k = std::sqrt(1.0 - V0);
  // inside basis p = sqrt(r) J_l(kr), q = sqrt(r) Y_l(kr)
  auto basis = [&](double r) {
    const double s = std::sqrt(r), ds = 0.5 / s;
    const double p = s * jl(l, k * r), dp = ds * jl(l, k * r) + s * k * djl(l, k * r);
    const double q = s * yl(l, k * r), dq = ds * yl(l, k * r) + s * k * dyl(l, k * r);
    return std::array<double, 4>{p, dp, q, dq};
  };
  const auto bR = basis(R), b0 = basis(r0);
  const double W = bR[0] * bR[3] - bR[1] * bR[2];
  auto match = [&](int s) {
    const auto [F, dF] = free_jost(l, s, R);
    const cplx a = (F * bR[3] - dF * bR[2]) / W;
    const cplx b = (bR[0] * dF - bR[1] * F) / W;
    return a * b0[0] + b * b0[2];
  };
  StepResult out;
  out.F_plus_r0 = match(+1);
  out.F_minus_r0 = match(-1);
  out.alpha = I * out.F_minus_r0;
  out.beta = -I * out.F_plus_r0;
  out.sigma = std::exp(I * pi * (l + 0.5)) * out.alpha / out.beta;
  out.delta = 0.5 * std::arg(out.sigma);
  return out;
}

}  // namespace oracle
