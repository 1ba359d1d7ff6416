#pragma once

// Dormand-Prince 5(4) for small complex systems. Never steps past the
// requested end point, so callers place grid points and medium breakpoints
// as segment ends.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "regge/errors.hpp"

namespace regge::detail {

using cplx = std::complex<double>;

template <std::size_t N>
using State = std::array<cplx, N>;

struct OdeOptions {
  double rtol = 1e-12;
  double atol = 1e-300;
  long max_steps = 2'000'000;
  bool adaptive = true;
};

struct OdeStats {
  long steps = 0;
  long rejected = 0;
};

namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b*, the embedded 4th-order difference
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

/// Integrate y' = f(r, y) from a to b (either direction). `group[i]` assigns
/// component i to an error group; errors are measured relative to the largest
/// magnitude within the group, so (y, y') pairs share a scale. `h` carries the
/// step size hint between calls (0 = choose).
template <std::size_t N, class Rhs>
State<N> integrate_to(Rhs&& f, double a, double b, State<N> y, const std::array<int, N>& group,
                      const OdeOptions& opt, double& h, OdeStats* stats = nullptr) {
  using namespace dp;
  if (a == b) return y;
  const double dir = b > a ? 1.0 : -1.0;
  const double span = std::abs(b - a);
  double hh = h > 0.0 ? std::min(h, span) : std::min(span, 0.05);
  if (!opt.adaptive) hh = span;

  double r = a;
  State<N> k1 = f(r, y), k2, k3, k4, k5, k6, k7, tmp, ynew;
  long steps = 0;
  while (true) {
    const double remaining = std::abs(b - r);
    const double proposed = hh;
    bool last = false;
    if (hh >= remaining * (1.0 - 1e-12)) {
      hh = remaining;
      last = true;
    }
    const double s = dir * hh;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + s * (a21 * k1[i]);
    k2 = f(r + c2 * s, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + s * (a31 * k1[i] + a32 * k2[i]);
    k3 = f(r + c3 * s, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + s * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = f(r + c4 * s, tmp);
    for (std::size_t i = 0; i < N; ++i) {
      tmp[i] = y[i] + s * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    k5 = f(r + c5 * s, tmp);
    for (std::size_t i = 0; i < N; ++i) {
      tmp[i] = y[i] + s * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    const double r_new = last ? b : r + s;
    k6 = f(r + s, tmp);
    for (std::size_t i = 0; i < N; ++i) {
      ynew[i] = y[i] + s * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    k7 = f(r_new, ynew);

    double err = 0.0;
    if (opt.adaptive) {
      std::array<double, N> scale{};
      for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
          if (group[j] == group[i]) {
            scale[i] = std::max({scale[i], std::abs(y[j]), std::abs(ynew[j])});
          }
        }
      }
      for (std::size_t i = 0; i < N; ++i) {
        const cplx e = s * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
        err = std::max(err, std::abs(e) / (opt.atol + opt.rtol * scale[i]));
      }
      if (!std::isfinite(err)) {
        throw IntegrationError("ode: non-finite state at r = " + std::to_string(r));
      }
    }

    if (err <= 1.0) {
      r = r_new;
      y = ynew;
      k1 = k7;
      if (stats) ++stats->steps;
      if (last) {
        // carry the untruncated step to the next segment
        h = opt.adaptive ? proposed : h;
        return y;
      }
      hh *= err > 0.0 ? std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2))) : 5.0;
    } else {
      if (stats) ++stats->rejected;
      hh *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
    if (hh < 1e-14 * std::max(1.0, std::abs(r))) {
      throw IntegrationError("ode: step size underflow at r = " + std::to_string(r));
    }
    if (++steps > opt.max_steps) {
      throw IntegrationError("ode: step budget exhausted at r = " + std::to_string(r));
    }
  }
}

}  // namespace regge::detail
