#pragma once

// Gauss-Legendre rules and a simple adaptive integrator.

#include <functional>
#include <vector>

namespace regge::quad {

struct Rule {
  std::vector<double> x;  // nodes on [-1, 1], ascending
  std::vector<double> w;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n). Cached per n.
const Rule& gauss_legendre(int n);

/// Adaptive bisection driven by the difference between the n-point rule on
/// [a, b] and on its two halves. Throws QuadratureError when the absolute
/// tolerance is not met within max_depth levels.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int n = 64, int max_depth = 30);

/// Same, split at the given interior breakpoints first.
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breaks, double abs_tol, int n = 64);

}  // namespace regge::quad
