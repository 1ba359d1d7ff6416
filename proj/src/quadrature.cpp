#include "regge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "regge/errors.hpp"

namespace regge::quad {

namespace {

Rule build_rule(int n) {
  Rule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[n - 1 - i] = x;
    rule.x[i] = -x;
    rule.w[i] = rule.w[n - 1 - i] = w;
  }
  return rule;
}

double apply(const Rule& rule, const std::function<double(double)>& f, double a, double b) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * f(mid + half * rule.x[i]);
  return s * half;
}

double adapt(const Rule& rule, const std::function<double(double)>& f, double a, double b,
             double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = apply(rule, f, a, m);
  const double right = apply(rule, f, m, b);
  if (std::abs(left + right - whole) <= tol) return left + right;
  if (depth <= 0) {
    throw QuadratureError("adaptive Gauss-Legendre: tolerance not met on [" + std::to_string(a) +
                          ", " + std::to_string(b) + "]");
  }
  return adapt(rule, f, a, m, left, 0.5 * tol, depth - 1) +
         adapt(rule, f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int n, int max_depth) {
  if (a == b) return 0.0;
  const Rule& rule = gauss_legendre(n);
  return adapt(rule, f, a, b, apply(rule, f, a, b), abs_tol, max_depth);
}

double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breaks, double abs_tol, int n) {
  std::vector<double> pts{a};
  for (double x : breaks) {
    if (x > a && x < b) pts.push_back(x);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double s = 0.0;
  const double tol = abs_tol / static_cast<double>(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += integrate(f, pts[i], pts[i + 1], tol, n);
  return s;
}

}  // namespace regge::quad
