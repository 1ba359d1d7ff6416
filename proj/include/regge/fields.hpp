#pragma once

// Radial media: electric potential V, magnetic field profile b, the gauge
// function gamma(r) = int_0^r tau b(tau) dtau and the effective potential
//
//   q_nu(r) = -2 nu (gamma(r) - gamma(R)) / r^2 + (gamma(r)^2 - gamma(R)^2) / r^2 + V(r),
//
// which vanishes identically for r >= R.

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

namespace regge {

using cplx = std::complex<double>;

enum class ProfileKind { bump, step, poly_spline, zero };
enum class Smoothness { smooth, piecewise_continuous };

std::string to_string(ProfileKind k);
ProfileKind profile_kind_from_string(const std::string& s);

/// A real radial function vanishing outside its support [a, b].
///
///   bump:        params = {amplitude}; amplitude * exp(1 - 1/(1 - t^2)), t in (-1, 1)
///   step:        params = {height}
///   poly_spline: params = knot values at equally spaced knots over [a, b]
///                (natural cubic spline, at least 2 knots)
///   zero:        no params
class RadialProfile {
 public:
  RadialProfile() = default;
  RadialProfile(ProfileKind kind, std::vector<double> params, double a, double b);

  static RadialProfile zero() { return {}; }
  static RadialProfile bump(double a, double b, double amplitude);
  static RadialProfile step(double a, double b, double height);
  static RadialProfile spline(double a, double b, std::vector<double> knots);

  double operator()(double r) const;

  ProfileKind kind() const { return kind_; }
  Smoothness smoothness() const;
  const std::vector<double>& params() const { return params_; }
  double support_lo() const { return a_; }
  double support_hi() const { return b_; }
  bool is_zero() const;

  /// Points where the profile may fail to be smooth.
  std::vector<double> breakpoints() const;

  /// Same shape, all values multiplied by c.
  RadialProfile scaled(double c) const;

  nlohmann::json to_json() const;

 private:
  ProfileKind kind_ = ProfileKind::zero;
  std::vector<double> params_;
  double a_ = 0.0, b_ = 0.0;
  std::vector<double> m_;  // spline second derivatives
};

struct Medium {
  RadialProfile V;
  RadialProfile b;
  double r0 = 0.5;
  double R = 2.0;

  /// b -> -b (the gauge function and flux change sign).
  Medium mirrored() const;
  nlohmann::json to_json() const;
};

/// Parse {"r0", "R", "V": {...}, "B": {...}}; a profile object has "kind",
/// "params", "support" and optionally "flux_over_2pi" (B only), which
/// rescales the profile to the requested flux. Throws ConfigError.
Medium medium_from_json(const nlohmann::json& j);
Medium load_medium(const std::string& path);

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> reasons;
};

ValidationReport validate_class_C(const Medium& m);

/// gamma(r) on [0, R] by piecewise Chebyshev-Lobatto interpolation of
/// quadrature values; exactly the flux for r >= R.
class GaugeData {
 public:
  double operator()(double r) const;
  double flux_over_2pi() const { return flux_; }
  double R() const { return R_; }

 private:
  friend GaugeData build_gauge(const Medium&, int);
  struct Panel {
    double lo, hi;
    std::vector<double> x, f;
  };
  std::vector<Panel> panels_;
  std::vector<double> w_;  // barycentric weights, shared by all panels
  double flux_ = 0.0;
  double R_ = 0.0;
  double lo_ = 0.0, hi_ = 0.0;  // support of b: gamma is exactly 0 below, flux above
};

/// Throws ConfigError if b is not supported in [0, R] or quad_points < 64,
/// QuadratureError if the quadrature tolerance is not met.
GaugeData build_gauge(const Medium& m, int quad_points = 64);

/// int_0^R tau b(tau) dtau by direct adaptive quadrature.
double flux_of(const RadialProfile& b, double R);

class EffectivePotential {
 public:
  EffectivePotential(Medium m, GaugeData g);
  explicit EffectivePotential(const Medium& m) : EffectivePotential(m, build_gauge(m)) {}

  /// nu-free part (gamma^2 - gamma(R)^2)/r^2 + V(r).
  double q0(double r) const;
  /// coefficient of nu: -2 (gamma(r) - gamma(R)) / r^2.
  double w(double r) const;
  cplx operator()(cplx nu, double r) const;

  /// q0 and w from a single gamma evaluation.
  void parts(double r, double& q0, double& w) const;

  double flux() const { return gauge_.flux_over_2pi(); }
  double r0() const { return medium_.r0; }
  double R() const { return medium_.R; }
  const Medium& medium() const { return medium_; }
  const GaugeData& gauge() const { return gauge_; }

  /// Support endpoints of V and b strictly inside (r0, R).
  std::vector<double> breakpoints() const;

  /// q vanishes on [r0, inf).
  bool trivial() const;

 private:
  Medium medium_;
  GaugeData gauge_;
};

using PotentialPtr = std::shared_ptr<const EffectivePotential>;

}  // namespace regge
