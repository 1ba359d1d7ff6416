#pragma once

// Solutions of the radial equation
//
//   -u'' + ((nu_R^2 - 1/4)/r^2 + q_nu(r)) u = u,   nu_R = nu - gamma(R),
//
// on [r0, R]. Jost solutions are integrated backwards from R, where they
// coincide with the free ones; the regular solution forwards from r0.

#include <complex>
#include <ostream>
#include <utility>
#include <vector>

#include "regge/fields.hpp"
#include "regge/specfun.hpp"

namespace regge {

enum class JostSign { plus, minus };

struct RadialGrid {
  enum class Method { adaptive_rk, fixed_rk };

  std::vector<double> r;
  Method method = Method::adaptive_rk;

  /// Half geometric, half uniform spacing on [r0, R]; [r0, r0 + 1] when
  /// R <= r0.
  static RadialGrid hybrid(double r0, double R, int n = 1024);
  /// Insert midpoints: 2n - 1 points, same end points.
  RadialGrid refined() const;
  /// Every other point (end points kept).
  RadialGrid coarsened() const;
};

struct SolverOptions {
  double rtol = 1e-12;
};

struct JostSolution {
  JostSign sign = JostSign::plus;
  cplx nu;
  std::vector<double> r;
  std::vector<cplx> values;
  std::vector<cplx> derivs;
  specfun::BesselValue boundary;  // at r = R, order canonical(nu_R)
  int iterations = 0;             // Picard iterations (Volterra route only)
};

struct RegularSolution {
  cplx nu;
  std::vector<double> r;
  std::vector<cplx> values;
  std::vector<cplx> derivs;
};

/// The free Jost solutions depend on nu_R only through nu_R^2; this picks the
/// representative with Re >= 0 (Im >= 0 on the imaginary axis).
cplx canonical_order(cplx nu_R);

/// F0^{+-}(r, nu) = e^{+-i(nu_R + 1/2) pi/2} sqrt(pi r/2) H^{(1,2)}_{nu_R}(r) and its r-derivative.
std::pair<cplx, cplx> free_jost(JostSign sign, cplx nu, double r, double flux);

JostSolution jost_solve(const EffectivePotential& q, JostSign sign, cplx nu,
                        const RadialGrid& grid, const SolverOptions& opt = {});

/// Picard iteration of F = F0 + int_r^R N(r,s) q(s) F(s) ds, Nystrom with
/// 8 Gauss points per grid panel. Requires Re(nu_R) >= 0; throws
/// NoConvergence after max_iter sweeps.
JostSolution jost_solve_volterra(const EffectivePotential& q, JostSign sign, cplx nu,
                                 const RadialGrid& grid, int max_iter = 60);

/// Phi(r0) = 0, Phi'(r0) = -2, integrated forwards.
RegularSolution regular_solve(const EffectivePotential& q, cplx nu, const RadialGrid& grid,
                              const SolverOptions& opt = {});

/// Coefficients of the regular solution in the free basis u, v beyond R
/// (u = sqrt(pi r/2) J_c, v = -i sqrt(pi r/2) H1_c, c = canonical_order(nu_R)):
/// Phi = A u + B v for r >= R. Obtained by variation of parameters from r0,
/// so both are accurate in the relative sense even when B/A is far below
/// machine epsilon. The solutions U, V matching u, v at R satisfy
/// V(r0) = A/2 and U(r0) = -B/2.
struct ExteriorCoefficients {
  cplx nu;
  cplx order;  // c
  cplx A, B;
  cplx D;      // A - 2iB, evaluated without cancellation; alpha = e^{-i theta} D / 2
};

ExteriorCoefficients exterior_coefficients(const EffectivePotential& q, cplx nu,
                                           const SolverOptions& opt = {});

/// Same for the solution vanishing at r_start >= r0 (derivative -2 there);
/// then V(r_start) = A/2 and U(r_start) = -B/2.
ExteriorCoefficients exterior_coefficients_from(const EffectivePotential& q, cplx nu, double r_start,
                                                const SolverOptions& opt = {});

struct BoundReport {
  double c_emp = 0.0;         // on the given grid
  double c_emp_refined = 0.0; // on the refined grid
  double drift = 0.0;         // max ratio of the two, >= 1
  bool pass = false;
  double max_r = 0.0;
  cplx max_nu;
};

/// sup |Phi| (1 + |nu_R|) (r0/r)^{Re nu_R} over the grid and nu_list.
BoundReport verify_regular_bound(const EffectivePotential& q, const std::vector<cplx>& nu_list,
                                 const RadialGrid& grid, int threads = 0);

/// int_r^R (gamma(s) - gamma(R)) / s ds (zero for r >= R).
double gauge_log_integral(const EffectivePotential& q, double r);

/// C_r = exp(int_r^inf (gamma(s) - gamma(R)) / s ds).
double jost_ratio_constant(const EffectivePotential& q, double r);

void write_csv(std::ostream& os, const JostSolution& s);
void write_csv(std::ostream& os, const RegularSolution& s);

}  // namespace regge
