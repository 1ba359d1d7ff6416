#pragma once

// Jost functions alpha, beta, the Regge interpolation function
// sigma(nu) = e^{i pi (nu + 1/2)} alpha / beta, and phase shifts.

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "regge/fields.hpp"
#include "regge/radial.hpp"

namespace regge {

struct JostFunctions {
  cplx alpha;
  cplx beta;
  cplx nu;
};

/// alpha = i F-(r0), beta = -i F+(r0) from the backward Jost solutions.
JostFunctions jost_functions(const EffectivePotential& q, cplx nu, const RadialGrid& grid,
                             const SolverOptions& opt = {});

/// alpha = (i/2) W(Phi, F-), beta = -(i/2) W(Phi, F+), evaluated at r = R
/// where F+- are free.
JostFunctions jost_functions_wronskian(const EffectivePotential& q, cplx nu, const RadialGrid& grid,
                                       const SolverOptions& opt = {});

/// alpha and beta from the exterior coefficients of the regular solution.
/// No cancellation in alpha/beta even when sigma is within 1e-20 of its
/// limit, which the boundary route cannot resolve.
JostFunctions jost_functions_exterior(const EffectivePotential& q, cplx nu,
                                      const SolverOptions& opt = {});

/// Free case: alpha0 = i F0-(r0), beta0 = -i F0+(r0).
JostFunctions jost_functions_free(cplx nu, double r0, double flux);

/// sigma(nu). Orders with Re(nu_R) < 0 go through the mirrored medium,
/// sigma_gamma(nu) = e^{2 i pi nu} sigma_{-gamma}(-nu). Throws BetaZero if
/// |beta| < 1e-300, ConvergenceError if real nu gives ||sigma| - 1| > 1e-8.
cplx regge_sigma(const EffectivePotential& q, cplx nu, const SolverOptions& opt = {});

/// Same, with the mirrored potential supplied (avoids rebuilding it).
cplx regge_sigma(const EffectivePotential& q, const EffectivePotential& mirrored, cplx nu,
                 const SolverOptions& opt = {});

/// sigma(nu) - limit without cancellation. With pre = e^{i pi (nu - c)},
/// sigma = pre (1 - 2iB/A), so sigma - limit = (pre - limit) - 2i pre B/A;
/// the mirrored route multiplies through by e^{2 i pi nu}.
cplx sigma_offset(const EffectivePotential& q, const EffectivePotential& mirrored, cplx nu,
                  cplx limit, const SolverOptions& opt = {});

/// Free closed form -e^{i pi (nu - c)} H2_c(r0) / H1_c(r0), c = canonical(nu - flux).
cplx regge_sigma_free(cplx nu, double r0, double flux);

struct PhaseRecord {
  int l = 0;
  cplx sigma;
  double delta = 0.0;
};

struct ScatteringData {
  double flux_over_2pi = 0.0;
  std::vector<PhaseRecord> records;  // ascending l
  std::string branch_anchor;

  const PhaseRecord& at(int l) const;
  nlohmann::json to_json() const;
  void write_csv(std::ostream& os) const;
};

/// delta_l = arg(sigma_l) / 2, principal value at the largest l, then
/// continued downward choosing the branch (mod pi) nearest the previous l.
ScatteringData phase_shifts(const EffectivePotential& q, int l_min, int l_max,
                            const SolverOptions& opt = {}, int threads = 0);

/// sigma(l) for l = -l_hi .. -l_lo (l_lo >= 1), returned in that order,
/// through the mirrored medium.
std::vector<cplx> sigma_tail_negative(const EffectivePotential& q, int l_lo, int l_hi,
                                      const SolverOptions& opt = {}, int threads = 0);

struct TailReport {
  cplx limit;
  std::vector<int> l;
  std::vector<double> deviation;  // |sigma(l) - limit|, via sigma_offset
  bool monotone = false;          // strictly decreasing over the records
};

/// Deviation of sigma from `limit` for the given l (positive or negative).
TailReport sigma_tail_report(const EffectivePotential& q, const std::vector<int>& ls, cplx limit,
                             const SolverOptions& opt = {}, int threads = 0);

struct CamPoint {
  cplx nu;
  cplx sigma;
};

struct CamExcluded {
  cplx nu;
  std::string reason;
};

struct CamScan {
  std::vector<CamPoint> points;
  std::vector<CamExcluded> excluded;
  nlohmann::json to_json() const;
};

/// sigma over an arbitrary list of nu; failures (beta zeros, solver
/// errors) are recorded as excluded points.
CamScan cam_scan(const EffectivePotential& q, const std::vector<cplx>& nu_grid,
                 const SolverOptions& opt = {}, int threads = 0);

}  // namespace regge
