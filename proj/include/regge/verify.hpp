#pragma once

// Invariant suites run by `regge verify`: each group measures one quantity
// and compares it with a tolerance (overridable, e.g. to force failures).

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "regge/fields.hpp"
#include "regge/radial.hpp"

namespace regge {

struct VerifyConfig {
  std::optional<double> tolerance;  // replaces every group tolerance when set
  int grid_n = 512;
  int l_max = 40;
  int threads = 0;
};

struct CheckResult {
  std::string group;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  nlohmann::json detail;
};

struct VerifyReport {
  std::vector<CheckResult> groups;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// Groups: specfun, wronskian, kernel_bounds, regular_bound, symmetry,
/// sigma_limits, discriminator_identity.
VerifyReport run_verify(const EffectivePotential& q, const VerifyConfig& cfg = {});

// Building blocks shared with the acceptance suite.

/// Max over (nu, r) of the relative defects of conj(H1_nu) = H2_{conj nu},
/// H1_{-nu} = e^{i pi nu} H1_nu, H2_{-nu} = e^{-i pi nu} H2_nu, and of
/// |Gamma(iy)|^2 = pi / (y sinh(pi y)) for y in {1, 2, 5}.
struct SpecfunIdentityReport {
  double max_rel = 0.0;
  double max_abs = 0.0;
  int evaluations = 0;
};
SpecfunIdentityReport specfun_identities();

/// n values of nu_R (shifted by the flux) on the real and imaginary axes and
/// on the diagonals, |nu_R| <= radius.
std::vector<cplx> ray_samples(int n, double radius, double flux);

struct WronskianReport {
  double max_scaled = 0.0;  // |W + 2i| / max(1, |F+ F-'| + |F+' F-|)
  double max_abs = 0.0;     // |W + 2i|
  cplx worst_nu;
};
WronskianReport wronskian_check(const EffectivePotential& q, const std::vector<cplx>& nus,
                                const RadialGrid& grid, int threads = 0);

/// max over nu, sign, grid of |F_gamma(r, nu) - F_{-gamma}(r, -nu)|, absolute
/// and relative to sup |F_gamma(., nu)|.
struct SymmetryReport {
  double max_abs = 0.0;
  double max_rel = 0.0;
};
SymmetryReport symmetry_check(const EffectivePotential& q, const std::vector<double>& nus,
                              const RadialGrid& grid, int threads = 0);

/// A medium with the same field and a different electric potential.
Medium companion_medium(const Medium& m);

}  // namespace regge
