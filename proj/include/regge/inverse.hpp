#pragma once

// Inverse-side tools: flux from the large-l behaviour of sigma, the
// discriminator F(nu) = 2i (alpha beta~ - alpha~ beta) with its integral
// identity, and the cross-Wronskian F(r, nu) of Jost solutions.

#include <complex>
#include <ostream>
#include <vector>

#include "json.hpp"
#include "regge/fields.hpp"
#include "regge/radial.hpp"
#include "regge/scattering.hpp"

namespace regge {

struct FluxEstimate {
  double flux_over_2pi_mod2 = 0.0;  // in [-1, 1)
  double residual = 0.0;            // spread of the accelerated tail
  std::vector<int> l_used;

  nlohmann::json to_json() const;
};

/// arg(sigma_inf) / pi, sigma_inf from two-level Richardson extrapolation
/// (error model c1/l + c2/l^2) over the top `tail_fraction` of the records
/// with l >= 20. Throws InsufficientTail with fewer than 10 such records.
FluxEstimate recover_flux(const ScatteringData& data, double tail_fraction = 0.5);

struct DiscriminatorRow {
  int l = 0;
  cplx lhs;          // 2i (alpha beta~ - alpha~ beta)
  cplx rhs;          // int_{r0}^{R} (q - q~) Phi Phi~ dr
  double rel = 0.0;  // |lhs - rhs| / |lhs| (absolute when lhs = 0)
  double envelope = 0.0;  // |F| (|nu_R|+1)^2 / (|nu| (R/r0)^{2 Re nu_R})
};

struct DiscriminatorReport {
  std::vector<DiscriminatorRow> rows;
  double max_abs = 0.0;  // max |lhs|
  double max_rel = 0.0;

  nlohmann::json to_json() const;
  void write_csv(std::ostream& os) const;
};

/// Throws FluxMismatch unless the fluxes agree to 1e-10.
DiscriminatorReport discriminator_F(const EffectivePotential& qA, const EffectivePotential& qB,
                                    const std::vector<int>& l_list, const SolverOptions& opt = {},
                                    int threads = 0);

/// F(r, nu) = F+ F~- - F- F~+ at r in [r0, R]. For equal fluxes this is
/// (i/2)(B A~ - A B~) with the exterior coefficients of the solutions
/// vanishing at r, free of the cancellation between the two products;
/// otherwise the products of Jost solutions are used directly.
std::vector<cplx> borg_marchenko_F(const EffectivePotential& qA, const EffectivePotential& qB,
                                   double r, const std::vector<cplx>& nu_list,
                                   const SolverOptions& opt = {}, int threads = 0);

struct BorgMarchenkoCheck {
  cplx direct;         // F+ F~- - F- F~+
  cplx reconstructed;  // Psi~ F+ - Psi F~+ + e^{-i pi (nu+1/2)} (sigma - sigma~) F+ F~+
  double scale = 0.0;  // magnitude of the largest product involved
};

/// Both sides at grid point r for real nu, from grid solutions; Psi = Phi / beta.
BorgMarchenkoCheck borg_marchenko_reconstruction(const EffectivePotential& qA,
                                                 const EffectivePotential& qB, double r, double nu,
                                                 const RadialGrid& grid,
                                                 const SolverOptions& opt = {});

struct DecoupleReport {
  bool gamma_match = false;
  bool V_match = false;
  double max_dev_gamma = 0.0;
  double max_dev_V = 0.0;
  double max_dev = 0.0;
};

/// From q at two real orders, q = q0 + nu w separates into
/// gamma - gamma(R) = -r^2 w / 2 and V = q0 - (gamma^2 - gamma(R)^2) / r^2;
/// both media are compared pointwise on the grid. Throws IllConditioned if
/// |nu1 - nu2| < 1e-6.
DecoupleReport decouple_potentials(const EffectivePotential& qA, const EffectivePotential& qB,
                                   const RadialGrid& grid, double nu1, double nu2,
                                   double tol = 1e-9);

}  // namespace regge
