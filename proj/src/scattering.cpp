#include "regge/scattering.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "regge/errors.hpp"
#include "regge/parallel.hpp"
#include "regge/specfun.hpp"

namespace regge {

namespace {

using std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// e^{i pi z} with exact reduction of Re z (e^{2 i pi l} = 1 for integer l)
cplx expi_pi(cplx z) {
  const double re = z.real();
  return std::exp(-pi * z.imag()) *
         cplx(specfun::cos_pi(re).real(), specfun::sin_pi(re).real());
}

cplx theta_of(cplx c) { return 0.5 * pi * (c + 0.5); }

void check_unimodular(cplx nu, cplx sigma) {
  if (nu.imag() == 0.0 && std::abs(std::abs(sigma) - 1.0) > 1e-8) {
    throw ConvergenceError("sigma: |sigma| - 1 = " + std::to_string(std::abs(sigma) - 1.0) +
                           " at real nu = " + std::to_string(nu.real()));
  }
}

// e^{i pi (nu - c)}: c is nu_R or -nu_R bitwise, so nu - c is formed from the
// flux rather than by subtracting nearly equal numbers
cplx prefactor(const EffectivePotential& q, cplx nu, cplx c) {
  const cplx nu_R = nu - q.flux();
  return expi_pi(c == nu_R ? cplx(q.flux()) : 2.0 * nu - q.flux());
}

cplx sigma_direct(const EffectivePotential& q, cplx nu, const SolverOptions& opt) {
  const ExteriorCoefficients ec = exterior_coefficients(q, nu, opt);
  if (std::abs(ec.A) < 2e-300) throw BetaZero("sigma: beta vanishes");
  // e^{i pi (nu + 1/2)} e^{-2 i theta} D / A
  return prefactor(q, nu, ec.order) * (ec.D / ec.A);
}

}  // namespace

JostFunctions jost_functions(const EffectivePotential& q, cplx nu, const RadialGrid& grid,
                             const SolverOptions& opt) {
  const JostSolution fp = jost_solve(q, JostSign::plus, nu, grid, opt);
  const JostSolution fm = jost_solve(q, JostSign::minus, nu, grid, opt);
  return {kI * fm.values.front(), -kI * fp.values.front(), nu};
}

JostFunctions jost_functions_wronskian(const EffectivePotential& q, cplx nu, const RadialGrid& grid,
                                       const SolverOptions& opt) {
  const RegularSolution phi = regular_solve(q, nu, grid, opt);
  const double R = phi.r.back();
  const auto [fp, dfp] = free_jost(JostSign::plus, nu, R, q.flux());
  const auto [fm, dfm] = free_jost(JostSign::minus, nu, R, q.flux());
  const cplx p = phi.values.back(), dp = phi.derivs.back();
  return {0.5 * kI * (p * dfm - dp * fm), -0.5 * kI * (p * dfp - dp * fp), nu};
}

JostFunctions jost_functions_exterior(const EffectivePotential& q, cplx nu,
                                      const SolverOptions& opt) {
  const ExteriorCoefficients ec = exterior_coefficients(q, nu, opt);
  const cplx th = theta_of(ec.order);
  return {std::exp(-kI * th) * ec.D / 2.0, std::exp(kI * th) * ec.A / 2.0, nu};
}

JostFunctions jost_functions_free(cplx nu, double r0, double flux) {
  return {kI * free_jost(JostSign::minus, nu, r0, flux).first,
          -kI * free_jost(JostSign::plus, nu, r0, flux).first, nu};
}

cplx regge_sigma_free(cplx nu, double r0, double flux) {
  const cplx c = canonical_order(nu - flux);
  const specfun::BesselValue b = specfun::bessel_h(c, r0);
  return -std::exp(kI * pi * (nu - c)) * b.H2 / b.H1;
}

cplx regge_sigma(const EffectivePotential& q, const EffectivePotential& mirrored, cplx nu,
                 const SolverOptions& opt) {
  const cplx nu_R = nu - q.flux();
  cplx s;
  if (nu_R.real() < 0.0) {
    s = expi_pi(2.0 * nu) * sigma_direct(mirrored, -nu, opt);
  } else {
    s = sigma_direct(q, nu, opt);
  }
  check_unimodular(nu, s);
  return s;
}

cplx regge_sigma(const EffectivePotential& q, cplx nu, const SolverOptions& opt) {
  if ((nu - q.flux()).real() < 0.0) {
    const EffectivePotential m(q.medium().mirrored());
    return regge_sigma(q, m, nu, opt);
  }
  const cplx s = sigma_direct(q, nu, opt);
  check_unimodular(nu, s);
  return s;
}

cplx sigma_offset(const EffectivePotential& q, const EffectivePotential& mirrored, cplx nu,
                  cplx limit, const SolverOptions& opt) {
  const bool flip = (nu - q.flux()).real() < 0.0;
  const cplx f = flip ? expi_pi(2.0 * nu) : cplx(1.0);
  const EffectivePotential& p = flip ? mirrored : q;
  const ExteriorCoefficients ec = exterior_coefficients(p, flip ? -nu : nu, opt);
  if (std::abs(ec.A) < 2e-300) throw BetaZero("sigma: beta vanishes");
  const cplx pre = prefactor(p, flip ? -nu : nu, ec.order);
  return f * ((pre - limit / f) - 2.0 * kI * pre * (ec.B / ec.A));
}

const PhaseRecord& ScatteringData::at(int l) const {
  for (const PhaseRecord& r : records) {
    if (r.l == l) return r;
  }
  throw DomainError("scattering data: no record for l = " + std::to_string(l));
}

ScatteringData phase_shifts(const EffectivePotential& q, int l_min, int l_max,
                            const SolverOptions& opt, int threads) {
  if (l_max < l_min) throw DomainError("phase_shifts: empty l range");
  const EffectivePotential mirrored(q.medium().mirrored());
  const std::size_t n = static_cast<std::size_t>(l_max - l_min + 1);
  ScatteringData out;
  out.flux_over_2pi = q.flux();
  out.branch_anchor =
      "principal value of arg(sigma)/2 at l = " + std::to_string(l_max) +
      ", continued downward in l to the nearest branch mod pi";
  out.records.resize(n);
  parallel_for(n, threads, [&](std::size_t k) {
    const int l = l_min + static_cast<int>(k);
    out.records[k].l = l;
    out.records[k].sigma = regge_sigma(q, mirrored, l, opt);
  });
  double prev = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double half = 0.5 * std::arg(out.records[k].sigma);
    prev = k + 1 == n ? half : half + pi * std::round((prev - half) / pi);
    out.records[k].delta = prev;
  }
  return out;
}

std::vector<cplx> sigma_tail_negative(const EffectivePotential& q, int l_lo, int l_hi,
                                      const SolverOptions& opt, int threads) {
  if (l_lo < 1 || l_hi < l_lo) throw DomainError("sigma_tail_negative: need 1 <= l_lo <= l_hi");
  const EffectivePotential mirrored(q.medium().mirrored());
  const std::size_t n = static_cast<std::size_t>(l_hi - l_lo + 1);
  std::vector<cplx> out(n);
  parallel_for(n, threads, [&](std::size_t k) {
    const int l = -l_hi + static_cast<int>(k);
    // sigma_gamma(l) = sigma_{-gamma}(-l) for integer l
    const cplx s = sigma_direct(mirrored, -l, opt);
    check_unimodular(static_cast<double>(l), s);
    out[k] = s;
  });
  return out;
}

TailReport sigma_tail_report(const EffectivePotential& q, const std::vector<int>& ls, cplx limit,
                             const SolverOptions& opt, int threads) {
  const EffectivePotential mirrored(q.medium().mirrored());
  TailReport rep;
  rep.limit = limit;
  rep.l = ls;
  rep.deviation.resize(ls.size());
  parallel_for(ls.size(), threads, [&](std::size_t k) {
    rep.deviation[k] = std::abs(sigma_offset(q, mirrored, ls[k], limit, opt));
  });
  rep.monotone = !ls.empty();
  for (std::size_t k = 1; k < ls.size(); ++k) {
    rep.monotone = rep.monotone && rep.deviation[k] < rep.deviation[k - 1];
  }
  return rep;
}

CamScan cam_scan(const EffectivePotential& q, const std::vector<cplx>& nu_grid,
                 const SolverOptions& opt, int threads) {
  const EffectivePotential mirrored(q.medium().mirrored());
  std::vector<cplx> sig(nu_grid.size());
  std::vector<std::string> err(nu_grid.size());
  parallel_for(nu_grid.size(), threads, [&](std::size_t k) {
    try {
      sig[k] = regge_sigma(q, mirrored, nu_grid[k], opt);
    } catch (const Error& e) {
      err[k] = e.what();
    }
  });
  CamScan scan;
  for (std::size_t k = 0; k < nu_grid.size(); ++k) {
    if (err[k].empty()) {
      scan.points.push_back({nu_grid[k], sig[k]});
    } else {
      scan.excluded.push_back({nu_grid[k], err[k]});
    }
  }
  return scan;
}

nlohmann::json ScatteringData::to_json() const {
  nlohmann::json j;
  j["flux_over_2pi"] = flux_over_2pi;
  j["branch_anchor"] = branch_anchor;
  j["note"] = "delta is defined modulo pi; the branch follows branch_anchor";
  nlohmann::json rec = nlohmann::json::array();
  for (const PhaseRecord& r : records) {
    rec.push_back({{"l", r.l}, {"sigma", {r.sigma.real(), r.sigma.imag()}}, {"delta", r.delta}});
  }
  j["records"] = rec;
  return j;
}

void ScatteringData::write_csv(std::ostream& os) const {
  os << "l,re_sigma,im_sigma,delta\n";
  char buf[128];
  for (const PhaseRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", r.l, r.sigma.real(), r.sigma.imag(),
                  r.delta);
    os << buf;
  }
}

nlohmann::json CamScan::to_json() const {
  nlohmann::json j;
  nlohmann::json pts = nlohmann::json::array(), ex = nlohmann::json::array();
  for (const CamPoint& p : points) {
    pts.push_back({{"nu", {p.nu.real(), p.nu.imag()}}, {"sigma", {p.sigma.real(), p.sigma.imag()}}});
  }
  for (const CamExcluded& e : excluded) {
    ex.push_back({{"nu", {e.nu.real(), e.nu.imag()}}, {"reason", e.reason}});
  }
  j["points"] = pts;
  j["excluded"] = ex;
  return j;
}

}  // namespace regge
