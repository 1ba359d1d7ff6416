#include "regge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "regge/errors.hpp"
#include "regge/inverse.hpp"
#include "regge/kernels.hpp"
#include "regge/parallel.hpp"
#include "regge/scattering.hpp"

namespace regge {

namespace {

using std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double rel_err(cplx got, cplx want) {
  const double d = std::abs(got - want);
  const double s = std::abs(want);
  return s > 0.0 ? d / s : d;
}

double tol_or(const VerifyConfig& cfg, double t) { return cfg.tolerance.value_or(t); }

CheckResult make(std::string group, double measured, double tol, bool extra_ok = true) {
  CheckResult c;
  c.group = std::move(group);
  c.measured = measured;
  c.tolerance = tol;
  c.pass = extra_ok && std::isfinite(measured) && measured <= tol;
  return c;
}

}  // namespace

SpecfunIdentityReport specfun_identities() {
  SpecfunIdentityReport rep;
  auto note = [&](cplx got, cplx want) {
    rep.max_abs = std::max(rep.max_abs, std::abs(got - want));
    rep.max_rel = std::max(rep.max_rel, rel_err(got, want));
    ++rep.evaluations;
  };
  for (double re : {0.0, 0.35, 0.7, 1.5, 2.3, 3.9, 4.6}) {
    for (double im : {-2.0, -0.3, 0.0, 0.3, 2.0}) {
      const cplx nu(re, im);
      for (double r : {0.5, 1.0, 1.5, 2.0}) {
        const specfun::BesselValue p = specfun::bessel_h(nu, r);
        const specfun::BesselValue c = specfun::bessel_h(std::conj(nu), r);
        note(std::conj(p.H1), c.H2);
        note(std::conj(specfun::bessel_j(nu, r)), specfun::bessel_j(std::conj(nu), r));
        if (nu == 0.0) continue;
        const specfun::BesselValue m = specfun::bessel_h(-nu, r);
        note(m.H1, std::exp(kI * pi * nu) * p.H1);
        note(m.H2, std::exp(-kI * pi * nu) * p.H2);
      }
    }
  }
  for (double y : {1.0, 2.0, 5.0}) {
    const double g = std::norm(specfun::gamma_complex(cplx(0.0, y)));
    note(g, pi / (y * std::sinh(pi * y)));
  }
  return rep;
}

std::vector<cplx> ray_samples(int n, double radius, double flux) {
  // six rays: real axis both ways, imaginary axis both ways, two diagonals
  const cplx dirs[] = {1.0, -1.0, kI, -kI, std::polar(1.0, pi / 4), std::polar(1.0, -3 * pi / 4)};
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n));
  const int per = (n + 5) / 6;
  for (int k = 0; k < n; ++k) {
    const int ray = k % 6, j = k / 6;
    const double t = radius * (j + 1.0) / per;
    out.push_back(t * dirs[ray] + flux);
  }
  return out;
}

WronskianReport wronskian_check(const EffectivePotential& q, const std::vector<cplx>& nus,
                                const RadialGrid& grid, int threads) {
  std::vector<WronskianReport> each(nus.size());
  parallel_for(nus.size(), threads, [&](std::size_t k) {
    const auto p = jost_solve(q, JostSign::plus, nus[k], grid);
    const auto m = jost_solve(q, JostSign::minus, nus[k], grid);
    WronskianReport& w = each[k];
    w.worst_nu = nus[k];
    for (std::size_t i = 0; i < grid.r.size(); ++i) {
      const cplx a = p.values[i] * m.derivs[i], b = p.derivs[i] * m.values[i];
      const double d = std::abs(a - b + 2.0 * kI);
      w.max_abs = std::max(w.max_abs, d);
      w.max_scaled = std::max(w.max_scaled, d / std::max(1.0, std::abs(a) + std::abs(b)));
    }
  });
  WronskianReport out;
  for (const auto& w : each) {
    out.max_abs = std::max(out.max_abs, w.max_abs);
    if (w.max_scaled >= out.max_scaled) {
      out.max_scaled = w.max_scaled;
      out.worst_nu = w.worst_nu;
    }
  }
  return out;
}

SymmetryReport symmetry_check(const EffectivePotential& q, const std::vector<double>& nus,
                              const RadialGrid& grid, int threads) {
  const EffectivePotential qm(q.medium().mirrored());
  std::vector<SymmetryReport> each(nus.size() * 2);
  parallel_for(each.size(), threads, [&](std::size_t k) {
    const double nu = nus[k / 2];
    const JostSign sg = k % 2 == 0 ? JostSign::plus : JostSign::minus;
    const auto a = jost_solve(q, sg, nu, grid);
    const auto b = jost_solve(qm, sg, -nu, grid);
    double d = 0.0, s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      d = std::max(d, std::abs(a.values[i] - b.values[i]));
      s = std::max(s, std::abs(a.values[i]));
    }
    each[k] = {d, s > 0.0 ? d / s : d};
  });
  SymmetryReport out;
  for (const auto& e : each) {
    out.max_abs = std::max(out.max_abs, e.max_abs);
    out.max_rel = std::max(out.max_rel, e.max_rel);
  }
  return out;
}

Medium companion_medium(const Medium& m) {
  Medium c = m;
  c.V = m.V.is_zero() ? RadialProfile::step(m.r0, m.R, 0.2) : m.V.scaled(1.5);
  return c;
}

VerifyReport run_verify(const EffectivePotential& q, const VerifyConfig& cfg) {
  if (cfg.grid_n < 2) throw ConfigError("verify: grid needs at least 2 points");
  if (cfg.l_max < 20) throw ConfigError("verify: l_max must be at least 20");
  VerifyReport rep;
  const auto grid = RadialGrid::hybrid(q.r0(), q.R(), cfg.grid_n);
  const double flux = q.flux();

  {
    const auto s = specfun_identities();
    CheckResult c = make("specfun", s.max_rel, tol_or(cfg, 1e-10));
    c.detail = {{"max_rel", s.max_rel}, {"max_abs", s.max_abs}, {"evaluations", s.evaluations}};
    rep.groups.push_back(std::move(c));
  }
  {
    const auto w = wronskian_check(q, ray_samples(24, 40.0, flux), grid, cfg.threads);
    CheckResult c = make("wronskian", w.max_scaled, tol_or(cfg, 1e-8));
    c.detail = {{"max_scaled", w.max_scaled},
                {"max_abs", w.max_abs},
                {"worst_nu", {w.worst_nu.real(), w.worst_nu.imag()}},
                {"samples", 24}};
    rep.groups.push_back(std::move(c));
  }
  {
    std::vector<cplx> nus;
    for (const cplx& s : default_kernel_samples()) nus.push_back(s + flux);
    KernelBox box;
    box.r0 = q.r0();
    box.R = q.R();
    const auto n = verify_kernel_bounds(box, nus, flux, KernelWeight::N, cfg.threads);
    const auto m = verify_kernel_bounds(box, nus, flux, KernelWeight::M, cfg.threads);
    const double drift = std::max(n.drift, m.drift);
    CheckResult c = make("kernel_bounds", drift, tol_or(cfg, 2.0));
    c.detail = {{"N", n.to_json()}, {"M", m.to_json()}};
    rep.groups.push_back(std::move(c));
  }
  {
    std::vector<cplx> nus;
    for (int k = 1; k <= 40; k += 3) nus.push_back(k + flux);
    const auto b = verify_regular_bound(q, nus, RadialGrid::hybrid(q.r0(), q.R(), 256), cfg.threads);
    CheckResult c = make("regular_bound", b.drift, tol_or(cfg, 2.0));
    c.detail = {{"c_emp", b.c_emp}, {"c_emp_refined", b.c_emp_refined}, {"drift", b.drift}};
    rep.groups.push_back(std::move(c));
  }
  {
    const auto s = symmetry_check(q, {1.0, 3.2, 7.0}, grid, cfg.threads);
    CheckResult c = make("symmetry", s.max_rel, tol_or(cfg, 1e-9));
    c.detail = {{"max_rel", s.max_rel}, {"max_abs", s.max_abs}};
    rep.groups.push_back(std::move(c));
  }
  {
    std::vector<int> top, bottom;
    for (int l = cfg.l_max - 9; l <= cfg.l_max; ++l) top.push_back(l);
    for (int l = -(cfg.l_max - 9); l >= -cfg.l_max; --l) bottom.push_back(l);
    // sigma(l) -> e^{+i pi gamma(R)} for l -> +inf and the conjugate for l -> -inf
    const auto up = sigma_tail_report(q, top, std::exp(kI * pi * flux), {}, cfg.threads);
    const auto down = sigma_tail_report(q, bottom, std::exp(-kI * pi * flux), {}, cfg.threads);
    const double dev = std::max(up.deviation.back(), down.deviation.back());
    CheckResult c = make("sigma_limits", dev, tol_or(cfg, 1e-6), up.monotone && down.monotone);
    c.detail = {{"deviation_plus", up.deviation.back()},
                {"deviation_minus", down.deviation.back()},
                {"monotone", up.monotone && down.monotone},
                {"l_max", cfg.l_max}};
    rep.groups.push_back(std::move(c));
  }
  {
    const EffectivePotential other(companion_medium(q.medium()));
    const auto d = discriminator_F(q, other, {1, 5, 10, 20}, {}, cfg.threads);
    CheckResult c = make("discriminator_identity", d.max_rel, tol_or(cfg, 1e-6));
    c.detail = d.to_json();
    rep.groups.push_back(std::move(c));
  }

  rep.pass = std::all_of(rep.groups.begin(), rep.groups.end(), [](const CheckResult& c) { return c.pass; });
  return rep;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json g = nlohmann::json::array();
  for (const CheckResult& c : groups) {
    g.push_back({{"group", c.group},
                 {"pass", c.pass},
                 {"measured", c.measured},
                 {"tolerance", c.tolerance},
                 {"detail", c.detail}});
  }
  return {{"pass", pass}, {"groups", g}};
}

}  // namespace regge
