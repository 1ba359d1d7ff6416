// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// numbers. Quantities of order one (sigma, delta, flux, ratios) are compared
// absolutely; Jost values and products, which reach 1e11..1e70 at the
// orders involved, are compared relative to their magnitude and the
// absolute figure is printed next to it. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "oracles/step_oracle.hpp"
#include "regge/inverse.hpp"
#include "regge/kernels.hpp"
#include "regge/parallel.hpp"
#include "regge/radial.hpp"
#include "regge/scattering.hpp"
#include "regge/verify.hpp"

using namespace regge;
using std::numbers::pi;

namespace {

const cplx I{0.0, 1.0};

Medium medium(RadialProfile V, RadialProfile b) {
  Medium m;
  m.V = std::move(V);
  m.b = std::move(b);
  return m;
}

RadialProfile with_flux(RadialProfile b, double flux) {
  if (flux == 0.0) return {};
  return b.scaled(flux / flux_of(b, 2.0));
}

// reference media (also in examples_media/)
Medium bump_step(double flux = 0.3, double V0 = 0.3) {
  return medium(RadialProfile::step(0.5, 2.0, V0), with_flux(RadialProfile::bump(0.5, 1.5, 1.0), flux));
}
Medium aharonov_bohm(double flux) {
  return medium({}, with_flux(RadialProfile::bump(0.1, 0.4, 1.0), flux));
}
Medium spline_bump(double flux) {
  return medium(RadialProfile::spline(0.5, 2.0, {0.0, 0.4, -0.2, 0.3, 0.0}),
                with_flux(RadialProfile::bump(0.7, 1.9, 1.0), flux));
}

double sup_rel(const std::vector<cplx>& a, const std::vector<cplx>& b, double* abs_out = nullptr) {
  double d = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
    s = std::max(s, std::abs(b[i]));
  }
  if (abs_out) *abs_out = std::max(*abs_out, d);
  return s > 0.0 ? d / s : d;
}

int failures = 0;

void report(int n, bool pass, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", n, pass ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void note(const std::string& what) {
  std::printf("              note: %s\n", what.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void c1() {
  const auto s = specfun_identities();
  report(1, s.max_rel <= 1e-10,
         fmt("special-function identities: max relative defect %.2e over %d evaluations (tol 1e-10; "
             "max absolute %.2e on values up to ~1e4)",
             s.max_rel, s.evaluations, s.max_abs));
}

void c2(int threads) {
  const auto grid = RadialGrid::hybrid(0.5, 2.0, 1024);
  double scaled = 0.0, absolute = 0.0;
  for (const Medium& m : {bump_step(0.3), aharonov_bohm(0.5), spline_bump(-0.7)}) {
    const EffectivePotential q(m);
    const auto w = wronskian_check(q, ray_samples(200, 40.0, q.flux()), grid, threads);
    scaled = std::max(scaled, w.max_scaled);
    absolute = std::max(absolute, w.max_abs);
  }
  report(2, scaled <= 1e-8,
         fmt("Wronskian: max |W+2i| / (|F+ F-'| + |F+' F-|) = %.2e over 3 media x 200 nu x 1024 points "
             "(tol 1e-8)",
             scaled));
  note(fmt("max absolute |W+2i| = %.2e; the two products reach ~1e140 at |nu_R| = 40", absolute));
}

void c3() {
  const EffectivePotential zero(medium({}, {}));
  const auto grid = RadialGrid::hybrid(0.5, 2.0, 1024);
  double rel = 0.0, absolute = 0.0;
  for (const cplx& nu : ray_samples(24, 40.0, 0.0)) {
    for (auto sg : {JostSign::plus, JostSign::minus}) {
      const auto s = jost_solve(zero, sg, nu, grid);
      std::vector<cplx> ref(grid.r.size());
      for (std::size_t i = 0; i < grid.r.size(); ++i) ref[i] = free_jost(sg, nu, grid.r[i], 0.0).first;
      rel = std::max(rel, sup_rel(s.values, ref, &absolute));
    }
  }
  double half = 0.0;
  for (auto sg : {JostSign::plus, JostSign::minus}) {
    const double sign = sg == JostSign::plus ? 1.0 : -1.0;
    const auto s = jost_solve(zero, sg, 0.5, grid);
    for (std::size_t i = 0; i < grid.r.size(); ++i) {
      half = std::max(half, std::abs(s.values[i] - std::exp(sign * I * grid.r[i])));
    }
  }
  report(3, rel <= 1e-10 && half <= 1e-10,
         fmt("zero perturbation: F = F0 to relative %.2e (absolute %.2e), nu_R = 1/2 gives e^{+-ir} "
             "to %.2e (tol 1e-10)",
             rel, absolute, half));
}

void c4() {
  const EffectivePotential q(medium(RadialProfile::step(0.5, 2.0, 0.3), {}));
  const auto grid = RadialGrid::hybrid(0.5, 2.0, 1024);
  const auto data = phase_shifts(q, 0, 10);
  double jost_rel = 0.0, jost_abs = 0.0, sig = 0.0, del = 0.0;
  for (int l = 0; l <= 10; ++l) {
    const auto ref = oracle::step_potential(l, 0.3, 0.5, 2.0);
    for (const JostFunctions& j : {jost_functions(q, l, grid), jost_functions_exterior(q, l)}) {
      for (auto [got, want] : {std::pair{j.alpha, ref.alpha}, std::pair{j.beta, ref.beta}}) {
        jost_rel = std::max(jost_rel, std::abs(got / want - 1.0));
        jost_abs = std::max(jost_abs, std::abs(got - want));
      }
    }
    sig = std::max(sig, std::abs(data.at(l).sigma - ref.sigma));
    del = std::max(del, std::abs(std::remainder(data.at(l).delta - ref.delta, pi)));
  }
  report(4, jost_rel <= 1e-7 && sig <= 1e-7 && del <= 1e-7,
         fmt("step oracle l = 0..10: alpha, beta relative %.2e, sigma %.2e, delta (mod pi) %.2e (tol 1e-7)",
             jost_rel, sig, del));
  note(fmt("alpha, beta absolute %.2e; |beta| reaches ~1e11 at l = 10", jost_abs));
}

void c5(int threads) {
  const EffectivePotential q(bump_step(0.3));
  const auto s = symmetry_check(q, {1.0, 3.2, 7.0, -1.0, -3.2, -7.0},
                                RadialGrid::hybrid(0.5, 2.0, 1024), threads);
  report(5, s.max_abs <= 1e-9,
         fmt("symmetry F_gamma(r, nu) = F_-gamma(r, -nu), nu in {+-1, +-3.2, +-7}: max %.2e (tol 1e-9)",
             s.max_abs));
}

void c6(int threads) {
  const EffectivePotential q(bump_step(0.3));
  const EffectivePotential qm(q.medium().mirrored());
  std::vector<int> top, bottom;
  for (int l = 31; l <= 40; ++l) top.push_back(l);
  for (int l = -31; l >= -40; --l) bottom.push_back(l);
  // as stated: sigma(40) near e^{-0.3 i pi}, sigma(-40) near e^{+0.3 i pi}
  const auto up = sigma_tail_report(q, top, std::exp(-0.3 * pi * I), {}, threads);
  const auto down = sigma_tail_report(q, bottom, std::exp(0.3 * pi * I), {}, threads);
  const double d_up = up.deviation.back(), d_down = down.deviation.back();
  report(6, d_up <= 0.05 && d_down <= 0.05 && up.monotone && down.monotone,
         fmt("sigma limits, flux 0.3: |sigma(40) - e^{-0.3 i pi}| = %.3f, |sigma(-40) - e^{+0.3 i pi}| = "
             "%.3f (tol 0.05), monotone %s/%s",
             d_up, d_down, up.monotone ? "yes" : "no", down.monotone ? "yes" : "no"));
  const cplx s40 = regge_sigma(q, qm, 40.0), sm40 = regge_sigma(q, qm, -40.0);
  note(fmt("measured sigma(40) = %.6f%+.6fi, sigma(-40) = %.6f%+.6fi", s40.real(), s40.imag(), sm40.real(),
           sm40.imag()));
  // limits built from the medium's own flux, so the deviation is not floored at rounding of 0.3
  const auto cup = sigma_tail_report(q, top, std::exp(q.flux() * pi * I), {}, threads);
  const auto cdown = sigma_tail_report(q, bottom, std::exp(-q.flux() * pi * I), {}, threads);
  note(fmt("with the limits exchanged (e^{+0.3 i pi} at +40, e^{-0.3 i pi} at -40): deviations %.2e, %.2e, "
           "monotone %s/%s",
           cup.deviation.back(), cdown.deviation.back(), cup.monotone ? "yes" : "no",
           cdown.monotone ? "yes" : "no"));
}

void c7(int threads) {
  struct Case {
    const char* name;
    Medium m;
    double flux;
  };
  const std::vector<Case> cases{
      {"spline V + bump B", spline_bump(-0.7), -0.7},
      {"step V + bump B", bump_step(-0.3), -0.3},
      {"step V, no field", bump_step(0.0), 0.0},
      {"step V + bump B", bump_step(0.3), 0.3},
      {"Aharonov-Bohm (B inside obstacle)", aharonov_bohm(0.7), 0.7},
  };
  double worst = 0.0;
  std::string detail;
  for (const Case& c : cases) {
    const auto est = recover_flux(phase_shifts(EffectivePotential(c.m), 0, 40, {}, threads));
    const double err = std::abs(est.flux_over_2pi_mod2 - c.flux);
    worst = std::max(worst, err);
    detail += fmt(" %+.1f->%+.6f", c.flux, est.flux_over_2pi_mod2);
  }
  report(7, worst <= 1e-3, fmt("flux recovery, 5 media: max error %.2e (tol 1e-3);%s", worst, detail.c_str()));
}

void c8(int threads) {
  const std::vector<int> ls{1, 5, 10, 20};
  Medium b2 = bump_step(0.3, 0.5);
  b2.b = with_flux(RadialProfile::bump(0.6, 1.8, 1.0), 0.3);
  const auto p1 = discriminator_F(EffectivePotential(medium(RadialProfile::step(0.5, 2.0, 0.3), {})),
                                  EffectivePotential(medium(RadialProfile::step(0.5, 2.0, 0.5), {})), ls,
                                  {}, threads);
  const auto p2 = discriminator_F(EffectivePotential(bump_step(0.3)), EffectivePotential(b2), ls, {}, threads);
  const EffectivePotential a(bump_step(0.3)), ab(aharonov_bohm(0.7));
  const double same = std::max(discriminator_F(a, a, ls, {}, threads).max_abs,
                               discriminator_F(ab, ab, ls, {}, threads).max_abs);
  const double rel = std::max(p1.max_rel, p2.max_rel);
  report(8, rel <= 1e-6 && same <= 1e-7,
         fmt("discriminator identity l in {1,5,10,20}: max relative lhs/rhs %.2e on 2 same-flux pairs "
             "(tol 1e-6); identical pairs max |F| %.2e (tol 1e-7)",
             rel, same));
}

void c9(int threads) {
  const double flux = 0.3;
  const KernelBox box;
  std::vector<cplx> real_axis, imag_axis, all;
  for (int k = 1; k <= 40; ++k) real_axis.push_back(k + flux);
  for (int k = 5; k <= 40; k += 5) imag_axis.push_back(cplx(flux, k));
  for (const cplx& s : default_kernel_samples()) all.push_back(s + flux);
  const auto nr = verify_kernel_bounds(box, real_axis, flux, KernelWeight::N, threads);
  const auto ni = verify_kernel_bounds(box, imag_axis, flux, KernelWeight::N, threads);
  const auto nall = verify_kernel_bounds(box, all, flux, KernelWeight::N, threads);
  const auto m = verify_kernel_bounds(box, real_axis, flux, KernelWeight::M, threads);
  std::vector<cplx> reg;
  for (int k = 1; k <= 40; ++k) reg.push_back(k + flux);
  const auto phi = verify_regular_bound(EffectivePotential(bump_step(flux)), reg,
                                        RadialGrid::hybrid(0.5, 2.0, 256), threads);

  // |K| 2 nu_R / s at nu_R = 30 on grid pairs r < s away from the diagonal
  double kdev = 0.0, k_at = 0.0;
  const double nu = 30.0 + flux;
  for (double r : {0.5, 0.6, 0.8, 1.0, 1.2}) {
    for (double s : {0.9, 1.2, 1.5, 2.0}) {
      if (s < 1.5 * r) continue;
      const double ratio = std::abs(kernel_K({r, s, nu}, flux)) * 2.0 * 30.0 / s;
      kdev = std::max(kdev, std::abs(ratio - 1.0));
      if (r == 0.6 && s == 0.9) k_at = ratio;
    }
  }
  auto ok = [](const auto& rep) { return std::isfinite(rep.c_emp) && rep.drift < 2.0; };
  const bool pass = ok(nr) && ok(ni) && ok(nall) && ok(m) && ok(phi) && kdev <= 0.15;
  report(9, pass,
         fmt("bound suites, constant (drift under grid doubling): N real %.3g (%.4f), N imaginary %.3g "
             "(%.4f), N all rays %.3g (%.4f), Phi %.3g (%.4f), M %.3g (%.4f); |K| 2nu_R/s at nu_R = 30: "
             "max |ratio - 1| = %.3f, %.4f at (0.6, 0.9) (tol 0.15)",
             nr.c_emp_refined, nr.drift, ni.c_emp_refined, ni.drift, nall.c_emp_refined, nall.drift,
             phi.c_emp_refined, phi.drift, m.c_emp_refined, m.drift, kdev, k_at));
}

void c10() {
  const EffectivePotential q(bump_step(0.3));
  const auto grid = RadialGrid::hybrid(0.5, 2.0, 256);
  double rel = 0.0, absolute = 0.0;
  for (double re : {1.0, 5.0, 20.0}) {
    const cplx nu = re + q.flux();
    for (auto sg : {JostSign::plus, JostSign::minus}) {
      const auto a = jost_solve(q, sg, nu, grid);
      const auto b = jost_solve_volterra(q, sg, nu, grid);
      rel = std::max(rel, sup_rel(b.values, a.values, &absolute));
    }
  }
  report(10, rel <= 1e-7,
         fmt("ODE vs Volterra, Re nu_R in {1, 5, 20}: sup |F_ode - F_volterra| / sup |F| = %.2e (tol 1e-7)", rel));
  note(fmt("absolute sup difference %.2e; sup |F| is ~1e27 at nu_R = 20", absolute));
}

void c11() {
  const EffectivePotential q(bump_step(0.3));
  const double r0 = 0.5, R = 2.0;
  const cplx nu = 40.0 + q.flux();
  const auto grid = RadialGrid::hybrid(r0, R, 1024);
  const auto fp = jost_solve(q, JostSign::plus, nu, grid);
  bool pass = true;
  std::string lit, corr;
  for (double r : {r0, 0.5 * (r0 + R), R}) {
    // nearest grid point
    std::size_t i = 0;
    for (std::size_t k = 0; k < grid.r.size(); ++k) {
      if (std::abs(grid.r[k] - r) < std::abs(grid.r[i] - r)) i = k;
    }
    const double x = grid.r[i];
    const double ratio = std::abs(fp.values[i] / free_jost(JostSign::plus, nu, x, q.flux()).first);
    const double c = jost_ratio_constant(q, x);
    const double tol = x == R ? 1e-9 : 0.05 * c;
    pass = pass && std::abs(ratio - c) <= tol;
    lit += fmt(" r=%.3f: |F+/F0+| = %.6f, C_r = %.6f;", x, ratio, c);
    const double cm = std::exp(-gauge_log_integral(q, x));
    corr += fmt(" %.6f (off by %.2f%%);", cm, 100.0 * std::abs(ratio / cm - 1.0));
  }
  report(11, pass, fmt("Jost-to-free ratio at nu_R = 40 against C_r = exp(+int_r^R (gamma - gamma(R))/s ds) (tol 5%%, "
                       "1e-9 at R):%s",
                       lit.c_str()));
  note(fmt("exp(-int_r^R (gamma - gamma(R))/s ds) at the same radii:%s", corr.c_str()));
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : default_threads();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c1();
    c2(threads);
    c3();
    c4();
    c5(threads);
    c6(threads);
    c7(threads);
    c8(threads);
    c9(threads);
    c10();
    c11();
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 2;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of 11 criteria failed (%.1f s)\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
