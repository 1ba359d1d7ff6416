#include "regge/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ode.hpp"
#include "regge/errors.hpp"
#include "regge/parallel.hpp"
#include "regge/quadrature.hpp"

namespace regge {

namespace {

using std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr int kPanelGauss = 8;
constexpr double kPicardTol = 1e-10;

// sqrt(pi r / 2) and its r-derivative
inline std::pair<double, double> riccati_factor(double r) {
  const double s = std::sqrt(0.5 * pi * r);
  return {s, 0.5 * s / r};
}

// u = sqrt(pi r/2) J_c, v = -i sqrt(pi r/2) H1_c with derivatives; W(u, v) = 1.
// h2 = sqrt(pi r/2) H2_c = 2u - iv, kept separately since that difference
// cancels completely when |Im c| is large.
struct FreePair {
  cplx u, du, v, dv, h2;
};

FreePair free_pair(cplx c, double r) {
  const specfun::BesselValue b = specfun::bessel_h(c, r);
  const auto [s, ds] = riccati_factor(r);
  return {s * b.J, ds * b.J + s * b.dJ, -kI * s * b.H1, -kI * (ds * b.H1 + s * b.dH1), s * b.H2};
}

// Sorted stop points strictly between lo and hi (grid points and breakpoints).
std::vector<double> stops_between(const std::vector<double>& grid, const std::vector<double>& brk,
                                  double lo, double hi) {
  std::vector<double> pts;
  for (double x : grid) {
    if (x > lo && x < hi) pts.push_back(x);
  }
  for (double x : brk) {
    if (x > lo && x < hi) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Radial system (y, y'), y'' = ((nu_R^2 - 1/4)/r^2 + q_nu(r) - 1) y.
struct RadialRhs {
  const EffectivePotential& q;
  cplx nu;
  cplx nuR2;
  detail::State<2> operator()(double r, const detail::State<2>& y) const {
    double q0, w;
    q.parts(r, q0, w);
    const cplx coef = (nuR2 - 0.25) / (r * r) + (q0 + nu * w) - 1.0;
    return {y[1], coef * y[0]};
  }
};

detail::OdeOptions ode_options(const SolverOptions& opt, const RadialGrid& grid) {
  detail::OdeOptions o;
  o.rtol = opt.rtol;
  o.adaptive = grid.method == RadialGrid::Method::adaptive_rk;
  return o;
}

}  // namespace

RadialGrid RadialGrid::hybrid(double r0, double R, int n) {
  if (n < 2) throw ConfigError("radial grid needs at least 2 points");
  if (!(r0 > 0.0)) throw ConfigError("radial grid needs r0 > 0");
  const double hi = R > r0 ? R : r0 + 1.0;
  RadialGrid g;
  g.r.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    const double geo = r0 * std::pow(hi / r0, t);
    const double uni = r0 + (hi - r0) * t;
    g.r[i] = 0.5 * (geo + uni);
  }
  g.r.front() = r0;
  g.r.back() = hi;
  return g;
}

RadialGrid RadialGrid::refined() const {
  RadialGrid g;
  g.method = method;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i > 0) g.r.push_back(0.5 * (r[i - 1] + r[i]));
    g.r.push_back(r[i]);
  }
  return g;
}

RadialGrid RadialGrid::coarsened() const {
  RadialGrid g;
  g.method = method;
  for (std::size_t i = 0; i < r.size(); i += 2) g.r.push_back(r[i]);
  if (g.r.back() != r.back()) g.r.push_back(r.back());
  return g;
}

cplx canonical_order(cplx nu_R) {
  if (nu_R.real() < 0.0 || (nu_R.real() == 0.0 && nu_R.imag() < 0.0)) return -nu_R;
  return nu_R;
}

std::pair<cplx, cplx> free_jost(JostSign sign, cplx nu, double r, double flux) {
  const cplx c = canonical_order(nu - flux);
  const specfun::BesselValue b = specfun::bessel_h(c, r);
  const auto [s, ds] = riccati_factor(r);
  const cplx theta = 0.5 * pi * (c + 0.5);
  if (sign == JostSign::plus) {
    const cplx e = std::exp(kI * theta);
    return {e * s * b.H1, e * (ds * b.H1 + s * b.dH1)};
  }
  const cplx e = std::exp(-kI * theta);
  return {e * s * b.H2, e * (ds * b.H2 + s * b.dH2)};
}

JostSolution jost_solve(const EffectivePotential& q, JostSign sign, cplx nu,
                        const RadialGrid& grid, const SolverOptions& opt) {
  if (grid.r.empty()) throw ConfigError("jost_solve: empty grid");
  const double flux = q.flux();
  const cplx nuR = nu - flux;
  const cplx c = canonical_order(nuR);
  const double R = q.R();

  JostSolution sol;
  sol.sign = sign;
  sol.nu = nu;
  sol.r = grid.r;
  sol.values.resize(grid.r.size());
  sol.derivs.resize(grid.r.size());
  sol.boundary = specfun::bessel_h(c, std::max(R, q.r0()));

  // beyond R (and everywhere when q vanishes on [r0, inf)) F = F0
  const bool trivial = q.trivial();
  std::size_t first_free = grid.r.size();
  for (std::size_t i = grid.r.size(); i-- > 0;) {
    if (!trivial && grid.r[i] < R) break;
    std::tie(sol.values[i], sol.derivs[i]) = free_jost(sign, nu, grid.r[i], flux);
    first_free = i;
  }
  if (first_free == 0) return sol;

  detail::State<2> y;
  std::tie(y[0], y[1]) = free_jost(sign, nu, R, flux);
  const RadialRhs rhs{q, nu, nuR * nuR};
  const auto o = ode_options(opt, grid);
  const std::array<int, 2> group{0, 0};
  std::vector<double> stops = stops_between(grid.r, q.breakpoints(), grid.r.front(), R);
  stops.push_back(grid.r.front());
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  double h = 0.0, at = R;
  std::size_t gi = first_free;  // next grid index to fill is gi - 1
  for (std::size_t k = stops.size(); k-- > 0;) {
    y = detail::integrate_to<2>(rhs, at, stops[k], y, group, o, h);
    at = stops[k];
    while (gi > 0 && grid.r[gi - 1] == at) {
      --gi;
      sol.values[gi] = y[0];
      sol.derivs[gi] = y[1];
    }
  }
  return sol;
}

RegularSolution regular_solve(const EffectivePotential& q, cplx nu, const RadialGrid& grid,
                              const SolverOptions& opt) {
  if (grid.r.empty()) throw ConfigError("regular_solve: empty grid");
  const double r0 = grid.r.front();
  const cplx nuR = nu - q.flux();
  RegularSolution sol;
  sol.nu = nu;
  sol.r = grid.r;
  sol.values.assign(grid.r.size(), 0.0);
  sol.derivs.assign(grid.r.size(), 0.0);
  sol.derivs[0] = -2.0;

  detail::State<2> y{cplx(0.0), cplx(-2.0)};
  const RadialRhs rhs{q, nu, nuR * nuR};
  const auto o = ode_options(opt, grid);
  const std::array<int, 2> group{0, 0};
  std::vector<double> stops = stops_between(grid.r, q.breakpoints(), r0, grid.r.back());
  stops.push_back(grid.r.back());
  if (q.R() > r0 && q.R() < grid.r.back()) stops.push_back(q.R());
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  double h = 0.0, at = r0;
  std::size_t gi = 1;
  for (double s : stops) {
    y = detail::integrate_to<2>(rhs, at, s, y, group, o, h);
    at = s;
    while (gi < grid.r.size() && grid.r[gi] == at) {
      sol.values[gi] = y[0];
      sol.derivs[gi] = y[1];
      ++gi;
    }
  }
  return sol;
}

ExteriorCoefficients exterior_coefficients(const EffectivePotential& q, cplx nu,
                                           const SolverOptions& opt) {
  return exterior_coefficients_from(q, nu, q.r0(), opt);
}

ExteriorCoefficients exterior_coefficients_from(const EffectivePotential& q, cplx nu, double r0,
                                                const SolverOptions& opt) {
  if (!(r0 >= q.r0())) throw DomainError("exterior_coefficients: start radius below r0");
  const double R = q.R();
  ExteriorCoefficients ec;
  ec.nu = nu;
  ec.order = canonical_order(nu - q.flux());
  const cplx c = ec.order;
  const FreePair f0 = free_pair(c, r0);
  ec.A = 2.0 * f0.v;
  ec.B = -2.0 * f0.u;
  // A - 2iB = 2(v + 2iu) = 2i h2 at r0 for the free case
  ec.D = 2.0 * kI * f0.h2;
  if (q.trivial() || r0 >= R) return ec;

  // Phi = A p + B v with A' p + B' v = 0, W(p, v) = omega:
  //   A' = -v q Phi / omega,  B' = p q Phi / omega.
  // p = u unless u and v are nearly parallel (|Im c| large), where
  // p = sqrt(pi r/2) H2_c = 2u - i v, omega = 2, is far better conditioned.
  const FreePair fR = free_pair(c, R);
  const auto h2 = [](const FreePair& f) { return f.h2; };
  const double kappa_u = std::max(std::abs(f0.u * f0.v), std::abs(fR.u * fR.v));
  const double kappa_h = std::max(std::abs(h2(f0) * f0.v), std::abs(h2(fR) * fR.v));
  const bool use_h2 = kappa_h < kappa_u;
  const double omega = use_h2 ? 2.0 : 1.0;
  const auto basis = [&](const FreePair& f) { return use_h2 ? h2(f) : f.u; };

  auto rhs = [&](double r, const detail::State<2>& y) -> detail::State<2> {
    const cplx qv = q(nu, r);
    if (qv == 0.0) return {cplx(0.0), cplx(0.0)};
    const FreePair f = free_pair(c, r);
    const cplx p = basis(f);
    const cplx phi = y[0] * p + y[1] * f.v;
    return {-f.v * qv * phi / omega, p * qv * phi / omega};
  };
  detail::OdeOptions o;
  o.rtol = opt.rtol;
  const std::array<int, 2> group{0, 1};
  std::vector<double> stops = stops_between({}, q.breakpoints(), r0, R);
  stops.push_back(R);
  detail::State<2> y{2.0 * f0.v / omega, -2.0 * basis(f0) / omega};
  double h = 0.0, at = r0;
  for (double s : stops) {
    y = detail::integrate_to<2>(rhs, at, s, y, group, o, h);
    at = s;
  }
  if (use_h2) {
    // A h2 + B v = 2A u + (B - iA) v
    ec.A = 2.0 * y[0];
    ec.B = y[1] - kI * y[0];
    ec.D = -2.0 * kI * y[1];
  } else {
    ec.A = y[0];
    ec.B = y[1];
    ec.D = ec.A - 2.0 * kI * ec.B;
  }
  return ec;
}

JostSolution jost_solve_volterra(const EffectivePotential& q, JostSign sign, cplx nu,
                                 const RadialGrid& grid, int max_iter) {
  if (grid.r.empty()) throw ConfigError("jost_solve_volterra: empty grid");
  const double flux = q.flux();
  const cplx nuR = nu - flux;
  if (nuR.real() < 0.0) {
    throw DomainError("jost_solve_volterra: requires Re(nu_R) >= 0");
  }
  const cplx c = canonical_order(nuR);
  const double R = q.R();

  JostSolution sol;
  sol.sign = sign;
  sol.nu = nu;
  sol.r = grid.r;
  sol.values.resize(grid.r.size());
  sol.derivs.resize(grid.r.size());
  sol.boundary = specfun::bessel_h(c, std::max(R, q.r0()));
  for (std::size_t i = 0; i < grid.r.size(); ++i) {
    std::tie(sol.values[i], sol.derivs[i]) = free_jost(sign, nu, grid.r[i], flux);
  }
  sol.iterations = 1;
  if (q.trivial()) return sol;

  // panels: grid points and breakpoints inside [r_first, R]
  std::vector<double> ends = stops_between(grid.r, q.breakpoints(), grid.r.front(), R);
  ends.insert(ends.begin(), grid.r.front());
  ends.push_back(R);
  const std::size_t np = ends.size() - 1;
  const quad::Rule& gl = quad::gauss_legendre(kPanelGauss);
  const int m = kPanelGauss;

  // S[i][j] = int_{x_i}^{1} L_j(t) dt on [-1, 1]
  std::vector<double> S(m * m);
  auto lagrange = [&](int j, double t) {
    double p = 1.0;
    for (int k = 0; k < m; ++k) {
      if (k != j) p *= (t - gl.x[k]) / (gl.x[j] - gl.x[k]);
    }
    return p;
  };
  for (int i = 0; i < m; ++i) {
    const double lo = gl.x[i], half = 0.5 * (1.0 - lo), mid = 0.5 * (1.0 + lo);
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int k = 0; k < m; ++k) s += gl.w[k] * lagrange(j, mid + half * gl.x[k]);
      S[i * m + j] = s * half;
    }
  }

  const std::size_t nn = np * m;
  std::vector<double> x(nn), weight(nn);
  std::vector<cplx> u(nn), v(nn), qn(nn), f0(nn), F(nn), Fn(nn);
  for (std::size_t p = 0; p < np; ++p) {
    const double half = 0.5 * (ends[p + 1] - ends[p]), mid = 0.5 * (ends[p + 1] + ends[p]);
    for (int j = 0; j < m; ++j) {
      const std::size_t k = p * m + j;
      x[k] = mid + half * gl.x[j];
      const FreePair fp = free_pair(c, x[k]);
      u[k] = fp.u;
      v[k] = fp.v;
      qn[k] = q(nu, x[k]);
      f0[k] = free_jost(sign, nu, x[k], flux).first;
      weight[k] = std::pow(x[k] / R, c.real());
    }
  }
  // end-point data for the grid output
  std::vector<FreePair> fe(np + 1);
  for (std::size_t p = 0; p <= np; ++p) fe[p] = free_pair(c, ends[p]);

  std::vector<cplx> ta(np + 1), tb(np + 1), fa(nn), fb(nn), la(nn), lb(nn);
  F = f0;
  int it = 0;
  for (;;) {
    ++it;
    for (std::size_t k = 0; k < nn; ++k) {
      fa[k] = v[k] * qn[k] * F[k];
      fb[k] = u[k] * qn[k] * F[k];
    }
    // tails a(ends[p]) = int_{ends[p]}^R v q F, accumulated from R downwards
    ta[np] = tb[np] = 0.0;
    for (std::size_t p = np; p-- > 0;) {
      const double half = 0.5 * (ends[p + 1] - ends[p]);
      cplx sa = 0.0, sb = 0.0;
      for (int j = 0; j < m; ++j) {
        sa += gl.w[j] * fa[p * m + j];
        sb += gl.w[j] * fb[p * m + j];
      }
      ta[p] = ta[p + 1] + half * sa;
      tb[p] = tb[p + 1] + half * sb;
      for (int i = 0; i < m; ++i) {
        cplx a = 0.0, b = 0.0;
        for (int j = 0; j < m; ++j) {
          a += S[i * m + j] * fa[p * m + j];
          b += S[i * m + j] * fb[p * m + j];
        }
        la[p * m + i] = ta[p + 1] + half * a;
        lb[p * m + i] = tb[p + 1] + half * b;
      }
    }
    double change = 0.0, size = 0.0;
    for (std::size_t k = 0; k < nn; ++k) {
      Fn[k] = f0[k] + u[k] * la[k] - v[k] * lb[k];
      change = std::max(change, weight[k] * std::abs(Fn[k] - F[k]));
      size = std::max(size, weight[k] * std::abs(Fn[k]));
    }
    F.swap(Fn);
    if (change <= kPicardTol * size) break;
    if (it >= max_iter) {
      throw NoConvergence("jost_solve_volterra: no convergence after " + std::to_string(max_iter) +
                          " iterations");
    }
  }
  // the last sweep used the previous iterate; the tails are consistent with it
  sol.iterations = it;
  std::size_t p = 0;
  for (std::size_t i = 0; i < grid.r.size(); ++i) {
    const double r = grid.r[i];
    if (r >= R) continue;
    while (p < np && ends[p] < r) ++p;
    const auto [F0, dF0] = free_jost(sign, nu, r, flux);
    const FreePair& f = fe[p];
    sol.values[i] = F0 + f.u * ta[p] - f.v * tb[p];
    sol.derivs[i] = dF0 + f.du * ta[p] - f.dv * tb[p];
  }
  return sol;
}

BoundReport verify_regular_bound(const EffectivePotential& q, const std::vector<cplx>& nu_list,
                                 const RadialGrid& grid, int threads) {
  const RadialGrid fine = grid.refined();
  const double r0 = grid.r.front();
  std::vector<double> c1(nu_list.size()), c2(nu_list.size()), at(nu_list.size());
  auto weighted = [&](const RegularSolution& s, cplx nuR, double* where) {
    double best = 0.0;
    for (std::size_t i = 0; i < s.r.size(); ++i) {
      const double val =
          std::abs(s.values[i]) * (1.0 + std::abs(nuR)) * std::pow(r0 / s.r[i], nuR.real());
      if (val > best) {
        best = val;
        if (where) *where = s.r[i];
      }
    }
    return best;
  };
  parallel_for(nu_list.size(), threads, [&](std::size_t k) {
    const cplx nuR = nu_list[k] - q.flux();
    c1[k] = weighted(regular_solve(q, nu_list[k], grid), nuR, &at[k]);
    c2[k] = weighted(regular_solve(q, nu_list[k], fine), nuR, nullptr);
  });
  BoundReport rep;
  for (std::size_t k = 0; k < nu_list.size(); ++k) {
    if (c1[k] > rep.c_emp) {
      rep.c_emp = c1[k];
      rep.max_r = at[k];
      rep.max_nu = nu_list[k];
    }
    rep.c_emp_refined = std::max(rep.c_emp_refined, c2[k]);
  }
  rep.drift = std::max(rep.c_emp / rep.c_emp_refined, rep.c_emp_refined / rep.c_emp);
  rep.pass = std::isfinite(rep.c_emp) && std::isfinite(rep.c_emp_refined) && rep.drift < 2.0;
  return rep;
}

double gauge_log_integral(const EffectivePotential& q, double r) {
  const double R = q.R();
  if (r >= R) return 0.0;
  const double gR = q.flux();
  std::vector<double> brk = q.medium().b.breakpoints();
  return quad::integrate_piecewise([&](double s) { return (q.gauge()(s) - gR) / s; }, r, R, brk,
                                   1e-14);
}

double jost_ratio_constant(const EffectivePotential& q, double r) {
  return std::exp(gauge_log_integral(q, r));
}

namespace {
template <class Sol>
void csv_rows(std::ostream& os, const Sol& s) {
  os << "r,re_F,im_F,re_dF,im_dF\n";
  char buf[160];
  for (std::size_t i = 0; i < s.r.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.r[i], s.values[i].real(),
                  s.values[i].imag(), s.derivs[i].real(), s.derivs[i].imag());
    os << buf;
  }
}
}  // namespace

void write_csv(std::ostream& os, const JostSolution& s) { csv_rows(os, s); }
void write_csv(std::ostream& os, const RegularSolution& s) { csv_rows(os, s); }

}  // namespace regge
