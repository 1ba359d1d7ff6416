#include "regge/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ode.hpp"
#include "regge/errors.hpp"
#include "regge/parallel.hpp"

namespace regge {

namespace {

using std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double reduce_mod2(double x) {
  double y = x - 2.0 * std::floor((x + 1.0) / 2.0);
  if (y >= 1.0) y -= 2.0;
  return y;
}

void require_same_flux(const EffectivePotential& a, const EffectivePotential& b) {
  if (std::abs(a.flux() - b.flux()) > 1e-10) {
    throw FluxMismatch("media have different flux: " + std::to_string(a.flux()) + " vs " +
                       std::to_string(b.flux()));
  }
}

// int_{r0}^{R} (q_nu - q~_nu) Phi Phi~ dr with both regular solutions
// carried along: state (Phi, Phi', Phi~, Phi~', I)
cplx identity_integral(const EffectivePotential& qa, const EffectivePotential& qb, cplx nu,
                       const SolverOptions& opt) {
  const double r0 = qa.r0();
  const double R = std::max(qa.R(), qb.R());
  const cplx a2 = (nu - qa.flux()) * (nu - qa.flux()), b2 = (nu - qb.flux()) * (nu - qb.flux());
  auto rhs = [&](double r, const detail::State<5>& y) -> detail::State<5> {
    const cplx qA = qa(nu, r), qB = qb(nu, r);
    const double ir2 = 1.0 / (r * r);
    return {y[1], ((a2 - 0.25) * ir2 + qA - 1.0) * y[0], y[3], ((b2 - 0.25) * ir2 + qB - 1.0) * y[2],
            (qA - qB) * y[0] * y[2]};
  };
  std::vector<double> stops;
  for (const auto* q : {&qa, &qb}) {
    for (double b : q->breakpoints()) stops.push_back(b);
    if (q->R() > r0 && q->R() < R) stops.push_back(q->R());
  }
  stops.push_back(R);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  detail::OdeOptions o;
  o.rtol = opt.rtol;
  const std::array<int, 5> group{0, 0, 1, 1, 2};
  detail::State<5> y{cplx(0.0), cplx(-2.0), cplx(0.0), cplx(-2.0), cplx(0.0)};
  double h = 0.0, at = r0;
  for (double s : stops) {
    if (s <= at) continue;
    y = detail::integrate_to<5>(rhs, at, s, y, group, o, h);
    at = s;
  }
  return y[4];
}

}  // namespace

FluxEstimate recover_flux(const ScatteringData& data, double tail_fraction) {
  std::vector<const PhaseRecord*> tail;
  for (const PhaseRecord& r : data.records) {
    if (r.l >= 20) tail.push_back(&r);
  }
  if (tail.size() < 10) {
    throw InsufficientTail("recover_flux: need at least 10 records with l >= 20, have " +
                           std::to_string(tail.size()));
  }
  std::sort(tail.begin(), tail.end(), [](auto* a, auto* b) { return a->l < b->l; });
  const double frac = std::clamp(tail_fraction, 0.0, 1.0);
  const std::size_t n = std::max<std::size_t>(
      3, static_cast<std::size_t>(std::ceil(frac * static_cast<double>(tail.size()))));
  tail.erase(tail.begin(), tail.end() - static_cast<std::ptrdiff_t>(std::min(n, tail.size())));

  // Neville tableau in h = 1/l, two levels
  const std::size_t m = tail.size();
  std::vector<double> h(m);
  std::vector<cplx> t0(m), t1(m), t2(m);
  for (std::size_t k = 0; k < m; ++k) {
    h[k] = 1.0 / tail[k]->l;
    t0[k] = tail[k]->sigma;
  }
  for (std::size_t k = 1; k < m; ++k) {
    t1[k] = (h[k - 1] * t0[k] - h[k] * t0[k - 1]) / (h[k - 1] - h[k]);
  }
  for (std::size_t k = 2; k < m; ++k) {
    t2[k] = (h[k - 2] * t1[k] - h[k] * t1[k - 1]) / (h[k - 2] - h[k]);
  }
  const cplx limit = t2[m - 1];

  FluxEstimate est;
  est.flux_over_2pi_mod2 = reduce_mod2(std::arg(limit) / pi);
  for (std::size_t k = 2; k < m; ++k) {
    est.residual = std::max(est.residual, std::abs(std::arg(t2[k] / limit)) / pi);
  }
  for (const PhaseRecord* r : tail) est.l_used.push_back(r->l);
  return est;
}

nlohmann::json FluxEstimate::to_json() const {
  return {{"flux_over_2pi_mod2", flux_over_2pi_mod2},
          {"residual", residual},
          {"l_used", l_used},
          {"note", "defined modulo 2"}};
}

DiscriminatorReport discriminator_F(const EffectivePotential& qA, const EffectivePotential& qB,
                                    const std::vector<int>& l_list, const SolverOptions& opt,
                                    int threads) {
  require_same_flux(qA, qB);
  DiscriminatorReport rep;
  rep.rows.resize(l_list.size());
  parallel_for(l_list.size(), threads, [&](std::size_t k) {
    const int l = l_list[k];
    const cplx nu = l;
    const ExteriorCoefficients a = exterior_coefficients(qA, nu, opt);
    const ExteriorCoefficients b = exterior_coefficients(qB, nu, opt);
    DiscriminatorRow& row = rep.rows[k];
    row.l = l;
    // 2i (alpha beta~ - alpha~ beta) = B A~ - B~ A
    row.lhs = a.B * b.A - b.B * a.A;
    row.rhs = identity_integral(qA, qB, nu, opt);
    const double diff = std::abs(row.lhs - row.rhs);
    row.rel = std::abs(row.lhs) > 0.0 ? diff / std::abs(row.lhs) : diff;
    const cplx nu_R = nu - qA.flux();
    const double grow = std::abs(nu) * std::pow(qA.R() / qA.r0(), 2.0 * nu_R.real());
    row.envelope = grow > 0.0 ? std::abs(row.lhs) * std::pow(std::abs(nu_R) + 1.0, 2) / grow : 0.0;
  });
  for (const DiscriminatorRow& r : rep.rows) {
    rep.max_abs = std::max(rep.max_abs, std::abs(r.lhs));
    rep.max_rel = std::max(rep.max_rel, r.rel);
  }
  return rep;
}

nlohmann::json DiscriminatorReport::to_json() const {
  nlohmann::json rows_j = nlohmann::json::array();
  for (const DiscriminatorRow& r : rows) {
    rows_j.push_back({{"l", r.l},
                      {"F", {r.lhs.real(), r.lhs.imag()}},
                      {"rhs", {r.rhs.real(), r.rhs.imag()}},
                      {"rel", r.rel},
                      {"envelope", r.envelope}});
  }
  return {{"rows", rows_j}, {"max_abs", max_abs}, {"max_rel", max_rel}};
}

void DiscriminatorReport::write_csv(std::ostream& os) const {
  os << "l,re_F,im_F,rel_lhs_rhs\n";
  char buf[128];
  for (const DiscriminatorRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.6g\n", r.l, r.lhs.real(), r.lhs.imag(), r.rel);
    os << buf;
  }
}

std::vector<cplx> borg_marchenko_F(const EffectivePotential& qA, const EffectivePotential& qB,
                                   double r, const std::vector<cplx>& nu_list,
                                   const SolverOptions& opt, int threads) {
  const double R = std::max(qA.R(), qB.R());
  if (r < qA.r0() || r > R) throw DomainError("borg_marchenko_F: r outside [r0, R]");
  std::vector<cplx> out(nu_list.size());
  const bool same = std::abs(qA.flux() - qB.flux()) <= 1e-10;
  RadialGrid grid;
  grid.r = {r};
  parallel_for(nu_list.size(), threads, [&](std::size_t k) {
    const cplx nu = nu_list[k];
    if (same) {
      const ExteriorCoefficients a = exterior_coefficients_from(qA, nu, r, opt);
      const ExteriorCoefficients b = exterior_coefficients_from(qB, nu, r, opt);
      out[k] = 0.5 * kI * (a.B * b.A - a.A * b.B);
    } else {
      const cplx fp = jost_solve(qA, JostSign::plus, nu, grid, opt).values[0];
      const cplx fm = jost_solve(qA, JostSign::minus, nu, grid, opt).values[0];
      const cplx gp = jost_solve(qB, JostSign::plus, nu, grid, opt).values[0];
      const cplx gm = jost_solve(qB, JostSign::minus, nu, grid, opt).values[0];
      out[k] = fp * gm - fm * gp;
    }
  });
  return out;
}

BorgMarchenkoCheck borg_marchenko_reconstruction(const EffectivePotential& qA,
                                                 const EffectivePotential& qB, double r, double nu,
                                                 const RadialGrid& grid,
                                                 const SolverOptions& opt) {
  const auto it = std::find(grid.r.begin(), grid.r.end(), r);
  if (it == grid.r.end()) throw DomainError("borg_marchenko_reconstruction: r not a grid point");
  const std::size_t i = static_cast<std::size_t>(it - grid.r.begin());
  struct Side {
    cplx fp, fm, psi, sigma;
  };
  auto side = [&](const EffectivePotential& q) {
    const JostSolution p = jost_solve(q, JostSign::plus, nu, grid, opt);
    const JostSolution m = jost_solve(q, JostSign::minus, nu, grid, opt);
    const RegularSolution phi = regular_solve(q, nu, grid, opt);
    const cplx beta = -kI * p.values.front();
    return Side{p.values[i], m.values[i], phi.values[i] / beta, regge_sigma(q, nu, opt)};
  };
  const Side a = side(qA), b = side(qB);
  BorgMarchenkoCheck c;
  c.direct = a.fp * b.fm - a.fm * b.fp;
  const cplx e = std::exp(-kI * pi * (nu + 0.5));
  c.reconstructed = b.psi * a.fp - a.psi * b.fp + e * (a.sigma - b.sigma) * a.fp * b.fp;
  c.scale = std::max({std::abs(a.fp * b.fm), std::abs(a.fm * b.fp), std::abs(b.psi * a.fp),
                      std::abs(a.psi * b.fp), std::abs(a.fp * b.fp)});
  return c;
}

DecoupleReport decouple_potentials(const EffectivePotential& qA, const EffectivePotential& qB,
                                   const RadialGrid& grid, double nu1, double nu2, double tol) {
  if (std::abs(nu1 - nu2) < 1e-6) throw IllConditioned("decouple_potentials: |nu1 - nu2| < 1e-6");
  struct Parts {
    double g, V;  // gamma - gamma(R), V
  };
  auto split = [&](const EffectivePotential& q, double r) {
    const double q1 = q(nu1, r).real(), q2 = q(nu2, r).real();
    const double w = (q1 - q2) / (nu1 - nu2);
    const double q0 = q1 - nu1 * w;
    const double g = -0.5 * r * r * w;
    const double gR = q.flux();
    return Parts{g, q0 - ((g + gR) * (g + gR) - gR * gR) / (r * r)};
  };
  DecoupleReport rep;
  for (double r : grid.r) {
    const Parts a = split(qA, r), b = split(qB, r);
    rep.max_dev_gamma = std::max(rep.max_dev_gamma, std::abs(a.g - b.g));
    rep.max_dev_V = std::max(rep.max_dev_V, std::abs(a.V - b.V));
  }
  rep.max_dev = std::max(rep.max_dev_gamma, rep.max_dev_V);
  rep.gamma_match = rep.max_dev_gamma <= tol;
  rep.V_match = rep.max_dev_V <= tol;
  return rep;
}

}  // namespace regge
