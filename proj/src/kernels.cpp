#include "regge/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "regge/errors.hpp"
#include "regge/parallel.hpp"
#include "regge/radial.hpp"
#include "regge/specfun.hpp"

namespace regge {

namespace {

using std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

struct Free {
  cplx u, v, h2;
};

Free free_at(cplx c, double r) {
  const specfun::BesselValue b = specfun::bessel_h(c, r);
  const double f = std::sqrt(0.5 * pi * r);
  return {f * b.J, -kI * f * b.H1, f * b.H2};
}

cplx n_from(const Free& a, const Free& b) {
  const double kappa_u = std::max(std::abs(a.u * b.v), std::abs(b.u * a.v));
  const double kappa_h = std::max(std::abs(a.h2 * b.v), std::abs(b.h2 * a.v));
  if (kappa_h < kappa_u) return 0.5 * (a.h2 * b.v - b.h2 * a.v);
  return a.u * b.v - b.u * a.v;
}

// (r/s)^{nu_R}
cplx power_ratio(double r, double s, cplx nu_R) {
  return std::exp(nu_R * (std::log(r) - std::log(s)));
}

void require_right_half(cplx nu_R) {
  if (nu_R.real() < 0.0) throw DomainError("kernels: Re(nu_R) < 0");
}

}  // namespace

cplx kernel_N(const KernelPoint& p, double flux) {
  if (p.r == p.s) return 0.0;
  const cplx c = canonical_order(p.nu - flux);
  return n_from(free_at(c, p.r), free_at(c, p.s));
}

cplx kernel_M(const KernelPoint& p, double flux) {
  if (p.r == p.s) return 0.0;
  const cplx nu_R = p.nu - flux;
  require_right_half(nu_R);
  return power_ratio(p.r, p.s, nu_R) * kernel_N(p, flux);
}

cplx kernel_K(const KernelPoint& p, double flux) {
  if (p.r == p.s) return 0.0;
  const cplx c = canonical_order(p.nu - flux);
  const Free a = free_at(c, p.r), b = free_at(c, p.s);
  // F0+ = e^{i theta} i v; the phase cancels in the ratio
  if (std::abs(a.v) < 1e-300) throw DivisionByNearZero("kernel_K: F0+(r) vanishes");
  return b.v / a.v * n_from(a, b);
}

cplx free_regular_hankel(double r, double r0, cplx nu, double flux) {
  const cplx c = canonical_order(nu - flux);
  const specfun::BesselValue a = specfun::bessel_h(c, r);
  const specfun::BesselValue b = specfun::bessel_h(c, r0);
  return kI * (0.5 * pi * std::sqrt(r * r0)) * (b.H2 * a.H1 - b.H1 * a.H2);
}

std::vector<cplx> default_kernel_samples() {
  std::vector<cplx> out;
  for (int k = 1; k <= 40; ++k) out.emplace_back(k, 0.0);
  for (int k = 5; k <= 40; k += 5) out.emplace_back(0.0, k);
  for (int k = 5; k <= 40; k += 5) {
    out.push_back(std::polar(static_cast<double>(k), 0.25 * pi));
    out.push_back(std::polar(static_cast<double>(k), -0.25 * pi));
  }
  return out;
}

namespace {

struct Sup {
  double value = 0.0;
  double r = 0.0, s = 0.0;
};

Sup sup_on_grid(const KernelBox& box, int n, cplx nu_R, KernelWeight weight) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = box.r0 + (box.R - box.r0) * i / (n - 1);
  x.back() = box.R;
  const cplx c = canonical_order(nu_R);
  std::vector<Free> f(n);
  for (int i = 0; i < n; ++i) f[i] = free_at(c, x[i]);
  const double scale = std::abs(nu_R) + 1.0;
  Sup best;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const cplx N = n_from(f[i], f[j]);
      double w = std::abs(N) * scale;
      if (weight == KernelWeight::N) {
        w *= std::exp(nu_R.real() * (std::log(x[i]) - std::log(x[j])));
      } else {
        w *= std::abs(power_ratio(x[i], x[j], nu_R));
      }
      if (!std::isfinite(w)) return {w, x[i], x[j]};
      if (w > best.value) best = {w, x[i], x[j]};
    }
  }
  return best;
}

}  // namespace

KernelBoundReport verify_kernel_bounds(const KernelBox& box, const std::vector<cplx>& nu_samples,
                                       double flux, KernelWeight weight, int threads) {
  if (box.n < 3 || !(box.R > box.r0) || box.r0 <= 0.0) throw ConfigError("kernel box: bad grid");
  std::vector<cplx> nu_R_samples;
  for (const cplx& nu : nu_samples) nu_R_samples.push_back(nu - flux);
  for (const cplx& z : nu_R_samples) require_right_half(z);
  const std::size_t m = nu_R_samples.size();
  std::vector<Sup> coarse(m), fine(m);
  parallel_for(m, threads, [&](std::size_t k) {
    coarse[k] = sup_on_grid(box, box.n, nu_R_samples[k], weight);
    fine[k] = sup_on_grid(box, 2 * box.n - 1, nu_R_samples[k], weight);
  });

  KernelBoundReport rep;
  rep.weight = weight;
  rep.box = box;
  rep.nu_R = nu_R_samples;
  bool finite = true;
  for (std::size_t k = 0; k < m; ++k) {
    rep.per_sample.push_back(fine[k].value);
    finite = finite && std::isfinite(coarse[k].value) && std::isfinite(fine[k].value);
    rep.c_emp = std::max(rep.c_emp, coarse[k].value);
    if (k == 0 || fine[k].value > rep.c_emp_refined) {
      rep.c_emp_refined = fine[k].value;
      rep.max_r = fine[k].r;
      rep.max_s = fine[k].s;
      rep.max_nu_R = nu_R_samples[k];
    }
  }
  const double lo = std::min(rep.c_emp, rep.c_emp_refined);
  const double hi = std::max(rep.c_emp, rep.c_emp_refined);
  rep.drift = lo > 0.0 ? hi / lo : (hi == 0.0 ? 1.0 : INFINITY);
  rep.pass = finite && m > 0 && rep.drift < 2.0;
  return rep;
}

nlohmann::json KernelBoundReport::to_json() const {
  nlohmann::json j;
  j["weight"] = weight == KernelWeight::N ? "N" : "M";
  j["grid"] = {{"r0", box.r0}, {"R", box.R}, {"n", box.n}, {"n_refined", 2 * box.n - 1}};
  j["C_emp"] = c_emp;
  j["C_emp_refined"] = c_emp_refined;
  j["drift"] = drift;
  j["max_location"] = {{"r", max_r}, {"s", max_s}, {"nu_R", {max_nu_R.real(), max_nu_R.imag()}}};
  nlohmann::json samples = nlohmann::json::array();
  for (std::size_t k = 0; k < nu_R.size(); ++k) {
    samples.push_back({{"nu_R", {nu_R[k].real(), nu_R[k].imag()}}, {"sup", per_sample[k]}});
  }
  j["samples"] = samples;
  j["pass"] = pass;
  return j;
}

}  // namespace regge
