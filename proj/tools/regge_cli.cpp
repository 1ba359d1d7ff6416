// regge: command-line driver. Exit codes: 0 ok, 1 verify failure,
// 2 configuration error, 3 solver error, 4 flux mismatch.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "regge/errors.hpp"
#include "regge/inverse.hpp"
#include "regge/scattering.hpp"
#include "regge/specfun.hpp"
#include "regge/verify.hpp"

using namespace regge;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kFluxMatchTol = 1e-6;  // between recovered flux estimates

struct Options {
  std::string medium, medium_b, out, format = "csv", scan, nu = "1", r = "1";
  int lmax = 40;
  int grid = 1024;
  int threads = 0;
  double tolerance = 0.0;
  bool tolerance_set = false;
};

Medium read_medium(const std::string& path) {
  if (path.empty()) throw ConfigError("--medium is required");
  Medium m = load_medium(path);
  const ValidationReport v = validate_class_C(m);
  if (!v.pass) {
    std::string why;
    for (const auto& s : v.reasons) why += "; " + s;
    throw ConfigError("medium '" + path + "' is not admissible" + why);
  }
  return m;
}

void check_invariants(const Options& o, const EffectivePotential& q) {
  if (o.grid < 256) throw ConfigError("--grid must be at least 256");
  if (o.lmax < 0) throw ConfigError("--lmax must be nonnegative");
  if (o.lmax > specfun::kNuMax - std::abs(q.flux())) {
    throw ConfigError("--lmax exceeds " + std::to_string(specfun::kNuMax) + " - |flux|");
  }
  if (o.format != "csv" && o.format != "json") throw ConfigError("--format must be csv or json");
}

// writes to --out, or stdout when absent
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + o.out + "'");
  f << text;
}

std::string dump(json j, const char* command) {
  json head = {{"schema_version", kSchemaVersion}, {"command", command}};
  head.update(j);
  return head.dump(2) + "\n";
}

json cplx_json(cplx z) { return {z.real(), z.imag()}; }

// "re0:re1:n,im0:im1:m"
std::vector<cplx> parse_scan(const std::string& s) {
  double a0, a1, b0, b1;
  int n, m;
  char tail;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d,%lf:%lf:%d%c", &a0, &a1, &n, &b0, &b1, &m, &tail) != 6 || n < 1 ||
      m < 1) {
    throw ConfigError("--scan expects re0:re1:n,im0:im1:m, got '" + s + "'");
  }
  auto at = [](double lo, double hi, int k, int cnt) { return cnt == 1 ? lo : lo + (hi - lo) * k / (cnt - 1); };
  std::vector<cplx> out;
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < n; ++k) out.emplace_back(at(a0, a1, k, n), at(b0, b1, j, m));
  }
  return out;
}

cplx parse_complex(const std::string& s) {
  double re = 0.0, im = 0.0;
  char tail;
  const int got = std::sscanf(s.c_str(), "%lf,%lf%c", &re, &im, &tail);
  if (got != 1 && got != 2) throw ConfigError("expected 're' or 're,im', got '" + s + "'");
  return {re, im};
}

int cmd_direct(const Options& o) {
  const EffectivePotential q(read_medium(o.medium));
  check_invariants(o, q);
  const ScatteringData data = phase_shifts(q, -o.lmax, o.lmax, {}, o.threads);
  constexpr double pi = std::numbers::pi;
  const cplx lim_plus = std::exp(cplx(0.0, pi * q.flux())), lim_minus = std::conj(lim_plus);
  std::fprintf(stderr, "flux_over_2pi = %.12g\n", q.flux());
  if (o.lmax > 0) {
    const cplx sp = data.at(o.lmax).sigma, sm = data.at(-o.lmax).sigma;
    std::fprintf(stderr, "sigma(%d) = %.12g%+.12gi  (limit e^{+i pi gamma(R)} = %.12g%+.12gi)\n", o.lmax,
                 sp.real(), sp.imag(), lim_plus.real(), lim_plus.imag());
    std::fprintf(stderr, "sigma(%d) = %.12g%+.12gi  (limit e^{-i pi gamma(R)} = %.12g%+.12gi)\n", -o.lmax,
                 sm.real(), sm.imag(), lim_minus.real(), lim_minus.imag());
  }
  if (o.format == "json") {
    json j = data.to_json();
    j["tail_limits"] = {{"plus", cplx_json(lim_plus)}, {"minus", cplx_json(lim_minus)}};
    emit(o, dump(j, "direct"));
  } else {
    std::ostringstream os;
    data.write_csv(os);
    emit(o, os.str());
  }
  return 0;
}

int cmd_cam_scan(const Options& o) {
  const EffectivePotential q(read_medium(o.medium));
  check_invariants(o, q);
  if (o.scan.empty()) throw ConfigError("--scan is required");
  const CamScan scan = cam_scan(q, parse_scan(o.scan), {}, o.threads);
  if (o.format == "json") {
    emit(o, dump(scan.to_json(), "cam-scan"));
  } else {
    std::ostringstream os;
    os << "re_nu,im_nu,re_sigma,im_sigma\n";
    char buf[160];
    for (const CamPoint& p : scan.points) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", p.nu.real(), p.nu.imag(), p.sigma.real(),
                    p.sigma.imag());
      os << buf;
    }
    emit(o, os.str());
  }
  if (!scan.excluded.empty()) std::fprintf(stderr, "%zu points excluded\n", scan.excluded.size());
  return 0;
}

FluxEstimate estimate_flux(const EffectivePotential& q, const Options& o) {
  if (o.lmax < 29) throw ConfigError("flux recovery needs --lmax >= 29");
  return recover_flux(phase_shifts(q, 0, o.lmax, {}, o.threads));
}

int cmd_flux(const Options& o) {
  const EffectivePotential q(read_medium(o.medium));
  check_invariants(o, q);
  const FluxEstimate est = estimate_flux(q, o);
  if (o.format == "json") {
    emit(o, dump(est.to_json(), "flux"));
  } else {
    char buf[128];
    std::snprintf(buf, sizeof buf, "flux_over_2pi_mod2,residual\n%.17g,%.17g\n", est.flux_over_2pi_mod2,
                  est.residual);
    emit(o, buf);
  }
  return 0;
}

int cmd_discriminate(const Options& o) {
  if (o.medium_b.empty()) throw ConfigError("--medium-b is required");
  const EffectivePotential a(read_medium(o.medium)), b(read_medium(o.medium_b));
  check_invariants(o, a);
  check_invariants(o, b);
  // flux first: it is what the scattering data determine before anything else
  const FluxEstimate fa = estimate_flux(a, o), fb = estimate_flux(b, o);
  const bool flux_differs = std::abs(fa.flux_over_2pi_mod2 - fb.flux_over_2pi_mod2) > kFluxMatchTol ||
                            std::abs(a.flux() - b.flux()) > 1e-10;
  if (flux_differs) {
    std::fprintf(stderr, "flux mismatch: A %.12g (mod 2), B %.12g (mod 2); media flux %.12g vs %.12g\n",
                 fa.flux_over_2pi_mod2, fb.flux_over_2pi_mod2, a.flux(), b.flux());
    if (o.format == "json") {
      emit(o, dump({{"verdict", "flux_mismatch"}, {"flux_a", fa.to_json()}, {"flux_b", fb.to_json()}},
                   "discriminate"));
    }
    return 4;
  }
  std::vector<int> ls;
  for (int l = 1; l <= o.lmax; ++l) ls.push_back(l);
  const DiscriminatorReport rep = discriminator_F(a, b, ls, {}, o.threads);
  const char* verdict = rep.max_abs <= 1e-7 ? "identical" : "distinct";
  std::fprintf(stderr, "flux_over_2pi %.12g (mod 2); max |F| = %.6g; verdict: %s\n", fa.flux_over_2pi_mod2,
               rep.max_abs, verdict);
  if (o.format == "json") {
    json j = rep.to_json();
    j["verdict"] = verdict;
    j["flux"] = fa.to_json();
    emit(o, dump(j, "discriminate"));
  } else {
    std::ostringstream os;
    rep.write_csv(os);
    emit(o, os.str());
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const Medium m = o.medium.empty() ? Medium{} : read_medium(o.medium);
  const EffectivePotential q(m);
  check_invariants(o, q);
  VerifyConfig cfg;
  cfg.grid_n = o.grid;
  cfg.l_max = o.lmax;
  cfg.threads = o.threads;
  if (o.tolerance_set) cfg.tolerance = o.tolerance;
  const VerifyReport rep = run_verify(q, cfg);
  for (const CheckResult& c : rep.groups) {
    std::fprintf(stderr, "%-14s %s  measured %.3e  tolerance %.3e\n", c.group.c_str(), c.pass ? "pass" : "FAIL",
                 c.measured, c.tolerance);
  }
  if (o.format == "json") {
    emit(o, dump(rep.to_json(), "verify"));
  } else {
    std::ostringstream os;
    os << "group,pass,measured,tolerance\n";
    char buf[160];
    for (const CheckResult& c : rep.groups) {
      std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g\n", c.group.c_str(), c.pass ? 1 : 0, c.measured,
                    c.tolerance);
      os << buf;
    }
    emit(o, os.str());
  }
  return rep.pass ? 0 : 1;
}

int cmd_bessel(const Options& o) {
  const cplx nu = parse_complex(o.nu);
  const cplx rr = parse_complex(o.r);
  if (rr.imag() != 0.0 || !(rr.real() > 0.0)) throw ConfigError("--r must be a positive real number");
  const double r = rr.real();
  const specfun::BesselValue b = specfun::bessel_h(nu, r);
  if (o.format == "json") {
    emit(o, dump({{"nu", cplx_json(nu)},
                  {"r", r},
                  {"J", cplx_json(b.J)},
                  {"Y", cplx_json(b.Y)},
                  {"H1", cplx_json(b.H1)},
                  {"H2", cplx_json(b.H2)},
                  {"dJ", cplx_json(b.dJ)},
                  {"dY", cplx_json(b.dY)},
                  {"dH1", cplx_json(b.dH1)},
                  {"dH2", cplx_json(b.dH2)}},
                 "bessel"));
  } else {
    std::ostringstream os;
    os << "name,re,im\n";
    char buf[128];
    for (auto [name, v] : {std::pair{"J", b.J}, {"Y", b.Y}, {"H1", b.H1}, {"H2", b.H2}, {"dJ", b.dJ},
                           {"dY", b.dY}, {"dH1", b.dH1}, {"dH2", b.dH2}}) {
      std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g\n", name, v.real(), v.imag());
      os << buf;
    }
    emit(o, os.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regge interpolation and inverse scattering for radial magnetic media (energy fixed at 1)"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool need_medium) {
    auto* m = sub->add_option("--medium", o.medium, "medium JSON file");
    if (need_medium) m->required();
    sub->add_option("--lmax", o.lmax, "largest |l|")->capture_default_str();
    sub->add_option("--grid", o.grid, "radial grid size (>= 256)")->capture_default_str();
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "csv or json")->capture_default_str();
    sub->add_option("--threads", o.threads, "worker threads (0: all cores)")->capture_default_str();
  };

  auto* direct = app.add_subcommand("direct", "phase-shift table for l in [-lmax, lmax]");
  common(direct, true);
  auto* cam = app.add_subcommand("cam-scan", "sigma over a rectangular grid of complex orders");
  common(cam, true);
  cam->add_option("--scan", o.scan, "re0:re1:n,im0:im1:m")->required();
  auto* flux = app.add_subcommand("flux", "recover the flux (mod 2) from the phase-shift tail");
  common(flux, true);
  auto* disc = app.add_subcommand("discriminate", "compare two media: flux first, then F(l), l = 1..lmax");
  common(disc, true);
  disc->add_option("--medium-b", o.medium_b, "second medium JSON file")->required();
  auto* verify = app.add_subcommand("verify", "run the invariant suites (zero medium by default)");
  common(verify, false);
  verify->add_option("--tolerance", o.tolerance, "replace every group tolerance")
      ->each([&](const std::string&) { o.tolerance_set = true; });
  auto* bessel = app.add_subcommand("bessel", "J, Y, H1, H2 and derivatives of complex order");
  bessel->add_option("--nu", o.nu, "order, 're' or 're,im'")->capture_default_str();
  bessel->add_option("--r", o.r, "positive real argument")->capture_default_str();
  bessel->add_option("--out", o.out, "output file (default stdout)");
  bessel->add_option("--format", o.format, "csv or json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (o.format != "csv" && o.format != "json") throw ConfigError("--format must be csv or json");
    if (*direct) return cmd_direct(o);
    if (*cam) return cmd_cam_scan(o);
    if (*flux) return cmd_flux(o);
    if (*disc) return cmd_discriminate(o);
    if (*verify) return cmd_verify(o);
    if (*bessel) return cmd_bessel(o);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const FluxMismatch& e) {
    std::fprintf(stderr, "flux mismatch: %s\n", e.what());
    return 4;
  } catch (const Error& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
