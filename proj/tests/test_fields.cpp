#include <cmath>
#include <random>

#include "doctest.h"
#include "regge/errors.hpp"
#include "regge/fields.hpp"

using namespace regge;

namespace {

Medium make(RadialProfile V, RadialProfile b, double r0 = 0.5, double R = 2.0) {
  Medium m;
  m.V = std::move(V);
  m.b = std::move(b);
  m.r0 = r0;
  m.R = R;
  return m;
}

// independent 10^6-point composite trapezoid for int_0^R tau b(tau) dtau
double trapezoid_gamma(const RadialProfile& b, double R) {
  const int n = 1000000;
  const double h = R / n;
  double s = 0.5 * (0.0 + R * b(R));
  for (int i = 1; i < n; ++i) {
    const double t = i * h;
    s += t * b(t);
  }
  return s * h;
}

}  // namespace

TEST_CASE("profiles") {
  const auto bump = RadialProfile::bump(0.5, 1.5, 2.0);
  CHECK(bump(1.0) == doctest::Approx(2.0));
  CHECK(bump(0.5) == 0.0);
  CHECK(bump(1.6) == 0.0);
  CHECK(bump.smoothness() == Smoothness::smooth);
  const auto step = RadialProfile::step(0.5, 2.0, 0.3);
  CHECK(step(1.0) == 0.3);
  CHECK(step(0.4) == 0.0);
  const auto sp = RadialProfile::spline(0.5, 2.0, {0.0, 1.0, 0.5, 0.0});
  CHECK(sp(1.0) == doctest::Approx(1.0));
  CHECK(sp(1.5) == doctest::Approx(0.5));
  CHECK(sp(2.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(RadialProfile::step(1.0, 0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(RadialProfile(ProfileKind::bump, {}, 0.0, 1.0), ConfigError);
}

TEST_CASE("build_gauge: closed forms and oracle") {
  const GaugeData g0 = build_gauge(make({}, {}));
  CHECK(g0(1.0) == 0.0);
  CHECK(g0.flux_over_2pi() == 0.0);

  const double h = 0.8, rho = 1.2;
  const GaugeData gs = build_gauge(make({}, RadialProfile::step(0.0, rho, h)));
  for (double r : {0.1, 0.5, 1.0, 1.2, 1.7, 2.0, 3.0}) {
    CHECK(std::abs(gs(r) - h * std::min(r, rho) * std::min(r, rho) / 2.0) < 1e-12);
  }
  CHECK(std::abs(gs.flux_over_2pi() - h * rho * rho / 2.0) < 1e-12);

  const auto bump = RadialProfile::bump(0.5, 1.5, 1.0);
  const GaugeData gb = build_gauge(make({}, bump));
  CHECK(std::abs(gb(2.0) - trapezoid_gamma(bump, 2.0)) < 1e-9);
  CHECK(gb(0.0) == 0.0);

  // gauge consistency: gamma' = r b(r)
  for (double r : {0.6, 0.8, 1.0, 1.27, 1.45}) {
    const double d = 1e-6;
    const double fd = (gb(r + d) - gb(r - d)) / (2.0 * d);
    CHECK(std::abs(fd - r * bump(r)) < 1e-5);
  }
  // monotone for b >= 0
  double prev = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double v = gb(2.0 * i / 400.0);
    CHECK(v >= prev - 1e-13);
    prev = v;
  }
  CHECK_THROWS_AS(build_gauge(make({}, bump), 32), ConfigError);
  CHECK_THROWS_AS(build_gauge(make({}, RadialProfile::bump(1.0, 3.0, 1.0))), ConfigError);
}

TEST_CASE("effective potential") {
  const Medium m = make(RadialProfile::step(0.5, 2.0, 0.3), RadialProfile::bump(0.5, 1.5, 1.0));
  const EffectivePotential q(m);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-40.0, 40.0), Rr(0.5, 2.0);
  for (int i = 0; i < 100; ++i) {
    const cplx nu(U(rng), U(rng));
    CHECK(q(nu, 2.0) == 0.0);
    CHECK(q(nu, 2.0 + std::abs(U(rng))) == 0.0);
  }
  for (int i = 0; i < 50; ++i) {
    const cplx nu(U(rng), U(rng)), mu(U(rng), U(rng));
    const double r = Rr(rng);
    const double gr = q.gauge()(r), gR = q.flux();
    const cplx lhs = q(nu, r) - q(mu, r);
    const cplx rhs = -2.0 * (nu - mu) * (gr - gR) / (r * r);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
    const cplx direct = -2.0 * nu * (gr - gR) / (r * r) + (gr * gr - gR * gR) / (r * r) + m.V(r);
    CHECK(std::abs(q(nu, r) - direct) <= 1e-13 * std::max(1.0, std::abs(direct)));
  }

  const EffectivePotential zero(make({}, {}));
  CHECK(zero(cplx(3.0, 1.0), 1.0) == 0.0);
  CHECK(zero.trivial());

  // Aharonov-Bohm: field inside the obstacle
  const EffectivePotential ab(make({}, RadialProfile::bump(0.05, 0.45, 5.0)));
  CHECK(ab.flux() != 0.0);
  CHECK(ab.trivial());
  for (double r : {0.5, 0.7, 1.3, 1.99}) CHECK(ab(cplx(4.0, 2.0), r) == 0.0);
}

TEST_CASE("flux invariance inside the obstacle") {
  const auto b1 = RadialProfile::bump(0.05, 0.45, 1.0);
  const auto b2 = RadialProfile::bump(0.1, 0.3, 1.0);
  const double f1 = flux_of(b1, 2.0), f2 = flux_of(b2, 2.0);
  const EffectivePotential q1(make({}, b1));
  const EffectivePotential q2(make({}, b2.scaled(f1 / f2)));
  CHECK(std::abs(q1.flux() - q2.flux()) < 1e-13);
  for (double r : {0.5, 0.9, 1.5}) CHECK(q1(cplx(2.0, 1.0), r) == q2(cplx(2.0, 1.0), r));
}

TEST_CASE("validate_class_C and JSON") {
  CHECK(validate_class_C(make({}, {})).pass);
  CHECK(validate_class_C(make(RadialProfile::step(0.5, 2.0, 0.3), {})).pass);
  const auto rep = validate_class_C(make({}, RadialProfile::step(0.5, 1.0, 1.0)));
  CHECK_FALSE(rep.pass);
  CHECK(rep.reasons.size() == 1);

  const auto j = nlohmann::json::parse(R"({
    "r0": 0.5, "R": 2.0,
    "V": {"kind": "step", "params": [0.3], "support": [0.5, 2.0]},
    "B": {"kind": "bump", "params": [1.0], "support": [0.5, 1.5], "flux_over_2pi": 0.3}})");
  const Medium m = medium_from_json(j);
  CHECK(std::abs(build_gauge(m).flux_over_2pi() - 0.3) < 1e-12);
  CHECK(medium_from_json(m.to_json()).b.params()[0] == m.b.params()[0]);
  CHECK_THROWS_AS(medium_from_json(nlohmann::json::parse(R"({"r0": 0.5})")), ConfigError);
  CHECK_THROWS_AS(medium_from_json(nlohmann::json::parse(R"({"r0": 0.5, "R": 2, "V": {"kind": "wave"}})")),
                  ConfigError);
  CHECK_THROWS_AS(load_medium("/nonexistent/medium.json"), ConfigError);
  CHECK(build_gauge(m.mirrored()).flux_over_2pi() == doctest::Approx(-0.3));
}
