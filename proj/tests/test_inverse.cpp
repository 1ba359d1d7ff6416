#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "regge/errors.hpp"
#include "regge/inverse.hpp"

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

RadialProfile with_flux(RadialProfile b, double flux, double R = 2.0) {
  if (flux == 0.0) return {};
  return b.scaled(flux / flux_of(b, R));
}

Medium bump_step(double flux, double V0 = 0.3) {
  return medium(RadialProfile::step(0.5, 2.0, V0),
                with_flux(RadialProfile::bump(0.5, 1.5, 1.0), flux));
}

}  // namespace

TEST_CASE("flux recovery") {
  SUBCASE("zero medium") {
    const EffectivePotential q(medium({}, {}));
    const auto est = recover_flux(phase_shifts(q, 0, 40));
    CHECK(std::abs(est.flux_over_2pi_mod2) < 1e-6);
    CHECK(est.residual >= 0.0);
  }
  SUBCASE("bump field and step") {
    for (double f : {-0.7, -0.3, 0.3, 0.7}) {
      const EffectivePotential q(bump_step(f));
      const auto est = recover_flux(phase_shifts(q, 0, 40, {}, 4));
      CAPTURE(f);
      CHECK(std::abs(est.flux_over_2pi_mod2 - f) < 1e-3);
      CHECK(est.l_used.back() == 40);
    }
  }
  SUBCASE("pure Aharonov-Bohm") {
    const EffectivePotential q(medium({}, with_flux(RadialProfile::bump(0.1, 0.4, 1.0), 0.5)));
    const auto est = recover_flux(phase_shifts(q, 0, 40, {}, 4));
    CHECK(std::abs(est.flux_over_2pi_mod2 - 0.5) < 1e-3);
  }
  SUBCASE("modulo 2") {
    const EffectivePotential q(medium({}, with_flux(RadialProfile::bump(0.1, 0.4, 1.0), 2.25)));
    CHECK(std::abs(recover_flux(phase_shifts(q, 20, 40)).flux_over_2pi_mod2 - 0.25) < 1e-3);
  }
  const EffectivePotential q(medium({}, {}));
  CHECK_THROWS_AS(recover_flux(phase_shifts(q, 0, 28)), InsufficientTail);
}

TEST_CASE("discriminator identity") {
  const std::vector<int> ls{1, 5, 10, 20};
  SUBCASE("step heights 0.3 and 0.5") {
    const EffectivePotential a(medium(RadialProfile::step(0.5, 2.0, 0.3), {}));
    const EffectivePotential b(medium(RadialProfile::step(0.5, 2.0, 0.5), {}));
    const auto rep = discriminator_F(a, b, ls);
    for (const auto& row : rep.rows) {
      CAPTURE(row.l);
      CHECK(row.rel < 1e-6);
      CHECK(std::abs(row.lhs) > 0.0);
    }
    std::ostringstream os;
    rep.write_csv(os);
    CHECK(os.str().rfind("l,re_F,im_F,rel_lhs_rhs\n", 0) == 0);
    CHECK(rep.to_json()["rows"].size() == 4);
  }
  SUBCASE("different fields, same flux") {
    Medium mb = bump_step(0.3, 0.4);
    mb.b = with_flux(RadialProfile::bump(0.6, 1.8, 1.0), 0.3);
    const EffectivePotential a(bump_step(0.3));
    const EffectivePotential b(mb);
    const auto rep = discriminator_F(a, b, ls);
    for (const auto& row : rep.rows) CHECK(row.rel < 1e-6);
  }
  SUBCASE("identical media") {
    const EffectivePotential a(bump_step(0.3));
    const auto rep = discriminator_F(a, a, ls);
    CHECK(rep.max_abs <= 1e-7);
  }
  SUBCASE("growth envelope") {
    const EffectivePotential a(medium(RadialProfile::step(0.5, 2.0, 0.3), {}));
    const EffectivePotential b(medium(RadialProfile::step(0.5, 2.0, 0.5), {}));
    std::vector<int> all;
    for (int l = 1; l <= 40; ++l) all.push_back(l);
    const auto rep = discriminator_F(a, b, all, {}, 4);
    double hi = 0.0;
    for (const auto& row : rep.rows) hi = std::max(hi, row.envelope);
    CHECK(std::isfinite(hi));
    // stable: the tail does not increase the constant
    double tail = 0.0;
    for (const auto& row : rep.rows) {
      if (row.l > 20) tail = std::max(tail, row.envelope);
    }
    CHECK(tail <= hi);
  }
  const EffectivePotential a(bump_step(0.3)), b(bump_step(0.4));
  CHECK_THROWS_AS(discriminator_F(a, b, ls), FluxMismatch);
}

TEST_CASE("zero discriminator implies matching phase shifts") {
  // same flux, different b hidden inside the obstacle: identical exterior data
  const RadialProfile V = RadialProfile::step(0.5, 2.0, 0.3);
  const EffectivePotential a(medium(V, with_flux(RadialProfile::bump(0.1, 0.4, 1.0), 0.3)));
  const EffectivePotential b(medium(V, with_flux(RadialProfile::bump(0.2, 0.45, 1.0), 0.3)));
  std::vector<int> ls;
  for (int l = 1; l <= 40; ++l) ls.push_back(l);
  const auto rep = discriminator_F(a, b, ls, {}, 4);
  REQUIRE(rep.max_abs <= 1e-7);
  const auto pa = phase_shifts(a, 0, 40, {}, 4), pb = phase_shifts(b, 0, 40, {}, 4);
  for (std::size_t k = 0; k < pa.records.size(); ++k) {
    CHECK(std::abs(pa.records[k].delta - pb.records[k].delta) < 1e-6);
  }
}

TEST_CASE("Borg-Marchenko function") {
  const EffectivePotential a(bump_step(0.3));
  const EffectivePotential b(medium(RadialProfile::step(0.5, 2.0, 0.5),
                                    with_flux(RadialProfile::bump(0.5, 1.5, 1.0), 0.3)));
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> re(-15.0, 15.0), im(-8.0, 8.0);
  std::vector<cplx> nus;
  for (int k = 0; k < 50; ++k) nus.emplace_back(re(gen), im(gen));
  for (const cplx& f : borg_marchenko_F(a, a, 0.9, nus)) CHECK(std::abs(f) <= 1e-8);

  // at r0 it is (i/2) times the discriminator
  const std::vector<int> ls{1, 5, 10};
  const auto rep = discriminator_F(a, b, ls);
  const auto bm = borg_marchenko_F(a, b, 0.5, {1.0, 5.0, 10.0});
  double witness = 0.0;
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(bm[k] - 0.5 * I * rep.rows[k].lhs) < 1e-8 * std::abs(bm[k]));
    witness = std::max(witness, std::abs(bm[k]));
  }
  CHECK(witness >= 1e-3);
  // vanishes at R where both are free
  CHECK(std::abs(borg_marchenko_F(a, b, 2.0, {3.0})[0]) < 1e-12);

  // against the products of Jost solutions
  const auto grid = RadialGrid::hybrid(0.5, 2.0, 64);
  for (double nu : {1.0, 2.5, 6.0}) {
    for (std::size_t i : {std::size_t{0}, std::size_t{20}, std::size_t{50}}) {
      const double r = grid.r[i];
      const auto chk = borg_marchenko_reconstruction(a, b, r, nu, grid);
      CHECK(std::abs(chk.direct - chk.reconstructed) <= 1e-8 * chk.scale);
      const cplx f = borg_marchenko_F(a, b, r, {nu})[0];
      CHECK(std::abs(f - chk.direct) <= 1e-8 * chk.scale);
    }
  }
  // different fluxes take the direct route
  const EffectivePotential c(bump_step(0.2));
  const auto chk = borg_marchenko_reconstruction(a, c, grid.r[10], 3.0, grid);
  CHECK(std::abs(borg_marchenko_F(a, c, grid.r[10], {3.0})[0] - chk.direct) <= 1e-8 * chk.scale);
  CHECK_THROWS_AS(borg_marchenko_F(a, b, 0.4, {1.0}), DomainError);
}

TEST_CASE("decoupling") {
  const auto grid = RadialGrid::hybrid(0.5, 2.0, 128);
  const EffectivePotential a(bump_step(0.3));
  const auto same = decouple_potentials(a, a, grid, 1.0, 3.0);
  CHECK(same.gamma_match);
  CHECK(same.V_match);
  CHECK(same.max_dev <= 1e-12);

  const EffectivePotential v(bump_step(0.3, 0.5));
  const auto dv = decouple_potentials(a, v, grid, 1.0, 3.0);
  CHECK(dv.gamma_match);
  CHECK_FALSE(dv.V_match);
  CHECK(dv.max_dev_V == doctest::Approx(0.2));

  Medium mb = bump_step(0.3);
  mb.b = with_flux(RadialProfile::bump(0.6, 1.8, 1.0), 0.3);
  const auto db = decouple_potentials(a, EffectivePotential(mb), grid, 1.0, 3.0);
  CHECK_FALSE(db.gamma_match);
  CHECK(db.V_match);

  CHECK_THROWS_AS(decouple_potentials(a, a, grid, 1.0, 1.0 + 1e-7), IllConditioned);
}
