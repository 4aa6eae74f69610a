// Reaction network oracles: exchange-film coefficients, Contois kinetics
// against independently computed rates, exact exponential limits for decay
// and maintenance, Henry equilibrium through both the resolved and the
// reduced (fast-exchange) integration paths, Langmuir-type attachment
// blocking, and the embedded RKF45 pair on problems with closed forms.

#include <doctest.h>

#include <cmath>

#include "fringe/reaction.hpp"
#include "fringe/units.hpp"

using namespace fringe;
using namespace fringe::reaction;

namespace {

ExchangeParams chamber_exchange(double D = 2.2e-9) {
  ExchangeParams ex;
  ex.D_l_O2 = D;
  ex.r_p = 0.9e-3;
  ex.kappa_exposed = 1.0;
  ex.k_H = 3.28e-2;
  ex.phi = 0.39;
  return ex;
}

}  // namespace

TEST_SUITE("reaction") {

// ------------------------------------------------------------ rate formulas

TEST_CASE("gas-water interfacial area") {
  const auto ex = chamber_exchange();
  CHECK(interfacial_area(1.0, ex) == doctest::Approx(2600.0).epsilon(1e-12));
  CHECK(interfacial_area(0.5, ex) == doctest::Approx(1300.0).epsilon(1e-12));
  CHECK(interfacial_area(0.0, ex) == 0.0);
  CHECK(interfacial_area(1.5, ex) == doctest::Approx(2600.0).epsilon(1e-12));
  auto shaded = ex;
  shaded.kappa_exposed = 0.35;
  CHECK(interfacial_area(1.0, shaded) == doctest::Approx(910.0).epsilon(1e-12));
}

TEST_CASE("exchange velocity: stagnant limit plus flow film") {
  const auto ex = chamber_exchange();
  CHECK(mass_exchange_coefficient(0.0, ex) ==
        doctest::Approx(4.8888888888889e-6).epsilon(1e-12));
  // v = 1.5e-5 m/s: delta = sqrt(pi r_p D / v), beta = 2D/r_p + D/delta
  CHECK(mass_exchange_coefficient(1.5e-5, ex) ==
        doctest::Approx(8.3052264737019e-6).epsilon(1e-12));
  CHECK(mass_exchange_coefficient(1.5e-5, ex) >
        mass_exchange_coefficient(1.5e-6, ex));
  CHECK(mass_exchange_coefficient(1.0, chamber_exchange(0.0)) == 0.0);
}

TEST_CASE("Contois growth rates against independent arithmetic") {
  const auto gp = GrowthParams::ecoli_defaults();
  CHECK(gp.mu_max_a == doctest::Approx(9.0e-5).epsilon(1e-14));
  CHECK(gp.d_c == doctest::Approx(3.54e-3 / 3600.0).epsilon(1e-14));
  const auto r = specific_growth_rates(0.5, 0.8, 9.11e-3, gp);
  CHECK(r.mu_a == doctest::Approx(2.0671886744584e-5).epsilon(1e-12));
  CHECK(r.mu_an == doctest::Approx(3.5964929841808e-6).epsilon(1e-12));
  // saturating oxygen shuts the anaerobic pathway off entirely
  const auto sat = specific_growth_rates(0.5, 0.8, 9.11, gp);
  CHECK(sat.mu_a == doctest::Approx(4.2184748321368e-5).epsilon(1e-12));
  CHECK(sat.mu_an == 0.0);
}

TEST_CASE("growth-rate corners: vanishing numerators and 0/0") {
  const auto gp = GrowthParams::ecoli_defaults();
  const auto none = specific_growth_rates(0.5, 0.0, 9.11e-3, gp);
  CHECK(none.mu_a == 0.0);
  CHECK(none.mu_an == 0.0);
  const auto anox = specific_growth_rates(0.5, 0.8, 0.0, gp);
  CHECK(anox.mu_a == 0.0);
  CHECK(anox.mu_an == doctest::Approx(gp.mu_max_an * 0.8 / (3.07 * 0.5 + 0.8)));
  // c_X -> 0 with substrate present: Contois terms approach 1
  const auto dilute = specific_growth_rates(0.0, 0.8, 9.11e-3, gp);
  CHECK(dilute.mu_a == doctest::Approx(gp.mu_max_a).epsilon(1e-12));
  CHECK(dilute.mu_an == 0.0);
  CHECK(AdhesionParams::ecoli_defaults().c_s_X_max ==
        doctest::Approx(units::conc_from_cells_per_ml(1.6e8)).epsilon(1e-14));
  CHECK(units::conc_from_cells_per_ml(1.6e8) == doctest::Approx(0.08).epsilon(1e-12));
}

// ------------------------------------------------------- closed-form limits

TEST_CASE("suspended biomass decays at exp(-d_c t)") {
  ReactionParams rp;
  rp.growth = GrowthParams::ecoli_defaults();
  rp.exchange = chamber_exchange(0.0); // no O2 exchange
  CellReactionState cell;
  cell.theta_l = 0.351, cell.theta_g = 0.039, cell.theta_s = 0.61;
  cell.s_l = 0.9, cell.s_g = 0.1;
  cell.y = {0.0, 0.0, 0.5, 0.0, 0.0}; // no substrate: decay only
  IntegrateControl ctl;
  ctl.rtol = 1e-10;
  const auto st = integrate_cell(cell, rp, 100.0 * units::hour, ctl);
  CHECK(st.steps > 0);
  CHECK(!st.reduced);
  CHECK(cell.y[2] == doctest::Approx(0.5 * 0.70187496735539).epsilon(1e-8));
}

TEST_CASE("oxygen maintenance burns dissolved O2 exponentially") {
  ReactionParams rp;
  rp.growth = GrowthParams::ecoli_defaults();
  rp.growth.d_c = 0.0; // freeze the biomass so the rate constant is exact
  rp.exchange = chamber_exchange(0.0);
  CellReactionState cell;
  cell.theta_l = 0.351, cell.theta_g = 0.039, cell.theta_s = 0.61;
  cell.s_l = 0.9, cell.s_g = 0.1;
  cell.y = {0.0, 9.0e-3, 1.2, 0.0, 0.0}; // m_o c_X = 1e-6 1/s exactly
  IntegrateControl ctl;
  ctl.rtol = 1e-10;
  integrate_cell(cell, rp, 1.0e6, ctl);
  CHECK(cell.y[1] == doctest::Approx(9.0e-3 * 0.36787944117144).epsilon(1e-8));
  CHECK(cell.y[2] == doctest::Approx(1.2).epsilon(1e-12));
}

// ---------------------------------------------------------- oxygen exchange

TEST_CASE("exchange relaxes to the Henry equilibrium and conserves O2") {
  ReactionParams rp;
  rp.exchange = chamber_exchange();
  CellReactionState cell;
  cell.theta_l = 0.351, cell.theta_g = 0.039, cell.theta_s = 0.61;
  cell.s_l = 0.9, cell.s_g = 0.1;
  cell.y = {0.0, 0.0, 0.0, 0.0, 0.2777613}; // all O2 in the gas
  const double total = 0.039 * 0.2777613;

  SUBCASE("resolved path (lambda dt below the threshold)") {
    const auto st = integrate_cell(cell, rp, 5000.0, {});
    CHECK(!st.reduced);
    CHECK(cell.y[4] == doctest::Approx(0.21445436998147).epsilon(1e-9));
    CHECK(cell.y[1] == doctest::Approx(7.0341033353922e-3).epsilon(1e-9));
    CHECK(0.351 * cell.y[1] + 0.039 * cell.y[4] ==
          doctest::Approx(total).epsilon(1e-9));
  }
  SUBCASE("reduced path (fast exchange pinned to the manifold)") {
    const auto st = integrate_cell(cell, rp, 1.2e5, {});
    CHECK(st.reduced);
    CHECK(cell.y[4] == doctest::Approx(0.21445436998147).epsilon(1e-12));
    CHECK(cell.y[1] == doctest::Approx(7.0341033353922e-3).epsilon(1e-12));
    CHECK(0.351 * cell.y[1] + 0.039 * cell.y[4] ==
          doctest::Approx(total).epsilon(1e-12));
  }
}

TEST_CASE("reduced and resolved paths agree on a growing cell") {
  ReactionParams rp;
  rp.growth = GrowthParams::ecoli_defaults();
  rp.adhesion = AdhesionParams::ecoli_defaults();
  rp.exchange = chamber_exchange();
  rp.exchange.r_p = 0.3e-3; // fine grains: lambda dt passes the threshold
  CellReactionState cell;
  cell.theta_l = 0.351, cell.theta_g = 0.039, cell.theta_s = 0.61;
  cell.s_l = 0.9, cell.s_g = 0.1;
  const double c_g = 0.2777613;
  // start on the Henry manifold so the fast transient carries no mass
  cell.y = {0.8, 3.28e-2 * c_g, 0.01, 0.01, c_g};
  const double dt = 1.5e4;

  auto full = cell;
  IntegrateControl resolve;
  resolve.stiff_lambda_dt = 1e18;
  const auto st_full = integrate_cell(full, rp, dt, resolve);
  CHECK(!st_full.reduced);

  auto red = cell;
  const auto st_red = integrate_cell(red, rp, dt, {});
  CHECK(st_red.reduced);

  for (int k = 0; k < 5; ++k)
    CHECK(red.y[k] == doctest::Approx(full.y[k]).epsilon(2e-3));
  // growth actually happened
  CHECK(full.y[2] + full.y[3] > 1.5 * (cell.y[2] + cell.y[3]));
  CHECK(full.y[0] < 0.8);
}

// ---------------------------------------------------------------- adhesion

TEST_CASE("attachment saturates at the blocked capacity and conserves mass") {
  ReactionParams rp;
  rp.adhesion.k_att = 1e-3;
  rp.adhesion.k_det = 0.0;
  rp.adhesion.c_s_X_max = 0.08;
  rp.exchange = chamber_exchange(0.0);
  CellReactionState cell;
  cell.theta_l = 0.351, cell.theta_g = 0.039, cell.theta_s = 0.61;
  cell.s_l = 0.9, cell.s_g = 0.1;
  cell.y = {0.0, 0.0, 1.0, 0.0, 0.0};
  const double cap = 0.9 * 0.08; // capacity scales with wetted surface
  const double mass0 = 0.351 * 1.0;
  integrate_cell(cell, rp, 2500.0, {});
  CHECK(cell.y[3] <= cap * (1.0 + 1e-9));
  CHECK(cell.y[3] >= cap * (1.0 - 1e-5));
  CHECK(0.351 * cell.y[2] + 0.61 * cell.y[3] ==
        doctest::Approx(mass0).epsilon(1e-9));
}

TEST_CASE("pure detachment is exponential in k_det") {
  ReactionParams rp;
  rp.adhesion.k_det = 6.2e-6;
  rp.adhesion.c_s_X_max = 0.08;
  rp.exchange = chamber_exchange(0.0);
  CellReactionState cell;
  cell.theta_l = 0.351, cell.theta_g = 0.039, cell.theta_s = 0.61;
  cell.s_l = 0.9, cell.s_g = 0.1;
  cell.y = {0.0, 0.0, 0.0, 0.072, 0.0};
  IntegrateControl ctl;
  ctl.rtol = 1e-10;
  integrate_cell(cell, rp, 1e5, ctl);
  CHECK(cell.y[3] == doctest::Approx(0.072 * std::exp(-0.62)).epsilon(1e-8));
  CHECK(0.351 * cell.y[2] + 0.61 * cell.y[3] ==
        doctest::Approx(0.61 * 0.072).epsilon(1e-9));
}

// ------------------------------------------------------------------- rkf45

TEST_CASE("embedded pair solves problems with closed forms") {
  rkf45::Control ctl;
  ctl.rtol = 1e-10;
  ctl.atol = 1e-14;
  std::array<double, 1> y{1.0};
  auto blowup = [](const std::array<double, 1>& y, std::array<double, 1>& d) {
    d[0] = y[0] * y[0];
  };
  auto st = rkf45::integrate<1>(blowup, y, 0.0, 0.5, ctl);
  CHECK(y[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(st.steps > 1);

  y = {1.0};
  auto decay = [](const std::array<double, 1>& y, std::array<double, 1>& d) {
    d[0] = -y[0];
  };
  rkf45::integrate<1>(decay, y, 0.0, 5.0, ctl);
  CHECK(y[0] == doctest::Approx(std::exp(-5.0)).epsilon(1e-9));
}

TEST_CASE("negative clipping is accounted, step budget raises SolverError") {
  rkf45::Control ctl;
  ctl.clip_negative = true;
  std::array<double, 1> y{0.5};
  auto drain = [](const std::array<double, 1>&, std::array<double, 1>& d) {
    d[0] = -2.0;
  };
  // linear RHS: one exact step to -1.5, clipped back to 0
  const auto st = rkf45::integrate<1>(drain, y, 0.0, 1.0, ctl);
  CHECK(y[0] == 0.0);
  CHECK(st.clipped == doctest::Approx(1.5).epsilon(1e-12));

  rkf45::Control tight;
  tight.rtol = 1e-12;
  tight.max_steps = 5;
  std::array<double, 1> z{1.0};
  auto stiff = [](const std::array<double, 1>& y, std::array<double, 1>& d) {
    d[0] = -1e6 * y[0];
  };
  CHECK_THROWS_AS(rkf45::integrate<1>(stiff, z, 0.0, 1.0, tight), SolverError);
}

}  // TEST_SUITE
