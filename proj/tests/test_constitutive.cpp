// Closure-relation oracles: retention curve against high-precision
// closed-form values, inverse round trips, relative-permeability limits
// and smoothness of the regularized wet end, diffusion/Henry/gas-state
// constants used by the oxygen pathway.

#include <doctest.h>

#include <cmath>
#include <random>

#include "fringe/constitutive.hpp"

using namespace fringe;
using namespace fringe::constitutive;

namespace {
const VanGenuchtenParams vg = VanGenuchtenParams::make(1.21e-3, 5.48);
const FluidParams fluid{};
}  // namespace

TEST_SUITE("constitutive") {

// ---------------------------------------------------------------- retention

TEST_CASE("van Genuchten saturation matches closed-form oracles") {
  // independent evaluation of (1 + (alpha pc)^n)^(-m) at 30 digits
  CHECK(saturation_from_pc(826.45, vg) == doctest::Approx(0.56741146601532).epsilon(1e-12));
  CHECK(saturation_from_pc(490.5, vg) == doctest::Approx(0.95545041509736).epsilon(1e-12));
  CHECK(saturation_from_pc(1000.0, vg) == doctest::Approx(0.33272822924959).epsilon(1e-12));
  CHECK(saturation_from_pc(0.0, vg) == 1.0);
  CHECK(saturation_from_pc(-50.0, vg) == 1.0);
}

TEST_CASE("saturation floor clamps at s_l_min and pc_cap is its preimage") {
  CHECK(vg.pc_cap() == doctest::Approx(3862.2512957362).epsilon(1e-12));
  CHECK(saturation_from_pc(vg.pc_cap(), vg) == doctest::Approx(1e-3).epsilon(1e-9));
  CHECK(saturation_from_pc(1e5, vg) == 1e-3);
  CHECK(vg_saturation_unclamped(1e5, vg) < 1e-3);
}

TEST_CASE("pc_from_saturation inverts the curve on [s_l_min, 1]") {
  CHECK(pc_from_saturation(0.5, vg) == doctest::Approx(871.14943577721).epsilon(1e-12));
  CHECK(pc_from_saturation(1.0, vg) == 0.0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(1e-3, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double s = u(rng);
    const double pc = pc_from_saturation(s, vg);
    CHECK(saturation_from_pc(pc, vg) == doctest::Approx(s).epsilon(1e-12));
  }
  CHECK_THROWS_AS(pc_from_saturation(5e-4, vg), ConfigError);
  CHECK_THROWS_AS(pc_from_saturation(1.2, vg), ConfigError);
}

TEST_CASE("retention curve is strictly decreasing over the pc window") {
  double prev = 2.0;
  for (double pc = 1.0; pc < vg.pc_cap(); pc += 7.3) {
    const double s = saturation_from_pc(pc, vg);
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("analytic dsat/dpc matches a central difference") {
  for (double pc : {50.0, 300.0, 826.45, 1500.0, 3000.0}) {
    const double h = 1e-3 * pc;
    const double fd = (vg_saturation_unclamped(pc + h, vg) -
                       vg_saturation_unclamped(pc - h, vg)) / (2 * h);
    CHECK(vg_dsat_dpc(pc, vg) == doctest::Approx(fd).epsilon(1e-5));
  }
  CHECK(vg_dsat_dpc(0.0, vg) == 0.0);
  CHECK(vg_dsat_dpc(-10.0, vg) == 0.0);
}

// --------------------------------------------------- relative permeability

TEST_CASE("Mualem relative permeabilities hit the closed-form oracles") {
  CHECK(relative_permeability(0.5, Phase::liquid, vg) ==
        doctest::Approx(0.09519421773525).epsilon(1e-12));
  CHECK(relative_permeability(0.9, Phase::liquid, vg) ==
        doctest::Approx(0.64132755467988).epsilon(1e-12));
  CHECK(relative_permeability(0.5, Phase::gas, vg) ==
        doctest::Approx(0.28340803542993).epsilon(1e-12));
}

TEST_CASE("relative permeability limits and bounds") {
  CHECK(relative_permeability(1.0, Phase::liquid, vg) == doctest::Approx(1.0));
  CHECK(relative_permeability(1.0, Phase::gas, vg) == doctest::Approx(0.0).epsilon(1e-30));
  CHECK(relative_permeability(0.0, Phase::liquid, vg) == doctest::Approx(0.0).epsilon(1e-30));
  CHECK(relative_permeability(0.0, Phase::gas, vg) == doctest::Approx(1.0));
  // out-of-range saturations clamp
  CHECK(relative_permeability(1.2, Phase::liquid, vg) == doctest::Approx(1.0));
  CHECK(relative_permeability(-0.1, Phase::gas, vg) == doctest::Approx(1.0));
  for (double s = 0.0; s <= 1.0; s += 0.01) {
    const double kl = relative_permeability(s, Phase::liquid, vg);
    const double kg = relative_permeability(s, Phase::gas, vg);
    CHECK(kl >= 0.0); CHECK(kl <= 1.0);
    CHECK(kg >= 0.0); CHECK(kg <= 1.0);
  }
}

TEST_CASE("liquid kr is monotone and C^1 across the wet-end patch") {
  // the Hermite patch starts at s = 1 - 1e-3: value and slope continuous,
  // monotone through to kr(1) = 1 with zero end slope
  const double s0 = 1.0 - 1e-3;
  const double below = relative_permeability(s0 - 1e-9, Phase::liquid, vg);
  const double at = relative_permeability(s0, Phase::liquid, vg);
  CHECK(at == doctest::Approx(0.99120424578071).epsilon(1e-10));
  CHECK(below == doctest::Approx(at).epsilon(1e-7));
  const double h = 1e-7;
  const double slope_below =
      (relative_permeability(s0 + h / 2, Phase::liquid, vg) -
       relative_permeability(s0 - h / 2, Phase::liquid, vg)) / h;
  CHECK(slope_below == doctest::Approx(7.263040015362).epsilon(1e-4));
  // one-sided secants at s = 1 shrink linearly in h: the slope itself is 0
  const auto top_secant = [&](double hh) {
    return (relative_permeability(1.0, Phase::liquid, vg) -
            relative_permeability(1.0 - hh, Phase::liquid, vg)) / hh;
  };
  CHECK(std::abs(top_secant(1e-7)) < 5e-3);
  CHECK(std::abs(top_secant(1e-9)) < 5e-5);
  double prev = below;
  for (double s = s0; s <= 1.0 + 1e-12; s += 1e-5) {
    const double k = relative_permeability(s, Phase::liquid, vg);
    CHECK(k >= prev - 1e-15);
    prev = k;
  }
}

// ------------------------------------------------- diffusion, Henry, state

TEST_CASE("Millington-Quirk effective diffusion") {
  CHECK(effective_diffusion(0.5, 0.39, 2.2e-9) ==
        doctest::Approx(1.5671677966365e-10).epsilon(1e-12));
  CHECK(effective_diffusion(0.0, 0.39, 2.2e-9) == 0.0);
  CHECK(effective_diffusion(1.0, 1.0, 2.2e-9) == doctest::Approx(2.2e-9));
  // clamps out-of-range phase saturation
  CHECK(effective_diffusion(1.3, 0.39, 1.0) == effective_diffusion(1.0, 0.39, 1.0));
}

TEST_CASE("atmospheric oxygen dissolves to 9.11 mg/L") {
  // 20.95% of p_atm as ideal gas at 294.15 K, Henry k_H = 3.28e-2
  const double c_g = 0.2095 * fluid.p_atm / (fluid.R_gas * fluid.T) * 0.032;
  CHECK(c_g == doctest::Approx(0.27776130577044).epsilon(1e-12));
  CHECK(henry_equilibrium(c_g, fluid.k_H) ==
        doctest::Approx(9.1105708292704e-3).epsilon(1e-12));
}

TEST_CASE("ideal-gas mixture state recovers Dalton pressure and density") {
  // air at 21 C: 41.432 mol/m^3 total
  const double total = fluid.p_atm / (fluid.R_gas * fluid.T);
  CHECK(total == doctest::Approx(41.432175681748).epsilon(1e-12));
  const double conc[] = {0.2095 * total, 0.7905 * total};
  const double mass[] = {32.0e-3, 28.15e-3};
  const auto gs = gas_state(conc, mass, fluid);
  CHECK(gs.p == doctest::Approx(fluid.p_atm).epsilon(1e-12));
  CHECK(gs.rho == doctest::Approx(0.2095 * total * 32.0e-3 +
                                  0.7905 * total * 28.15e-3).epsilon(1e-12));
  const double neg[] = {-1.0};
  CHECK_THROWS_AS(gas_state(std::span(neg, 1), std::span(mass, 1), fluid), ConfigError);
}

TEST_CASE("parameter validation rejects unphysical input") {
  CHECK_THROWS_AS(VanGenuchtenParams::make(-1.0, 5.48), ConfigError);
  CHECK_THROWS_AS(VanGenuchtenParams::make(1.21e-3, 0.9), ConfigError);
  CHECK_THROWS_AS(VanGenuchtenParams::make(1.21e-3, 5.48, 0.7), ConfigError);
  MediumParams med;
  med.phi = 0.39; med.K = 2.6e-11; med.r_p = 0.9e-3; med.kappa_exposed = 1.0;
  CHECK_NOTHROW(med.validate());
  med.phi = 1.5;
  CHECK_THROWS_AS(med.validate(), ConfigError);
}

}  // TEST_SUITE
