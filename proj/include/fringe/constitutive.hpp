#pragma once

// Closure relations for the unsaturated zone: van Genuchten retention,
// Mualem-van Genuchten relative permeabilities, Millington-Quirk effective
// diffusion, Henry partitioning and the ideal-gas mixture state.
//
// The retention curve carries no residual-saturation parameter; instead the
// liquid saturation is floored at s_l_min and the capillary pressure capped
// at pc_cap() = pc(s_l_min). The Mualem form of the relative permeabilities
// is an assumption (the underlying experiments constrain only retention).

#include <span>
#include <vector>

#include "fringe/errors.hpp"

namespace fringe::constitutive {

struct VanGenuchtenParams {
  double alpha = 0.0;    // [1/Pa]
  double n = 0.0;        // [-], > 1
  double m = 0.0;        // [-], fixed to 1 - 1/n
  double s_l_min = 1e-3; // saturation floor [-]

  static VanGenuchtenParams make(double alpha, double n, double s_l_min = 1e-3);
  void validate() const;

  // capillary pressure at the saturation floor; pc values above it clamp
  double pc_cap() const;
};

struct MediumParams {
  double phi = 0.0;           // porosity [-]
  double K = 0.0;             // intrinsic permeability [m^2]
  double r_p = 0.0;           // mean grain diameter [m]
  double kappa_exposed = 1.0; // exposed fraction of gas-water interface (0,1]
  void validate() const;
};

struct FluidParams {
  double rho_l = 1000.0;   // liquid density [kg/m^3]
  double mu_l = 1.0e-3;    // liquid viscosity [Pa s]
  double mu_g = 1.8e-5;    // gas viscosity [Pa s]
  double T = 294.15;       // temperature [K]
  double R_gas = 8.314;    // [J/(mol K)]
  double g = 9.81;         // gravity magnitude [m/s^2]
  double k_H = 3.28e-2;    // Henry coefficient, c_l*/c_g [-]
  double p_atm = 101325.0; // [Pa]
};

enum class Phase { liquid, gas };

// effective saturation without the floor clamp; pc <= 0 gives 1.
// Used by the flow solver, which keeps pc inside the invertible window
// itself; everywhere else use saturation_from_pc.
double vg_saturation_unclamped(double pc, const VanGenuchtenParams& vg);
double vg_dsat_dpc(double pc, const VanGenuchtenParams& vg);

// retention curve with the documented floor: result in [s_l_min, 1]
double saturation_from_pc(double pc, const VanGenuchtenParams& vg);

// exact inverse on [s_l_min, 1]; s_l below the floor is a domain error,
// s_l == s_l_min maps to pc_cap()
double pc_from_saturation(double s_l, const VanGenuchtenParams& vg);

// Mualem-van Genuchten relative permeability of a phase at liquid
// saturation s_l (clamped into [0,1]); k_rl(1) = 1, k_rg(1) = 0
double relative_permeability(double s_l, Phase phase, const VanGenuchtenParams& vg);

// Millington-Quirk: D_eff = s^2 * phi^(4/3) * D  [m^2/s]
double effective_diffusion(double s_phase, double phi, double D_molecular);

// dissolved-phase equilibrium concentration c_l* = k_H * c_g  [kg/m^3]
double henry_equilibrium(double c_g, double k_H);

struct GasState {
  double p = 0.0;   // [Pa]
  double rho = 0.0; // [kg/m^3]
};

// ideal gas mixture with Dalton's law: p = R T sum(c_molar),
// rho = sum(c_molar * M). Inputs are molar concentrations [mol/m^3]
// and molar masses [kg/mol], same length, all non-negative.
GasState gas_state(std::span<const double> molar_conc,
                   std::span<const double> molar_mass,
                   const FluidParams& fluid);

}  // namespace fringe::constitutive
