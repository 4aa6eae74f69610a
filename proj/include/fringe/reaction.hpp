#pragma once

// Cell-local reaction network: double-Monod/Contois growth on DOC with
// aerobic and anaerobic pathways, linear decay, rate-limited attachment
// to the grain surface with a Langmuir-type blocking function, and
// kinetic oxygen exchange across the gas-water interface.
//
// All rates are formulated per bulk (porous-medium) volume; phase
// contents theta are frozen over one reaction step, so the integrator
// advances per-phase concentrations with d(c)/dt = rate / theta.
//
// Unit basis: concentrations kg/m^3 of the carrying phase (= g/L),
// attached biomass per solid-phase volume, rates 1/s.

#include <array>

#include "fringe/rkf45.hpp"

namespace fringe::reaction {

struct GrowthParams {
  double mu_max_a = 0.0;  // aerobic max specific growth rate [1/s]
  double mu_max_an = 0.0; // anaerobic max specific growth rate [1/s]
  double d_c = 0.0;       // linear decay rate [1/s]
  double B_S_a = 0.0;     // Contois constant, substrate, aerobic [-]
  double B_S_an = 0.0;    // Contois constant, substrate, anaerobic [-]
  double B_O2 = 0.0;      // Contois constant, oxygen [-]
  double Y_S_a = 0.0;     // aerobic yield, g dw per g DOC [-]
  double Y_S_an = 0.0;    // anaerobic yield [-]
  double Y_O2 = 0.0;      // yield per oxygen consumed, g dw per g O2 [-]
  double m_o = 0.0;       // oxygen maintenance coefficient [m^3/(kg s)]

  // calibrated E. coli constants (rates given per hour, converted)
  static GrowthParams ecoli_defaults();
};

struct AdhesionParams {
  double k_att = 0.0;     // attachment rate [1/s]
  double k_det = 0.0;     // detachment rate [1/s]
  double c_s_X_max = 0.0; // attachment capacity [kg/m^3]

  static AdhesionParams ecoli_defaults();
};

struct ExchangeParams {
  double D_l_O2 = 0.0;        // aqueous O2 diffusivity [m^2/s]
  double r_p = 0.0;           // mean grain diameter [m]
  double kappa_exposed = 1.0; // exposed interface fraction (0,1]
  double k_H = 0.0;           // Henry coefficient c_l*/c_g [-]
  double phi = 0.0;           // porosity [-]
};

// gas-water interfacial area per bulk volume: kappa * s_g * 6 phi / r_p [1/m]
double interfacial_area(double s_g, const ExchangeParams& ex);

// film-model transfer velocity beta = D (2/r_p + 1/delta) with boundary
// layer delta = sqrt(pi r_p D / |v_l|); the stagnant limit is 2 D / r_p
double mass_exchange_coefficient(double v_l_norm, const ExchangeParams& ex);

struct GrowthRates {
  double mu_a = 0.0;  // [1/s]
  double mu_an = 0.0; // [1/s]
};

// Contois rates on total biomass c_X; the anaerobic pathway is suppressed
// by the aerobic one and never negative. Vanishing numerators give 0.
GrowthRates specific_growth_rates(double c_X, double c_S, double c_O2,
                                  const GrowthParams& gp);

struct ReactionParams {
  GrowthParams growth;
  AdhesionParams adhesion;
  ExchangeParams exchange;
};

// frozen cell environment plus the five reacting concentrations
struct CellReactionState {
  // state, order: c_l_S, c_l_O2, c_l_X, c_s_X, c_g_O2
  std::array<double, 5> y{};
  double theta_l = 0.0, theta_g = 0.0, theta_s = 0.0;
  double s_l = 0.0, s_g = 0.0;
  double v_l_norm = 0.0; // pore-water speed scale for the exchange film [m/s]
};

// time derivatives of the phase concentrations (already divided by theta)
void reaction_rhs(const CellReactionState& cell, const ReactionParams& rp,
                  const std::array<double, 5>& y, std::array<double, 5>& dydt);

struct IntegrateControl {
  double rtol = 1e-6;
  double atol = 1e-12;           // [kg/m^3]
  double stiff_lambda_dt = 500.; // exchange-equilibrium reduction threshold
  long max_steps = 2000000;
};

struct CellIntegrationStats {
  long steps = 0;
  long rejected = 0;
  double clipped = 0.0; // negative excursions removed, summed over state
  bool reduced = false; // fast-exchange equilibrium path taken
};

// advance one cell over dt with the embedded RKF45 pair. When the O2
// exchange relaxation rate lambda = beta a_gw (k_H/theta_g + 1/theta_l)
// satisfies lambda dt > stiff_lambda_dt, the O2 pair is pinned to its
// mass-conserving joint equilibrium and the remaining slow system is
// integrated instead (exact singular-perturbation limit).
CellIntegrationStats integrate_cell(CellReactionState& cell,
                                    const ReactionParams& rp, double dt,
                                    const IntegrateControl& ctl);

}  // namespace fringe::reaction
