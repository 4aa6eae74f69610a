#pragma once

// Fully implicit two-phase (water/gas) Darcy flow in the (p_l, p_c)
// formulation on the cell-centred grid: implicit Euler in time, two-point
// flux approximation with phase-potential upwinding of the mobilities,
// harmonic permeability and arithmetic face density in the gravity term.
// The gas is an ideal mixture whose density follows p_g = p_l + p_c at a
// mole fraction frozen over the step.
//
// Newton's method with a forward-difference Jacobian (structure-exploiting
// 5-coloring, one probe width per cell shared by both variables,
// eps = max(1e-7 |p_c|, 1e-4 Pa)), a sparse direct solve that
// reuses the symbolic factorization (and, while convergence stays fast,
// the numeric factorization) and a backtracking line search on the
// residual norm. The solver evaluates saturation through a retention
// curve extended linearly (C^1) beyond [pc(s_max), pc(s_l_min)], so the
// storage slope never vanishes: fully wet cells overshoot s = 1 by a
// fraction of the junction slope (numerical storage that neighbours
// drain away) and fully dry cells coast below s_l_min with zero liquid
// mobility. Public state fields keep the physical clamped saturation.
//
// Step control: a step fails when Newton stalls or the saturation moves
// more than max_sat_change anywhere; failed steps retry with dt halved,
// easy steps grow the next dt. dt underflow raises SolverError.

#include <memory>
#include <vector>

#include "fringe/grid.hpp"

namespace fringe::twophase {

struct TwoPhaseConfig {
  double dt_init = 1.0;    // [s]
  double dt_max = 1800.0;  // [s]
  double dt_min = 1e-6;    // [s]
  double newton_rtol = 1e-7;
  double newton_atol_scale = 1e-9; // [1/s] per-cell volumetric imbalance floor
  int newton_max_iter = 20;
  double max_sat_change = 0.1;
  int easy_iters = 8;        // accepted-iteration count that grows dt
  double grow_factor = 1.5;
  double s_max = 1.0 - 1e-5; // wet-side junction of the extended curve
};

// prescribed liquid volume rate through a port, positive into the domain
struct PortFlow {
  grid::PortSpec port;
  double rate = 0.0; // [m^3/s]
};

struct FlowBC {
  std::vector<PortFlow> liquid_ports;
  bool gas_top_dirichlet = true; // p_g = p_atm along the top wall
  double atm_o2_mole_fraction = 0.2095;
};

struct StepResult {
  double dt = 0.0;
  int newton_iters = 0;
  int attempts = 1;              // dt retries consumed
  double max_dsat = 0.0;
  double mass_balance_error = 0.0; // |sum of residuals| dt / pore volume
  // phase contents bracketing the step, for transport interpolation
  std::vector<double> theta_l_old, theta_l_new;
  std::vector<double> theta_rho_g_old, theta_rho_g_new;
  grid::FaceField gas_mass_flux; // rho_up * v_g at faces [kg/(m^2 s)]
};

class FlowSolver {
 public:
  FlowSolver(const grid::StructuredGrid& g,
             const constitutive::VanGenuchtenParams& vg,
             const constitutive::MediumParams& medium,
             const constitutive::FluidParams& fluid, TwoPhaseConfig cfg,
             double M_ref, double M_o2);
  ~FlowSolver();

  // advance the state by dt_target (with internal retries at smaller dt;
  // the achieved dt is returned). o2_g is the gas-oxygen component index
  // (-1 for a pure reference-gas problem). On success the state carries
  // converged pressures, derived fields and face velocities.
  StepResult adaptive_step(grid::FieldState& st, const grid::ComponentRegistry& reg,
                           int o2_g, const FlowBC& bc, double dt_target);

  // suggestion for the next step length (grows after easy steps)
  double dt_suggestion() const { return dt_next_; }
  void reset_dt() { dt_next_ = cfg_.dt_init; }

  // hydrostatic initialisation helper: uniform saturation everywhere
  void init_uniform(grid::FieldState& st, const grid::ComponentRegistry& reg,
                    int o2_g, double s_l) const;

  const TwoPhaseConfig& config() const { return cfg_; }

  struct Workspace; // solver scratch, defined in the implementation

 private:
  bool newton_solve(grid::FieldState& st, const FlowBC& bc, double dt,
                    Workspace& ws, int& iters);

  grid::StructuredGrid g_;
  constitutive::VanGenuchtenParams vg_;
  constitutive::MediumParams medium_;
  constitutive::FluidParams fluid_;
  TwoPhaseConfig cfg_;
  double M_ref_, M_o2_;
  // retention-curve junctions and the linear continuation slopes past them
  double pc_lo_, pc_hi_;   // pc(s_max), pc(s_l_min)
  double slope_lo_, slope_hi_; // ds/dpc at the junctions (negative)
  double dt_next_;
  std::unique_ptr<Workspace> ws_; // persistent scratch + cached factorization
};

}  // namespace fringe::twophase
