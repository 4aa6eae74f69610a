#include "fringe/constitutive.hpp"

#include <algorithm>
#include <cmath>

namespace fringe::constitutive {

VanGenuchtenParams VanGenuchtenParams::make(double alpha, double n, double s_l_min) {
  VanGenuchtenParams vg;
  vg.alpha = alpha;
  vg.n = n;
  vg.m = 1.0 - 1.0 / n;
  vg.s_l_min = s_l_min;
  vg.validate();
  return vg;
}

void VanGenuchtenParams::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("van Genuchten alpha must be positive");
  if (!(n > 1.0)) throw ConfigError("van Genuchten n must exceed 1");
  if (std::abs(m - (1.0 - 1.0 / n)) > 1e-14)
    throw ConfigError("van Genuchten m must equal 1 - 1/n");
  if (!(s_l_min > 0.0 && s_l_min < 0.5))
    throw ConfigError("saturation floor must lie in (0, 0.5)");
}

double VanGenuchtenParams::pc_cap() const {
  return pc_from_saturation(s_l_min, *this);
}

void MediumParams::validate() const {
  if (!(phi > 0.0 && phi < 1.0)) throw ConfigError("porosity must lie in (0,1)");
  if (!(K > 0.0)) throw ConfigError("permeability must be positive");
  if (!(r_p > 0.0)) throw ConfigError("grain diameter must be positive");
  if (!(kappa_exposed > 0.0 && kappa_exposed <= 1.0))
    throw ConfigError("kappa_exposed must lie in (0,1]");
}

double vg_saturation_unclamped(double pc, const VanGenuchtenParams& vg) {
  if (pc <= 0.0) return 1.0;
  const double x = std::pow(vg.alpha * pc, vg.n);
  return std::pow(1.0 + x, -vg.m);
}

double vg_dsat_dpc(double pc, const VanGenuchtenParams& vg) {
  if (pc <= 0.0) return 0.0;
  const double ap = vg.alpha * pc;
  const double x = std::pow(ap, vg.n);
  return -vg.m * vg.n * vg.alpha * std::pow(ap, vg.n - 1.0) *
         std::pow(1.0 + x, -vg.m - 1.0);
}

double saturation_from_pc(double pc, const VanGenuchtenParams& vg) {
  return std::max(vg_saturation_unclamped(pc, vg), vg.s_l_min);
}

double pc_from_saturation(double s_l, const VanGenuchtenParams& vg) {
  if (!(s_l >= vg.s_l_min && s_l <= 1.0))
    throw ConfigError("pc_from_saturation: saturation outside [s_l_min, 1]");
  if (s_l >= 1.0) return 0.0;
  return std::pow(std::pow(s_l, -1.0 / vg.m) - 1.0, 1.0 / vg.n) / vg.alpha;
}

double relative_permeability(double s_l, Phase phase, const VanGenuchtenParams& vg) {
  const double se = std::clamp(s_l, 0.0, 1.0);
  if (phase == Phase::liquid && se > 1.0 - 1e-3) {
    // the Mualem liquid curve has an unbounded slope at se = 1; a monotone
    // C^1 Hermite patch over the last 1e-3 keeps Jacobians finite for cells
    // crossing into full saturation (zero end slope matches the flat clamp
    // above se = 1)
    const double h = 1e-3, s0 = 1.0 - h;
    const double u = 1.0 - std::pow(s0, 1.0 / vg.m);
    const double w = std::pow(u, vg.m);
    const double f = 1.0 - w;
    const double k0 = std::sqrt(s0) * f * f;
    const double dw = -std::pow(u, vg.m - 1.0) * std::pow(s0, 1.0 / vg.m - 1.0);
    const double k0p = 0.5 * f * f / std::sqrt(s0) - 2.0 * std::sqrt(s0) * f * dw;
    const double t = (se - s0) / h;
    return k0 * (2.0 * t * t * t - 3.0 * t * t + 1.0) +
           h * k0p * (t * t * t - 2.0 * t * t + t) +
           (3.0 * t * t - 2.0 * t * t * t);
  }
  // (1 - se^(1/m))^m appears in both phases
  const double w = std::pow(1.0 - std::min(std::pow(se, 1.0 / vg.m), 1.0), vg.m);
  if (phase == Phase::liquid) {
    const double f = 1.0 - w;
    return std::sqrt(se) * f * f;
  }
  return std::sqrt(1.0 - se) * w * w;
}

double effective_diffusion(double s_phase, double phi, double D_molecular) {
  const double s = std::clamp(s_phase, 0.0, 1.0);
  return s * s * std::pow(phi, 4.0 / 3.0) * D_molecular;
}

double henry_equilibrium(double c_g, double k_H) {
  return k_H * c_g;
}

GasState gas_state(std::span<const double> molar_conc,
                   std::span<const double> molar_mass,
                   const FluidParams& fluid) {
  if (molar_conc.size() != molar_mass.size())
    throw ConfigError("gas_state: component count mismatch");
  GasState gs;
  for (std::size_t k = 0; k < molar_conc.size(); ++k) {
    if (molar_conc[k] < 0.0) throw ConfigError("gas_state: negative molar concentration");
    gs.p += molar_conc[k];
    gs.rho += molar_conc[k] * molar_mass[k];
  }
  gs.p *= fluid.R_gas * fluid.T;
  return gs;
}

}  // namespace fringe::constitutive
