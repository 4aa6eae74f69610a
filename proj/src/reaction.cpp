#include "fringe/reaction.hpp"

#include <algorithm>
#include <cmath>

#include "fringe/units.hpp"

namespace fringe::reaction {

GrowthParams GrowthParams::ecoli_defaults() {
  GrowthParams gp;
  gp.mu_max_a = 0.324 * units::per_hour;
  gp.mu_max_an = 0.255 * units::per_hour;
  gp.d_c = 3.54e-3 * units::per_hour;
  gp.B_S_a = 1.81;
  gp.B_S_an = 3.07;
  gp.B_O2 = 0.019;
  gp.Y_S_a = 0.95;
  gp.Y_S_an = 0.163;
  gp.Y_O2 = 0.49;
  gp.m_o = 0.003 * 1e-3 / (units::hour * 1e-3); // L/(h g) -> m^3/(kg s)
  return gp;
}

AdhesionParams AdhesionParams::ecoli_defaults() {
  AdhesionParams ap;
  ap.k_att = 3.0e-4;
  ap.k_det = 6.2e-6;
  ap.c_s_X_max = units::conc_from_cells_per_ml(1.6e8);
  return ap;
}

double interfacial_area(double s_g, const ExchangeParams& ex) {
  const double s = std::clamp(s_g, 0.0, 1.0);
  if (s <= 0.0) return 0.0;  // no gas, no interface (and no r_p division)
  return ex.kappa_exposed * s * 6.0 * ex.phi / ex.r_p;
}

double mass_exchange_coefficient(double v_l_norm, const ExchangeParams& ex) {
  if (ex.D_l_O2 <= 0.0) return 0.0;
  double beta = 2.0 * ex.D_l_O2 / ex.r_p;
  if (v_l_norm > 0.0) {
    const double delta = std::sqrt(M_PI * ex.r_p * ex.D_l_O2 / v_l_norm);
    beta += ex.D_l_O2 / delta;
  }
  return beta;
}

namespace {

// c / (B c_X + c) with the 0/0 corner mapped to 0
inline double contois(double c, double B, double c_X) {
  if (c <= 0.0) return 0.0;
  return c / (B * c_X + c);
}

}  // namespace

GrowthRates specific_growth_rates(double c_X, double c_S, double c_O2,
                                  const GrowthParams& gp) {
  c_X = std::max(c_X, 0.0);
  GrowthRates r;
  r.mu_a = gp.mu_max_a * contois(c_S, gp.B_S_a, c_X) * contois(c_O2, gp.B_O2, c_X);
  r.mu_an = std::max(gp.mu_max_an * contois(c_S, gp.B_S_an, c_X) - r.mu_a, 0.0);
  return r;
}

void reaction_rhs(const CellReactionState& cell, const ReactionParams& rp,
                  const std::array<double, 5>& y, std::array<double, 5>& dydt) {
  const GrowthParams& gp = rp.growth;
  const double th_l = std::max(cell.theta_l, 1e-12);
  const double th_g = std::max(cell.theta_g, 1e-12);
  const double th_s = cell.theta_s;

  const double c_S = std::max(y[0], 0.0);
  const double c_lO2 = std::max(y[1], 0.0);
  const double c_lX = std::max(y[2], 0.0);
  const double c_sX = std::max(y[3], 0.0);
  const double c_gO2 = std::max(y[4], 0.0);

  const double c_X = c_lX + c_sX * th_s / th_l;
  const auto mu = specific_growth_rates(c_X, c_S, c_lO2, gp);

  // attachment flux into the liquid [kg/(m^3 bulk s)]
  const double cap_att = cell.s_l * rp.adhesion.c_s_X_max;
  const double psi = cap_att > 0.0 ? 1.0 - c_sX / cap_att : 0.0;
  const double a_lX =
      -th_l * rp.adhesion.k_att * psi * c_lX + th_s * rp.adhesion.k_det * c_sX;

  // oxygen exchange into the liquid [kg/(m^3 bulk s)]
  const double beta = mass_exchange_coefficient(cell.v_l_norm, rp.exchange);
  const double a_gw = interfacial_area(cell.s_g, rp.exchange);
  const double e_lO2 = beta * a_gw * (rp.exchange.k_H * c_gO2 - c_lO2);

  // vanishing growth consumes nothing, whatever the yields (0/0 -> 0)
  const double u_Sa = mu.mu_a > 0.0 ? mu.mu_a / gp.Y_S_a : 0.0;
  const double u_San = mu.mu_an > 0.0 ? mu.mu_an / gp.Y_S_an : 0.0;
  const double u_O2 = mu.mu_a > 0.0 ? mu.mu_a / gp.Y_O2 : 0.0;
  const double r_S = -th_l * (u_Sa + u_San) * c_X;
  const double r_O2 = -th_l * (u_O2 + gp.m_o * c_lO2) * c_X + e_lO2;
  const double r_lX = th_l * ((mu.mu_a + mu.mu_an) * c_X - gp.d_c * c_lX) + a_lX;
  const double r_sX = -a_lX - th_s * gp.d_c * c_sX;

  dydt[0] = r_S / th_l;
  dydt[1] = r_O2 / th_l;
  dydt[2] = r_lX / th_l;
  dydt[3] = th_s > 0.0 ? r_sX / th_s : 0.0;
  dydt[4] = th_g > 0.0 ? -e_lO2 / th_g : 0.0;
}

namespace {

// slow system on the oxygen-equilibrium manifold: state
// (c_S, c_lX, c_sX, c_gO2) with c_lO2 = k_H c_gO2 slaved
struct ReducedRhs {
  const CellReactionState& cell;
  const ReactionParams& rp;
  double th_l, th_g, th_s, cap; // cap = theta_g + k_H theta_l

  void operator()(const std::array<double, 4>& z, std::array<double, 4>& dz) const {
    const GrowthParams& gp = rp.growth;
    const double c_S = std::max(z[0], 0.0);
    const double c_lX = std::max(z[1], 0.0);
    const double c_sX = std::max(z[2], 0.0);
    const double c_gO2 = std::max(z[3], 0.0);
    const double c_lO2 = rp.exchange.k_H * c_gO2;

    const double c_X = c_lX + c_sX * th_s / th_l;
    const auto mu = specific_growth_rates(c_X, c_S, c_lO2, gp);

    const double cap_att = cell.s_l * rp.adhesion.c_s_X_max;
    const double psi = cap_att > 0.0 ? 1.0 - c_sX / cap_att : 0.0;
    const double a_lX =
        -th_l * rp.adhesion.k_att * psi * c_lX + th_s * rp.adhesion.k_det * c_sX;

    const double u_Sa = mu.mu_a > 0.0 ? mu.mu_a / gp.Y_S_a : 0.0;
    const double u_San = mu.mu_an > 0.0 ? mu.mu_an / gp.Y_S_an : 0.0;
    const double u_O2 = mu.mu_a > 0.0 ? mu.mu_a / gp.Y_O2 : 0.0;
    const double r_S = -th_l * (u_Sa + u_San) * c_X;
    const double cons_O2 = th_l * (u_O2 + gp.m_o * c_lO2) * c_X;
    const double r_lX = th_l * ((mu.mu_a + mu.mu_an) * c_X - gp.d_c * c_lX) + a_lX;
    const double r_sX = -a_lX - th_s * gp.d_c * c_sX;

    dz[0] = r_S / th_l;
    dz[1] = r_lX / th_l;
    dz[2] = th_s > 0.0 ? r_sX / th_s : 0.0;
    // total O2 = cap * c_gO2 declines with consumption only
    dz[3] = -cons_O2 / cap;
  }
};

}  // namespace

CellIntegrationStats integrate_cell(CellReactionState& cell,
                                    const ReactionParams& rp, double dt,
                                    const IntegrateControl& ctl) {
  CellIntegrationStats out;
  if (dt <= 0.0) return out;

  const double th_l = std::max(cell.theta_l, 1e-12);
  const double th_g = std::max(cell.theta_g, 1e-12);
  const double beta = mass_exchange_coefficient(cell.v_l_norm, rp.exchange);
  const double a_gw = interfacial_area(cell.s_g, rp.exchange);
  const double lambda =
      beta * a_gw > 0.0 ? beta * a_gw * (rp.exchange.k_H / th_g + 1.0 / th_l) : 0.0;

  rkf45::Control rc;
  rc.rtol = ctl.rtol;
  rc.atol = ctl.atol;
  rc.max_steps = ctl.max_steps;
  rc.clip_negative = true;

  if (lambda * dt > ctl.stiff_lambda_dt) {
    // pin the O2 pair to its mass-conserving joint equilibrium, then
    // integrate the slow manifold
    out.reduced = true;
    const double cap = th_g + rp.exchange.k_H * th_l;
    const double total = th_l * cell.y[1] + th_g * cell.y[4];
    double c_g = std::max(total, 0.0) / cap;
    std::array<double, 4> z{cell.y[0], cell.y[2], cell.y[3], c_g};
    ReducedRhs rhs{cell, rp, th_l, th_g, cell.theta_s, cap};
    const auto st = rkf45::integrate<4>(rhs, z, 0.0, dt, rc);
    out.steps = st.steps;
    out.rejected = st.rejected;
    out.clipped = st.clipped;
    cell.y[0] = z[0];
    cell.y[2] = z[1];
    cell.y[3] = z[2];
    cell.y[4] = z[3];
    cell.y[1] = rp.exchange.k_H * z[3];
    return out;
  }

  auto rhs = [&](const std::array<double, 5>& y, std::array<double, 5>& dydt) {
    reaction_rhs(cell, rp, y, dydt);
  };
  const auto st = rkf45::integrate<5>(rhs, cell.y, 0.0, dt, rc);
  out.steps = st.steps;
  out.rejected = st.rejected;
  out.clipped = st.clipped;
  return out;
}

}  // namespace fringe::reaction
