#include "fringe/twophase.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace fringe::twophase {

using grid::FieldState;
using grid::StructuredGrid;

namespace {

struct PortMap {
  // prescribed liquid Darcy velocity at boundary faces, + along the axis
  std::vector<double> qx, qy;
  std::vector<bool> is_port_x, is_port_y;
};

PortMap build_port_map(const StructuredGrid& g, const FlowBC& bc) {
  PortMap pm;
  pm.qx.assign(g.n_xfaces(), 0.0);
  pm.qy.assign(g.n_yfaces(), 0.0);
  pm.is_port_x.assign(g.n_xfaces(), false);
  pm.is_port_y.assign(g.n_yfaces(), false);
  for (const auto& pf : bc.liquid_ports) {
    const auto faces = grid::port_faces(g, pf.port);
    const bool xwall =
        pf.port.wall == grid::Wall::left || pf.port.wall == grid::Wall::right;
    const double area = xwall ? g.xface_area() : g.yface_area();
    const double q = pf.rate / (faces.size() * area); // [m/s]
    // inward direction: +x at left, -x at right, +y at bottom, -y at top
    const double sign =
        (pf.port.wall == grid::Wall::left || pf.port.wall == grid::Wall::bottom)
            ? 1.0
            : -1.0;
    for (const auto& f : faces) {
      if (xwall) {
        pm.qx[f.face] += sign * q;
        pm.is_port_x[f.face] = true;
      } else {
        pm.qy[f.face] += sign * q;
        pm.is_port_y[f.face] = true;
      }
    }
  }
  return pm;
}

}  // namespace

struct FlowSolver::Workspace {
  int n = 0; // cells
  Eigen::VectorXd x, xp, r_base, r_pert, rhs, delta;
  std::vector<double> m_mix;                  // frozen mixture molar mass [kg/mol]
  std::vector<double> theta_l_old_v, trg_old_v; // storage at step start, x V
  std::vector<double> s_old;
  PortMap ports;
  std::vector<std::vector<int>> colors; // 5-coloring of cells
  std::vector<double> eps;              // FD step per cell (for current column var)
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::SparseMatrix<double> J;
  // direct factorization, kept across iterations (and steps) while Newton
  // contracts fast enough; the sparsity pattern is analysed exactly once
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  Eigen::VectorXd rscale; // row equilibration frozen with the factorization
  bool lu_analyzed = false;
  bool lu_valid = false;  // numeric factors usable for further solves
  double lu_dt = 0.0;     // dt the factors were built for
  // previous accepted step, for the linear predictor that seeds Newton
  Eigen::VectorXd x_prev_start;
  double dt_prev = 0.0;
  bool have_prev = false;
  // scratch for captured velocities
  grid::FaceField vl, vg, mg;
};

FlowSolver::FlowSolver(const StructuredGrid& g,
                       const constitutive::VanGenuchtenParams& vg,
                       const constitutive::MediumParams& medium,
                       const constitutive::FluidParams& fluid, TwoPhaseConfig cfg,
                       double M_ref, double M_o2)
    : g_(g), vg_(vg), medium_(medium), fluid_(fluid), cfg_(cfg), M_ref_(M_ref),
      M_o2_(M_o2), dt_next_(cfg.dt_init) {
  vg_.validate();
  medium_.validate();
  pc_lo_ = constitutive::pc_from_saturation(cfg_.s_max, vg_);
  pc_hi_ = constitutive::pc_from_saturation(vg_.s_l_min, vg_);
  slope_lo_ = constitutive::vg_dsat_dpc(pc_lo_, vg_);
  slope_hi_ = constitutive::vg_dsat_dpc(pc_hi_, vg_);
}

FlowSolver::~FlowSolver() = default;

void FlowSolver::init_uniform(FieldState& st, const grid::ComponentRegistry& reg,
                              int o2_g, double s_l) const {
  const double pc = std::clamp(constitutive::pc_from_saturation(s_l, vg_), pc_lo_, pc_hi_);
  for (int c = 0; c < g_.cells(); ++c) {
    st.p_c[c] = pc;
    st.p_l[c] = fluid_.p_atm - pc; // p_g = p_atm everywhere
  }
  grid::update_derived(st, g_, vg_, medium_, fluid_, reg, o2_g, M_ref_);
}

namespace {

// upwind weight of the potential-high side, smoothed over a +-1 Pa band so
// the residual stays C^1 when a face potential drop crosses zero (hard
// switching leaves kinks exactly at equilibrium, where forward differences
// then straddle the kink and Newton loses its descent direction)
inline double upwind_weight(double dphi) {
  const double t = std::clamp(0.5 * (dphi + 1.0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

// retention curve continued linearly past the junctions, keeping ds/dpc
// bounded away from zero (the slopes are negative, so s runs slightly past
// [s_l_min, s_max] there; mobilities and public fields clamp it back)
struct ExtCurve {
  const constitutive::VanGenuchtenParams* vg;
  double pc_lo, pc_hi, s_lo, s_hi, m_lo, m_hi;
  double operator()(double pc) const {
    if (pc < pc_lo) return s_lo + m_lo * (pc - pc_lo);
    if (pc > pc_hi) return s_hi + m_hi * (pc - pc_hi);
    return constitutive::vg_saturation_unclamped(pc, *vg);
  }
};

// residual assembly shared by base evaluation, FD columns and the final
// velocity capture. Residuals are volumetric: liquid [m^3/s], gas mass
// rate divided by rho_ref.
struct Assembler {
  const StructuredGrid& g;
  const constitutive::VanGenuchtenParams& vg;
  const constitutive::MediumParams& med;
  const constitutive::FluidParams& fl;
  const FlowSolver::Workspace& ws;
  ExtCurve ext;
  double dt;
  double rho_ref, rho_atm;
  bool gas_top;

  void operator()(const Eigen::VectorXd& x, Eigen::VectorXd& R,
                  grid::FaceField* vl, grid::FaceField* vg_out,
                  grid::FaceField* mg) const {
    const double V = g.cell_volume();
    const double RT = fl.R_gas * fl.T;
    const int n = g.cells();
    R.setZero();

    // per-cell secondary state
    thread_local std::vector<double> s, th_l, th_g, rho_g, krl, krg, p_g;
    s.resize(n); th_l.resize(n); th_g.resize(n); rho_g.resize(n);
    krl.resize(n); krg.resize(n); p_g.resize(n);
    for (int c = 0; c < n; ++c) {
      const double pl = x[2 * c], pc = x[2 * c + 1];
      const double sl = ext(pc);
      s[c] = sl;
      th_l[c] = med.phi * sl;
      th_g[c] = med.phi * (1.0 - sl);
      p_g[c] = pl + pc;
      rho_g[c] = std::max(p_g[c], 1.0) / RT * ws.m_mix[c];
      krl[c] = constitutive::relative_permeability(sl, constitutive::Phase::liquid, vg);
      krg[c] = constitutive::relative_permeability(sl, constitutive::Phase::gas, vg);
      R[2 * c] = (th_l[c] * V - ws.theta_l_old_v[c]) / dt;
      R[2 * c + 1] = (th_g[c] * rho_g[c] * V - ws.trg_old_v[c]) / (dt * rho_ref);
    }

    const double K = med.K;
    // interior x-faces (no gravity component)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 1; i < g.nx; ++i) {
        const int L = g.cell(i - 1, j), Rc = g.cell(i, j);
        const double A = g.xface_area();
        // liquid
        double dphi = x[2 * L] - x[2 * Rc];
        double w = upwind_weight(dphi);
        double v = (w * krl[L] + (1.0 - w) * krl[Rc]) / fl.mu_l * K * dphi / g.dx;
        R[2 * L] += A * v;
        R[2 * Rc] -= A * v;
        if (vl) vl->x[g.xface(i, j)] = v;
        // gas
        dphi = p_g[L] - p_g[Rc];
        w = upwind_weight(dphi);
        const double vg_f =
            (w * krg[L] + (1.0 - w) * krg[Rc]) / fl.mu_g * K * dphi / g.dx;
        const double rho_f = w * rho_g[L] + (1.0 - w) * rho_g[Rc];
        R[2 * L + 1] += A * rho_f * vg_f / rho_ref;
        R[2 * Rc + 1] -= A * rho_f * vg_f / rho_ref;
        if (vg_out) vg_out->x[g.xface(i, j)] = vg_f;
        if (mg) mg->x[g.xface(i, j)] = rho_f * vg_f;
      }

    // interior y-faces (gravity along -y)
    for (int j = 1; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const int L = g.cell(i, j - 1), U = g.cell(i, j);
        const double A = g.yface_area();
        double dphi = x[2 * L] - x[2 * U] - fl.rho_l * fl.g * g.dy;
        double w = upwind_weight(dphi);
        double v = (w * krl[L] + (1.0 - w) * krl[U]) / fl.mu_l * K * dphi / g.dy;
        R[2 * L] += A * v;
        R[2 * U] -= A * v;
        if (vl) vl->y[g.yface(i, j)] = v;
        const double rho_avg = 0.5 * (rho_g[L] + rho_g[U]);
        dphi = p_g[L] - p_g[U] - rho_avg * fl.g * g.dy;
        w = upwind_weight(dphi);
        const double vg_f =
            (w * krg[L] + (1.0 - w) * krg[U]) / fl.mu_g * K * dphi / g.dy;
        const double rho_f = w * rho_g[L] + (1.0 - w) * rho_g[U];
        R[2 * L + 1] += A * rho_f * vg_f / rho_ref;
        R[2 * U + 1] -= A * rho_f * vg_f / rho_ref;
        if (vg_out) vg_out->y[g.yface(i, j)] = vg_f;
        if (mg) mg->y[g.yface(i, j)] = rho_f * vg_f;
      }

    // liquid ports: prescribed Darcy velocity, + along the axis
    for (int j = 0; j < g.ny; ++j) {
      for (int i : {0, g.nx}) {
        const int f = g.xface(i, j);
        if (!ws.ports.is_port_x[f]) continue;
        const int c = g.cell(i == 0 ? 0 : g.nx - 1, j);
        const double q = ws.ports.qx[f];
        // outgoing volume through this face for the adjacent cell
        R[2 * c] += (i == 0 ? -q : q) * g.xface_area();
        if (vl) vl->x[f] = q;
      }
    }
    for (int i = 0; i < g.nx; ++i) {
      for (int j : {0, g.ny}) {
        const int f = g.yface(i, j);
        if (!ws.ports.is_port_y[f]) continue;
        const int c = g.cell(i, j == 0 ? 0 : g.ny - 1);
        const double q = ws.ports.qy[f];
        R[2 * c] += (j == 0 ? -q : q) * g.yface_area();
        if (vl) vl->y[f] = q;
      }
    }

    // gas Dirichlet (atmosphere) along the top wall
    if (gas_top) {
      const double d = 0.5 * g.dy;
      const double A = g.yface_area();
      for (int i = 0; i < g.nx; ++i) {
        const int c = g.cell(i, g.ny - 1);
        const double rho_avg = 0.5 * (rho_g[c] + rho_atm);
        const double dphi = p_g[c] - fl.p_atm - rho_avg * fl.g * d;
        const double v = krg[c] / fl.mu_g * K * dphi / d;
        const double w = upwind_weight(dphi);
        const double rho_f = w * rho_g[c] + (1.0 - w) * rho_atm;
        R[2 * c + 1] += A * rho_f * v / rho_ref;
        const int f = g.yface(i, g.ny);
        if (vg_out) vg_out->y[f] = v;
        if (mg) mg->y[f] = rho_f * v;
      }
    }
  }
};

}  // namespace

bool FlowSolver::newton_solve(FieldState& st, const FlowBC& bc, double dt,
                              Workspace& ws, int& iters) {
  const int n = g_.cells();
  const int m = 2 * n;
  const double RT = fluid_.R_gas * fluid_.T;
  const double m_atm = M_ref_ + bc.atm_o2_mole_fraction * (M_o2_ - M_ref_);
  const ExtCurve ext{&vg_,     pc_lo_,       pc_hi_,
                     cfg_.s_max, vg_.s_l_min, slope_lo_,
                     slope_hi_};
  Assembler asm_{g_,
                 vg_,
                 medium_,
                 fluid_,
                 ws,
                 ext,
                 dt,
                 fluid_.p_atm / RT * M_ref_,
                 fluid_.p_atm / RT * m_atm,
                 bc.gas_top_dirichlet};
  const bool trace = std::getenv("FRINGE_TRACE_NEWTON") != nullptr;

  auto& x = ws.x;
  for (int c = 0; c < n; ++c) {
    x[2 * c] = st.p_l[c];
    x[2 * c + 1] = st.p_c[c];
  }
  // seed with the extrapolated trajectory of the previous accepted step
  static const bool no_pred = std::getenv("FRINGE_NO_PREDICTOR") != nullptr;
  if (!no_pred && ws.have_prev && ws.dt_prev > 0.0) {
    const double f = dt / ws.dt_prev;
    for (int k = 0; k < m; ++k) {
      double xk = x[k] + f * (x[k] - ws.x_prev_start[k]);
      if (k % 2)
        xk = std::clamp(xk, pc_lo_ - 1e6, pc_hi_ + 1e6);
      else
        xk = std::clamp(xk, -1e8, 1e8);
      x[k] = xk;
    }
  }

  asm_(x, ws.r_base, nullptr, nullptr, nullptr);
  double rnorm = ws.r_base.norm();
  if (!std::isfinite(rnorm)) return false;
  const double r0 = rnorm;
  // absolute floor: a per-cell volumetric imbalance rate, below which the
  // FD-Jacobian noise makes further reduction meaningless
  const double atol =
      cfg_.newton_atol_scale * g_.cell_volume() * std::sqrt(2.0 * n);
  const double target = std::max(cfg_.newton_rtol * r0, atol);

  iters = 0;
  if (ws.lu_valid && ws.lu_dt != dt) ws.lu_valid = false;

  auto neighbors = [&](int c, int* nb) {
    const int i = c % g_.nx, j = c / g_.nx;
    int k = 0;
    if (i > 0) nb[k++] = c - 1;
    if (i + 1 < g_.nx) nb[k++] = c + 1;
    if (j > 0) nb[k++] = c - g_.nx;
    if (j + 1 < g_.ny) nb[k++] = c + g_.nx;
    return k;
  };

  auto refactorize = [&]() {
    ws.trips.clear();
    for (const auto& cls : ws.colors) {
      for (int var = 0; var < 2; ++var) {
        ws.xp = x;
        for (int c : cls) {
          const int col = 2 * c + var;
          // one eps per cell, shared by p_l and p_c: gas rows see both
          // variables mostly through p_g = p_l + p_c, and Newton steps keep
          // p_g nearly constant, so mismatched probe widths would leave a
          // truncation bias that survives the p_l/p_c cancellation
          ws.eps[c] = std::max(1e-7 * std::abs(x[2 * c + 1]), 1e-4);
          ws.xp[col] += ws.eps[c];
        }
        asm_(ws.xp, ws.r_pert, nullptr, nullptr, nullptr);
        int nb[4];
        for (int c : cls) {
          const int col = 2 * c + var;
          const double inv_eps = 1.0 / ws.eps[c];
          // always emit the full stencil so the pattern never changes
          auto put = [&](int rc) {
            for (int rr : {2 * rc, 2 * rc + 1})
              ws.trips.emplace_back(rr, col,
                                    (ws.r_pert[rr] - ws.r_base[rr]) * inv_eps);
          };
          put(c);
          const int k = neighbors(c, nb);
          for (int q = 0; q < k; ++q) put(nb[q]);
        }
      }
    }
    ws.J.setFromTriplets(ws.trips.begin(), ws.trips.end());

    // row equilibration, frozen alongside the factors
    ws.rscale.setZero(m);
    for (int k = 0; k < ws.J.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(ws.J, k); it; ++it)
        ws.rscale[it.row()] = std::max(ws.rscale[it.row()], std::abs(it.value()));
    for (int r = 0; r < m; ++r)
      ws.rscale[r] = ws.rscale[r] > 0.0 ? 1.0 / ws.rscale[r] : 1.0;
    for (int k = 0; k < ws.J.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(ws.J, k); it; ++it)
        it.valueRef() *= ws.rscale[it.row()];

    if (!ws.lu_analyzed) {
      ws.lu.analyzePattern(ws.J);
      ws.lu_analyzed = true;
    }
    ws.lu.factorize(ws.J);
    ws.lu_valid = ws.lu.info() == Eigen::Success;
    ws.lu_dt = dt;
    return ws.lu_valid;
  };

  while (rnorm > target) {
    if (iters >= cfg_.newton_max_iter) return false;

    bool stale = ws.lu_valid;
    if (!stale && !refactorize()) return false;

    ws.rhs = (-ws.r_base.array() * ws.rscale.array()).matrix();
    ws.delta = ws.lu.solve(ws.rhs);
    bool ok = ws.delta.allFinite();

    // backtracking line search on the residual norm; iterates stay inside
    // a wide safety box around the retention window
    double alpha = 1.0, rtry = rnorm;
    if (ok) {
      ok = false;
      for (int t = 0; t < 8; ++t) {
        ws.xp = x + alpha * ws.delta;
        for (int c = 0; c < n; ++c) {
          ws.xp[2 * c + 1] =
              std::clamp(ws.xp[2 * c + 1], pc_lo_ - 1e6, pc_hi_ + 1e6);
          ws.xp[2 * c] = std::clamp(ws.xp[2 * c], -1e8, 1e8);
        }
        asm_(ws.xp, ws.r_pert, nullptr, nullptr, nullptr);
        rtry = ws.r_pert.norm();
        if (std::isfinite(rtry) &&
            (rtry <= (1.0 - 1e-4 * alpha) * rnorm || rtry <= target)) {
          ok = true;
          break;
        }
        alpha *= 0.5;
      }
    }
    if (!ok) {
      if (trace)
        std::fprintf(stderr,
                     "  it=%d stale=%d LINE SEARCH FAIL r=%.6e rtry=%.6e\n",
                     iters, stale ? 1 : 0, rnorm, rtry);
      // a stale Jacobian earns one fresh rebuild at the current iterate
      if (!stale) return false;
      ws.lu_valid = false;
      continue;
    }

    if (trace)
      std::fprintf(stderr,
                   "  it=%d stale=%d alpha=%g r=%.6e -> %.6e (target %.3e)\n",
                   iters, stale ? 1 : 0, alpha, rnorm, rtry, target);

    x.swap(ws.xp);
    ws.r_base.swap(ws.r_pert);
    // keep the factors only while full steps contract fast
    if (alpha < 1.0 || rtry > 0.3 * rnorm) ws.lu_valid = false;
    rnorm = rtry;
    ++iters;
  }

  for (int c = 0; c < n; ++c) {
    st.p_l[c] = x[2 * c];
    st.p_c[c] = x[2 * c + 1];
  }
  // converged-state velocities and gas mass flux
  ws.vl.resize(g_);
  ws.vg.resize(g_);
  ws.mg.resize(g_);
  asm_(x, ws.r_pert, &ws.vl, &ws.vg, &ws.mg);
  return true;
}

StepResult FlowSolver::adaptive_step(FieldState& st,
                                     const grid::ComponentRegistry& reg, int o2_g,
                                     const FlowBC& bc, double dt_target) {
  const int n = g_.cells();
  const double RT = fluid_.R_gas * fluid_.T;
  if (!ws_) ws_ = std::make_unique<Workspace>();
  Workspace& ws = *ws_;
  if (ws.n != n) {
    ws.n = n;
    ws.x.resize(2 * n);
    ws.xp.resize(2 * n);
    ws.r_base.resize(2 * n);
    ws.r_pert.resize(2 * n);
    ws.x_prev_start.resize(2 * n);
    ws.have_prev = false;
    ws.eps.assign(n, 0.0);
    ws.trips.reserve(static_cast<std::size_t>(20 * n));
    ws.J.resize(2 * n, 2 * n);
    ws.colors.assign(5, {});
    for (int c = 0; c < n; ++c)
      ws.colors[(c % g_.nx + 2 * (c / g_.nx)) % 5].push_back(c);
    ws.lu_analyzed = false;
    ws.lu_valid = false;
  }
  ws.ports = build_port_map(g_, bc);

  // frozen gas composition and step-start storage (on the extended curve,
  // so the ledger matches the assembler exactly across steps)
  const ExtCurve ext{&vg_,     pc_lo_,       pc_hi_,
                     cfg_.s_max, vg_.s_l_min, slope_lo_,
                     slope_hi_};
  ws.m_mix.assign(n, M_ref_);
  ws.theta_l_old_v.resize(n);
  ws.trg_old_v.resize(n);
  ws.s_old.resize(n);
  const double V = g_.cell_volume();
  for (int c = 0; c < n; ++c) {
    if (o2_g >= 0) {
      const double p_g = std::max(st.p_l[c] + st.p_c[c], 1.0);
      const double xo2 =
          std::clamp(st.conc[o2_g][c] / M_o2_ * RT / p_g, 0.0, 1.0);
      ws.m_mix[c] = M_ref_ + xo2 * (M_o2_ - M_ref_);
    }
    const double s_ext = ext(st.p_c[c]);
    ws.s_old[c] = s_ext;
    ws.theta_l_old_v[c] = medium_.phi * s_ext * V;
    ws.trg_old_v[c] = medium_.phi * (1.0 - s_ext) * st.rho_g[c] * V;
  }

  const std::vector<double> pl0 = st.p_l, pc0 = st.p_c;

  StepResult res;
  double dt = std::min(dt_next_, dt_target);
  res.attempts = 0;
  bool dt_reduced = false;
  while (true) {
    ++res.attempts;
    if (res.attempts > 60)
      throw SolverError("two-phase step: retry budget exhausted");
    int iters = 0;
    bool ok = newton_solve(st, bc, dt, ws, iters);
    double max_dsat = 0.0;
    if (ok) {
      for (int c = 0; c < n; ++c)
        max_dsat = std::max(max_dsat, std::abs(ext(st.p_c[c]) - ws.s_old[c]));
      if (max_dsat > cfg_.max_sat_change) ok = false;
    }
    if (!ok) {
      st.p_l = pl0;
      st.p_c = pc0;
      if (ws.have_prev) { // retry cold at the same dt before shrinking
        ws.have_prev = false;
        continue;
      }
      dt *= 0.5;
      dt_reduced = true;
      if (dt < cfg_.dt_min)
        throw SolverError("two-phase step: dt underflow after repeated failures");
      continue;
    }

    res.dt = dt;
    res.newton_iters = iters;
    res.max_dsat = max_dsat;
    if (iters <= cfg_.easy_iters && !dt_reduced)
      dt_next_ = std::min(std::max(dt * cfg_.grow_factor, dt_next_), cfg_.dt_max);
    else
      dt_next_ = std::max(dt, cfg_.dt_min);
    for (int c = 0; c < n; ++c) {
      ws.x_prev_start[2 * c] = pl0[c];
      ws.x_prev_start[2 * c + 1] = pc0[c];
    }
    ws.dt_prev = dt;
    ws.have_prev = true;
    break;
  }

  grid::update_derived(st, g_, vg_, medium_, fluid_, reg, o2_g, M_ref_);
  st.v_l = ws.vl;
  st.v_g = ws.vg;

  res.theta_l_old.resize(n);
  res.theta_l_new.resize(n);
  res.theta_rho_g_old.resize(n);
  res.theta_rho_g_new.resize(n);
  double sum_rl = 0.0, sum_rg = 0.0, pore_l = 0.0, pore_g = 0.0;
  for (int c = 0; c < n; ++c) {
    const double s_ext = ext(st.p_c[c]);
    res.theta_l_old[c] = ws.theta_l_old_v[c] / V;
    res.theta_l_new[c] = medium_.phi * s_ext;
    res.theta_rho_g_old[c] = ws.trg_old_v[c] / V;
    res.theta_rho_g_new[c] = medium_.phi * (1.0 - s_ext) * st.rho_g[c];
    sum_rl += ws.r_base[2 * c];
    sum_rg += ws.r_base[2 * c + 1];
    pore_l += st.theta_l[c] * V;
    pore_g += st.theta_g[c] * V;
  }
  res.gas_mass_flux = ws.mg;
  res.mass_balance_error =
      std::max(std::abs(sum_rl) * res.dt / std::max(pore_l, 1e-30),
               std::abs(sum_rg) * res.dt / std::max(pore_g, 1e-30));
  return res;
}

}  // namespace fringe::twophase
