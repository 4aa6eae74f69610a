#include "fringe/coupling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "fringe/snapshot.hpp"
#include "fringe/units.hpp"

namespace fringe::coupling {

namespace {

constexpr double t_tol = 1e-6;  // event-matching tolerance [s]

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

std::string seconds_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(t)));
  return buf;
}

std::string cm_tag(double x) {
  char buf[32];
  const double cm = x * 100.0;
  if (std::abs(cm - std::round(cm)) < 1e-9)
    std::snprintf(buf, sizeof buf, "%d", static_cast<int>(std::llround(cm)));
  else
    std::snprintf(buf, sizeof buf, "%g", cm);
  return buf;
}

}  // namespace

double Scenario::total_duration() const {
  double t = 0.0;
  for (const auto& s : stages) t += s.duration;
  return t;
}

void Scenario::validate() const {
  require(kind == "chamber" || kind == "column", "scenario kind must be chamber or column");
  if (kind == "column") {
    column.validate();
    return;
  }
  require(extent_x > 0 && extent_y > 0 && thickness > 0, "domain extents must be positive");
  require(nx > 0 && ny > 0, "grid resolution must be positive");
  vg.validate();
  medium.validate();
  require(fluid.rho_l > 0 && fluid.mu_l > 0 && fluid.mu_g > 0 && fluid.T > 0,
          "fluid parameters must be positive");
  require(fluid.k_H > 0 && fluid.p_atm > 0, "k_H and p_atm must be positive");
  require(atm_o2_mole_fraction >= 0 && atm_o2_mole_fraction <= 1,
          "atmospheric O2 mole fraction outside [0,1]");
  require(M_o2 > 0 && M_ref > 0, "molar masses must be positive");
  require(D_doc >= 0 && D_o2_l >= 0 && D_o2_g >= 0, "diffusivities must be non-negative");
  require(cfl > 0 && cfl <= 0.5, "cfl must lie in (0, 0.5]");
  require(rk_rtol > 0 && stiff_exchange > 0, "reaction tolerances must be positive");
  require(threads >= 1, "threads must be >= 1");
  require(flow.dt_min > 0 && flow.dt_min <= flow.dt_init && flow.dt_init <= flow.dt_max,
          "flow step bounds must satisfy dt_min <= dt_init <= dt_max");
  require(initial_saturation >= vg.s_l_min && initial_saturation <= flow.s_max,
          "initial saturation outside the resolvable range");
  require(!stages.empty(), "at least one stage is required");
  for (const auto& st : stages) {
    require(st.duration > 0, "stage '" + st.name + "': duration must be positive");
    require(st.c_doc >= 0 && st.c_o2 >= 0 && st.c_cells >= 0,
            "stage '" + st.name + "': inflow concentrations must be non-negative");
    for (const auto& [group, rate] : st.rates) {
      (void)rate;
      require(port_groups.count(group) != 0,
              "stage '" + st.name + "' refers to unknown port group '" + group + "'");
    }
  }
  for (const auto& [name, ports] : port_groups) {
    require(!ports.empty(), "port group '" + name + "' is empty");
  }
  const double t_end = total_duration();
  for (double t : output.times)
    require(t >= 0 && t <= t_end + t_tol, "output time outside the scenario duration");
  for (double x : output.profile_x)
    require(x >= 0 && x <= extent_x, "profile position outside the domain");
}

Simulator::Simulator(Scenario sc) : sc_(std::move(sc)) {
  sc_.validate();
  require(sc_.kind == "chamber", "simulator runs chamber scenarios only");
  g_ = grid::StructuredGrid::make(sc_.extent_x, sc_.extent_y, sc_.nx, sc_.ny,
                                  sc_.thickness);
  mc_ = grid::ModelComponents::install(reg_, sc_.D_doc, sc_.D_o2_l, sc_.D_o2_g,
                                       sc_.M_o2);
  st_ = grid::FieldState::make(g_, reg_);

  twophase::TwoPhaseConfig fcfg = sc_.flow;
  flow_ = std::make_unique<twophase::FlowSolver>(g_, sc_.vg, sc_.medium, sc_.fluid,
                                                 fcfg, sc_.M_ref, sc_.M_o2);

  std::fill(st_.conc[mc_.o2_g].begin(), st_.conc[mc_.o2_g].end(), c_atm_o2());
  flow_->init_uniform(st_, reg_, mc_.o2_g, sc_.initial_saturation);

  // stage table with prebuilt flow and transport boundary conditions
  double t0 = 0.0;
  const double w_atm = w_atm_o2();
  for (const auto& def : sc_.stages) {
    StageBC sb;
    sb.def = &def;
    sb.t_begin = t0;
    sb.t_end = t0 + def.duration;
    t0 = sb.t_end;
    sb.flow_bc.atm_o2_mole_fraction = sc_.atm_o2_mole_fraction;
    sb.bc_doc = transport::SweepBC::free(g_);
    sb.bc_o2 = transport::SweepBC::free(g_);
    sb.bc_cells = transport::SweepBC::free(g_);
    sb.bc_gas = transport::SweepBC::free(g_);
    for (const auto& bf : grid::boundary_faces(g_, grid::Wall::top))
      sb.bc_gas.cin_y[bf.face] = w_atm;
    for (const auto& [group, rate] : def.rates) {
      const auto& ports = sc_.port_groups.at(group);
      const double per_port = rate / static_cast<double>(ports.size());
      for (const auto& p : ports) {
        sb.flow_bc.liquid_ports.push_back({p, per_port});
        if (per_port <= 0.0) continue;
        for (const auto& bf : grid::port_faces(g_, p)) {
          auto& cin = (p.wall == grid::Wall::left || p.wall == grid::Wall::right)
                          ? sb.bc_doc.cin_x
                          : sb.bc_doc.cin_y;
          auto& cin_o2 = (&cin == &sb.bc_doc.cin_x) ? sb.bc_o2.cin_x : sb.bc_o2.cin_y;
          auto& cin_x = (&cin == &sb.bc_doc.cin_x) ? sb.bc_cells.cin_x : sb.bc_cells.cin_y;
          cin[bf.face] = def.c_doc;
          cin_o2[bf.face] = def.c_o2;
          cin_x[bf.face] = def.c_cells;
        }
      }
    }
    stages_.push_back(std::move(sb));
  }

  boundary_net_.assign(reg_.size(), 0.0);
  theta_work_.assign(g_.cells(), 0.0);
  w_gas_.assign(g_.cells(), 0.0);
  rho_g_old_.assign(g_.cells(), 0.0);
  theta_g_old_.assign(g_.cells(), 0.0);
}

double Simulator::c_atm_o2() const {
  const auto& f = sc_.fluid;
  return sc_.atm_o2_mole_fraction * f.p_atm / (f.R_gas * f.T) * sc_.M_o2;
}

double Simulator::w_atm_o2() const {
  const double x = sc_.atm_o2_mole_fraction;
  const double m = x * sc_.M_o2 + (1.0 - x) * sc_.M_ref;
  return x * sc_.M_o2 / m;
}

bool Simulator::finished() const { return t_ >= sc_.total_duration() - t_tol; }

const Simulator::StageBC& Simulator::stage_at(double t) const {
  for (const auto& sb : stages_)
    if (t < sb.t_end - t_tol) return sb;
  return stages_.back();
}

double Simulator::next_event(double t) const {
  double ev = sc_.total_duration();
  for (const auto& sb : stages_)
    if (sb.t_end > t + t_tol) {
      ev = std::min(ev, sb.t_end);
      break;
    }
  for (double to : sc_.output.times)
    if (to > t + t_tol) {
      ev = std::min(ev, to);
      break;
    }
  return ev;
}

StepDiag Simulator::step() {
  if (finished()) throw SolverError("step() called past the scenario end");
  const StageBC& sb = stage_at(t_);
  const double dt_cap = next_event(t_) - t_;

  // gas oxygen advects as a mass fraction of the mixture; convert against
  // the pre-step density
  rho_g_old_ = st_.rho_g;
  theta_g_old_ = st_.theta_g;
  for (int c = 0; c < g_.cells(); ++c)
    w_gas_[c] = st_.conc[mc_.o2_g][c] / std::max(rho_g_old_[c], 1e-300);

  const twophase::StepResult fr =
      flow_->adaptive_step(st_, reg_, mc_.o2_g, sb.flow_bc, dt_cap);

  StepDiag d;
  d.dt = fr.dt;
  d.newton_iters = fr.newton_iters;
  d.flow_attempts = fr.attempts;
  d.max_dsat = fr.max_dsat;
  d.mass_balance_error = fr.mass_balance_error;

  advect_all(sb, fr, d);
  diffuse_all(fr.dt, d);
  if (sc_.reactions_enabled) react_all(fr.dt, d);

  t_ += fr.dt;
  d.t = t_;
  return d;
}

void Simulator::advect_all(const StageBC& sb, const twophase::StepResult& fr,
                           StepDiag& d) {
  const double dt = fr.dt;
  const int n = g_.cells();
  std::vector<double> trg_now(n), th_tmp(n);
  const int liquid_comps[3] = {mc_.doc, mc_.o2_l, mc_.x_l};
  const transport::SweepBC* liquid_bc[3] = {&sb.bc_doc, &sb.bc_o2, &sb.bc_cells};
  const int gas_order = reg_[mc_.o2_g].regime == grid::Regime::advective2 ? 2 : 1;

  double tau = 0.0;
  while (tau < dt * (1.0 - 1e-12)) {
    const double a = tau / dt;
    for (int c = 0; c < n; ++c) {
      theta_work_[c] = (1.0 - a) * fr.theta_l_old[c] + a * fr.theta_l_new[c];
      trg_now[c] = (1.0 - a) * fr.theta_rho_g_old[c] + a * fr.theta_rho_g_new[c];
    }
    double delta = std::min(transport::cfl_dt(g_, st_.v_l, theta_work_, sc_.cfl),
                            transport::cfl_dt(g_, fr.gas_mass_flux, trg_now, sc_.cfl));
    delta = std::min(delta, dt - tau);
    if (!std::isfinite(delta)) delta = dt - tau;
    if (!(delta > 0.0)) throw SolverError("advection substep collapsed to zero");

    for (int k = 0; k < 3; ++k) {
      th_tmp = theta_work_;
      const auto stats = transport::advect(g_, st_.conc[liquid_comps[k]], th_tmp,
                                           st_.v_l, delta, *liquid_bc[k], 2,
                                           x_first_);
      boundary_net_[liquid_comps[k]] += stats.boundary_in - stats.boundary_out;
      clipped_transport_ += stats.clipped;
      d.clipped_transport += stats.clipped;
    }
    {
      th_tmp = trg_now;
      const auto stats = transport::advect(g_, w_gas_, th_tmp, fr.gas_mass_flux,
                                           delta, sb.bc_gas, gas_order, x_first_);
      boundary_net_[mc_.o2_g] += stats.boundary_in - stats.boundary_out;
      clipped_transport_ += stats.clipped;
      d.clipped_transport += stats.clipped;
    }
    x_first_ = !x_first_;
    tau += delta;
    ++d.substeps;
    if (d.substeps > 2000000) throw SolverError("advection substep budget exhausted");
  }

  for (int c = 0; c < n; ++c)
    st_.conc[mc_.o2_g][c] = w_gas_[c] * st_.rho_g[c];
}

void Simulator::diffuse_all(double dt, StepDiag& d) {
  const double phi = sc_.medium.phi;
  if (reg_[mc_.doc].D > 0) {
    const auto s = transport::diffuse_implicit(g_, st_.conc[mc_.doc], st_.theta_l,
                                               st_.s_l, phi, reg_[mc_.doc].D, dt, {});
    boundary_net_[mc_.doc] += s.boundary_in;
  }
  if (reg_[mc_.o2_l].D > 0) {
    const auto s = transport::diffuse_implicit(g_, st_.conc[mc_.o2_l], st_.theta_l,
                                               st_.s_l, phi, reg_[mc_.o2_l].D, dt, {});
    boundary_net_[mc_.o2_l] += s.boundary_in;
  }
  if (reg_[mc_.o2_g].D > 0) {
    std::vector<double> s_g(g_.cells());
    for (int c = 0; c < g_.cells(); ++c) s_g[c] = 1.0 - st_.s_l[c];
    transport::DiffusionBC bc;
    bc.top_dirichlet = c_atm_o2();
    const auto s = transport::diffuse_implicit(g_, st_.conc[mc_.o2_g], st_.theta_g,
                                               s_g, phi, reg_[mc_.o2_g].D, dt, bc);
    boundary_net_[mc_.o2_g] += s.boundary_in;
  }
  (void)d;
}

void Simulator::react_all(double dt, StepDiag& d) {
  const int n = g_.cells();
  reaction::ReactionParams rp;
  rp.growth = sc_.growth;
  rp.adhesion = sc_.adhesion;
  rp.exchange = {sc_.D_o2_l, sc_.medium.r_p, sc_.medium.kappa_exposed,
                 sc_.fluid.k_H, sc_.medium.phi};
  reaction::IntegrateControl ctl;
  ctl.rtol = sc_.rk_rtol;
  ctl.stiff_lambda_dt = sc_.stiff_exchange;

  const double theta_s = 1.0 - sc_.medium.phi;
  const int n_threads = std::max(1, std::min(sc_.threads, n));
  struct Partial {
    long steps = 0;
    int reduced = 0;
    double clipped = 0.0;
    std::exception_ptr error;
  };
  std::vector<Partial> parts(n_threads);

  auto work = [&](int tid) {
    Partial& pr = parts[tid];
    try {
      const int lo = static_cast<int>(static_cast<long>(n) * tid / n_threads);
      const int hi = static_cast<int>(static_cast<long>(n) * (tid + 1) / n_threads);
      for (int c = lo; c < hi; ++c) {
        const int i = c % g_.nx, j = c / g_.nx;
        reaction::CellReactionState cell;
        cell.y = {st_.conc[mc_.doc][c], st_.conc[mc_.o2_l][c], st_.conc[mc_.x_l][c],
                  st_.conc[mc_.x_s][c], st_.conc[mc_.o2_g][c]};
        cell.theta_l = st_.theta_l[c];
        cell.theta_g = st_.theta_g[c];
        cell.theta_s = theta_s;
        cell.s_l = st_.s_l[c];
        cell.s_g = 1.0 - st_.s_l[c];
        const double vx = 0.5 * (st_.v_l.x[g_.xface(i, j)] + st_.v_l.x[g_.xface(i + 1, j)]);
        const double vy = 0.5 * (st_.v_l.y[g_.yface(i, j)] + st_.v_l.y[g_.yface(i, j + 1)]);
        cell.v_l_norm = std::hypot(vx, vy) / std::max(cell.theta_l, 1e-12);
        const auto stats = reaction::integrate_cell(cell, rp, dt, ctl);
        st_.conc[mc_.doc][c] = cell.y[0];
        st_.conc[mc_.o2_l][c] = cell.y[1];
        st_.conc[mc_.x_l][c] = cell.y[2];
        st_.conc[mc_.x_s][c] = cell.y[3];
        st_.conc[mc_.o2_g][c] = cell.y[4];
        pr.steps += stats.steps;
        pr.reduced += stats.reduced ? 1 : 0;
        pr.clipped += stats.clipped;
      }
    } catch (...) {
      pr.error = std::current_exception();
    }
  };

  if (n_threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int tid = 0; tid < n_threads; ++tid) pool.emplace_back(work, tid);
    for (auto& th : pool) th.join();
  }
  for (const auto& pr : parts) {
    if (pr.error) std::rethrow_exception(pr.error);
    d.reaction_steps += pr.steps;
    d.reduced_cells += pr.reduced;
    d.clipped_reaction += pr.clipped;
  }
  clipped_reaction_ += d.clipped_reaction;
}

Totals Simulator::totals() const {
  Totals tt;
  tt.mass.assign(reg_.size(), 0.0);
  const double V = g_.cell_volume();
  const double theta_s = 1.0 - sc_.medium.phi;
  for (int c = 0; c < g_.cells(); ++c) {
    tt.liquid_volume += st_.theta_l[c] * V;
    for (int k = 0; k < reg_.size(); ++k) {
      double theta = theta_s;
      if (reg_[k].phase == grid::CompPhase::liquid) theta = st_.theta_l[c];
      if (reg_[k].phase == grid::CompPhase::gas) theta = st_.theta_g[c];
      tt.mass[k] += theta * st_.conc[k][c] * V;
    }
  }
  return tt;
}

RunSummary Simulator::run(const std::string& out_dir, const OutputHook& hook) {
  namespace fs = std::filesystem;
  const auto wall0 = std::chrono::steady_clock::now();
  RunSummary rs;

  std::ofstream steps_csv, report_csv;
  const bool emit = !out_dir.empty();
  if (emit) {
    fs::create_directories(fs::path(out_dir) / "snapshots");
    steps_csv.open(fs::path(out_dir) / "steps.csv");
    report_csv.open(fs::path(out_dir) / "report.csv");
    if (!steps_csv || !report_csv)
      throw SolverError("cannot create output files in " + out_dir);
    steps_csv << "t_s,dt_s,newton_iters,max_dsat,mass_balance_error,substeps,"
                 "reaction_steps,reduced_cells\n";
    report_csv << "t_s,liquid_volume_m3";
    for (int k = 0; k < reg_.size(); ++k) report_csv << ",mass_" << reg_[k].name << "_kg";
    for (int k = 0; k < reg_.size(); ++k)
      report_csv << ",boundary_net_" << reg_[k].name << "_kg";
    report_csv << ",clipped_transport_kg,clipped_reaction\n";
  }

  auto write_report_row = [&](double t) {
    if (!emit) return;
    const Totals tt = totals();
    report_csv << t << ',' << tt.liquid_volume;
    for (double m : tt.mass) report_csv << ',' << m;
    for (double b : boundary_net_) report_csv << ',' << b;
    report_csv << ',' << clipped_transport_ << ',' << clipped_reaction_ << '\n';
  };

  auto write_outputs = [&](double t) {
    if (emit) {
      const std::string base = out_dir + "/snapshots/t_" + seconds_tag(t);
      std::vector<std::string> names = {"s_l", "p_l", "p_c", "theta_l"};
      std::vector<std::string> units = {"-", "Pa", "Pa", "-"};
      std::vector<const std::vector<double>*> fields = {&st_.s_l, &st_.p_l, &st_.p_c,
                                                        &st_.theta_l};
      for (int k = 0; k < reg_.size(); ++k) {
        names.push_back("c_" + reg_[k].name);
        units.push_back("kg/m^3");
        fields.push_back(&st_.conc[k]);
      }
      snapshot::write_snapshot(base + ".dat", g_, t, names, units, fields);
      for (double x : sc_.output.profile_x) {
        const auto rows = snapshot::extract_profile(g_, st_, mc_, sc_.medium.phi, x);
        snapshot::write_profile(
            out_dir + "/snapshots/profile_x" + cm_tag(x) + "_t" + seconds_tag(t) + ".csv",
            t, rows);
      }
    }
    if (hook) hook(t, st_);
  };

  write_report_row(0.0);
  write_outputs(0.0);

  const double t_end = sc_.total_duration();
  std::size_t out_idx = 0;
  const auto& times = sc_.output.times;
  while (out_idx < times.size() && times[out_idx] <= t_tol) ++out_idx;

  while (t_ < t_end - t_tol) {
    const StepDiag d = step();
    ++rs.steps;
    if (emit)
      steps_csv << d.t << ',' << d.dt << ',' << d.newton_iters << ',' << d.max_dsat
                << ',' << d.mass_balance_error << ',' << d.substeps << ','
                << d.reaction_steps << ',' << d.reduced_cells << '\n';
    write_report_row(d.t);
    bool at_output = false;
    while (out_idx < times.size() && t_ >= times[out_idx] - t_tol) {
      at_output = true;
      ++out_idx;
    }
    if (at_output || t_ >= t_end - t_tol) write_outputs(t_);
  }

  if (emit) {
    for (double x : sc_.output.profile_x) {
      const auto rows = snapshot::extract_profile(g_, st_, mc_, sc_.medium.phi, x);
      snapshot::write_profile(out_dir + "/profile_x" + cm_tag(x) + ".csv", t_, rows);
    }
  }

  rs.t_end = t_;
  rs.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  return rs;
}

}  // namespace fringe::coupling
