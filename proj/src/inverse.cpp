#include "fringe/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "fringe/errors.hpp"
#include "fringe/transport.hpp"

namespace fringe::inverse {

std::vector<double> ColumnExperiment::sample_times() const {
  std::vector<double> ts;
  for (double t = sample_interval; t <= sample_until + 1e-9; t += sample_interval)
    ts.push_back(t);
  return ts;
}

void ColumnExperiment::validate() const {
  auto req = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  req(length > 0, "column length must be positive");
  req(porosity > 0 && porosity < 1, "column porosity outside (0,1)");
  req(pore_velocity > 0, "column pore velocity must be positive");
  req(c_in > 0, "column inflow concentration must be positive");
  req(pulse_duration > 0, "column pulse duration must be positive");
  req(sample_interval > 0 && sample_until >= sample_interval,
      "column sampling window is empty");
  req(n_cells >= 8, "column needs at least 8 cells");
  req(cfl > 0 && cfl <= 0.5, "column cfl must lie in (0, 0.5]");
}

std::vector<double> breakthrough_forward(const ColumnExperiment& ex,
                                         const reaction::AdhesionParams& ap) {
  const auto g = grid::StructuredGrid::make(ex.length, 0.01, ex.n_cells, 1, 0.01);
  const int n = g.cells();
  const double v_darcy = ex.pore_velocity * ex.porosity;

  grid::FaceField v;
  v.resize(g);
  std::fill(v.x.begin(), v.x.end(), v_darcy);

  std::vector<double> theta(n, ex.porosity), th_tmp(n);
  std::vector<double> c(n, 0.0), c_s(n, 0.0);

  // only attachment/detachment acts: flow is steady and saturated, growth
  // and exchange are off (s_g = 0 gives zero interfacial area anyway)
  reaction::ReactionParams rp;
  rp.adhesion = ap;
  reaction::IntegrateControl ctl;
  ctl.rtol = 1e-8;

  transport::SweepBC bc = transport::SweepBC::free(g);
  const int inflow_face = g.xface(0, 0);
  const double dt_cfl = ex.cfl * ex.porosity * g.dx / v_darcy;

  const auto times = ex.sample_times();
  std::vector<double> out(times.size(), 0.0);
  double t = 0.0;
  bool x_first = true;
  for (std::size_t si = 0; si < times.size(); ++si) {
    const double t_target = times[si];
    while (t < t_target - 1e-12) {
      double delta = std::min(dt_cfl, t_target - t);
      if (t < ex.pulse_duration) delta = std::min(delta, ex.pulse_duration - t);
      bc.cin_x[inflow_face] = t < ex.pulse_duration ? ex.c_in : 0.0;
      th_tmp = theta;
      transport::advect(g, c, th_tmp, v, delta, bc, 2, x_first);
      x_first = !x_first;
      for (int i = 0; i < n; ++i) {
        reaction::CellReactionState cell;
        cell.y = {0.0, 0.0, c[i], c_s[i], 0.0};
        cell.theta_l = ex.porosity;
        cell.theta_g = 0.0;
        cell.theta_s = 1.0 - ex.porosity;
        cell.s_l = 1.0;
        cell.s_g = 0.0;
        cell.v_l_norm = ex.pore_velocity;
        reaction::integrate_cell(cell, rp, delta, ctl);
        c[i] = cell.y[2];
        c_s[i] = cell.y[3];
      }
      t += delta;
    }
    out[si] = c[n - 1];
  }
  return out;
}

LMSummary levenberg_marquardt(
    const std::function<std::vector<double>(const std::vector<double>&)>& residuals,
    std::vector<double> start, const LMOptions& opts) {
  const int np = static_cast<int>(start.size());
  for (double p : start)
    if (!(p > 0.0)) throw ConfigError("log-space optimizer needs positive start values");

  Eigen::VectorXd u(np);
  for (int j = 0; j < np; ++j) u[j] = std::log(start[j]);

  LMSummary sum;
  auto eval = [&](const Eigen::VectorXd& uu) {
    std::vector<double> p(np);
    for (int j = 0; j < np; ++j) p[j] = std::exp(uu[j]);
    const auto rv = residuals(p);
    ++sum.evaluations;
    return Eigen::Map<const Eigen::VectorXd>(rv.data(), rv.size()).eval();
  };

  Eigen::VectorXd r = eval(u);
  double rss = r.squaredNorm();
  double lam = opts.lambda0;
  bool converged = false;

  for (int iter = 0; iter < opts.max_iter && !converged; ++iter) {
    ++sum.iterations;
    const auto m = r.size();
    Eigen::MatrixXd J(m, np);
    for (int j = 0; j < np; ++j) {
      Eigen::VectorXd up = u;
      const double h = opts.fd_rel * std::max(1.0, std::abs(u[j]));
      up[j] += h;
      J.col(j) = (eval(up) - r) / h;
    }
    const Eigen::VectorXd grad = J.transpose() * r;
    if (grad.lpNorm<Eigen::Infinity>() < opts.gtol) {
      converged = true;
      break;
    }
    const Eigen::MatrixXd A = J.transpose() * J;
    const double diag_floor = 1e-12 * std::max(A.diagonal().maxCoeff(), 1e-300);

    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd M = A;
      for (int j = 0; j < np; ++j)
        M(j, j) += lam * std::max(A(j, j), diag_floor);
      const Eigen::VectorXd delta = M.ldlt().solve(-grad);
      const Eigen::VectorXd r_try = eval(u + delta);
      const double rss_try = r_try.squaredNorm();
      if (rss_try < rss) {
        const double drop = (rss - rss_try) / std::max(rss, 1e-300);
        u += delta;
        r = r_try;
        rss = rss_try;
        lam = std::max(lam / opts.lambda_factor, 1e-14);
        accepted = true;
        if (drop < opts.ftol) converged = true;
      } else {
        lam *= opts.lambda_factor;
        if (lam > opts.lambda_max) break;  // stalled
      }
    }
    if (!accepted) break;
  }

  sum.params.resize(np);
  for (int j = 0; j < np; ++j) sum.params[j] = std::exp(u[j]);
  sum.rss = rss;
  sum.converged = converged;
  return sum;
}

FitResult fit_adhesion(const ColumnExperiment& ex,
                       const std::vector<double>& observed,
                       const reaction::AdhesionParams& start,
                       const LMOptions& opts) {
  ex.validate();
  if (observed.size() != ex.sample_times().size())
    throw ConfigError("observed breakthrough length does not match the sampling grid");

  auto residuals = [&](const std::vector<double>& p) {
    reaction::AdhesionParams ap;
    ap.k_att = p[0];
    ap.k_det = p[1];
    ap.c_s_X_max = p[2];
    auto model = breakthrough_forward(ex, ap);
    for (std::size_t i = 0; i < model.size(); ++i) model[i] -= observed[i];
    return model;
  };

  const auto sum = levenberg_marquardt(
      residuals, {start.k_att, start.k_det, start.c_s_X_max}, opts);

  FitResult fr;
  fr.params.k_att = sum.params[0];
  fr.params.k_det = sum.params[1];
  fr.params.c_s_X_max = sum.params[2];
  fr.rss = sum.rss;
  fr.iterations = sum.iterations;
  fr.evaluations = sum.evaluations;
  fr.converged = sum.converged;
  fr.model = breakthrough_forward(ex, fr.params);
  return fr;
}

std::vector<double> add_noise(const std::vector<double>& clean, double sigma,
                              unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> out(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i)
    out[i] = std::max(0.0, clean[i] * (1.0 + sigma * nd(rng)));
  return out;
}

void write_breakthrough_csv(const std::string& path,
                            const std::vector<double>& times,
                            const std::vector<double>& conc) {
  std::ofstream out(path);
  if (!out) throw SolverError("cannot open " + path);
  out << "t_seconds,c_out\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    out << times[i] << ',' << conc[i] << '\n';
}

void read_breakthrough_csv(const std::string& path, std::vector<double>& times,
                           std::vector<double>& conc) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open breakthrough file " + path);
  times.clear();
  conc.clear();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.find_first_not_of("0123456789.,+-eE \t") != std::string::npos)
      continue;  // header
    std::istringstream ss(line);
    double t, c;
    char comma;
    if (!(ss >> t >> comma >> c) || comma != ',')
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 't_seconds,c_out'");
    times.push_back(t);
    conc.push_back(c);
  }
  if (times.empty()) throw ConfigError(path + ": no data rows");
}

}  // namespace fringe::inverse
