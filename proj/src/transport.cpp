#include "fringe/transport.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

#include "fringe/constitutive.hpp"

namespace fringe::transport {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

double cfl_dt(const grid::StructuredGrid& g, const grid::FaceField& v,
              const std::vector<double>& theta, double cfl) {
  double dt = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) {
      const double vf = v.x[g.xface(i, j)];
      if (vf == 0.0) continue;
      // upwind cell; boundary inflow uses the receiving cell
      const int iu = vf > 0.0 ? i - 1 : i;
      const int ic = std::clamp(iu, 0, g.nx - 1);
      dt = std::min(dt, theta[g.cell(ic, j)] * g.dx / std::abs(vf));
    }
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double vf = v.y[g.yface(i, j)];
      if (vf == 0.0) continue;
      const int ju = vf > 0.0 ? j - 1 : j;
      const int jc = std::clamp(ju, 0, g.ny - 1);
      dt = std::min(dt, theta[g.cell(i, jc)] * g.dy / std::abs(vf));
    }
  return cfl * dt;
}

namespace {

// One 1D sweep over a line of n cells. cl[0..n+1] holds the line with two
// ghost entries, th[1..n] the phase content (updated in place), vf[0..n]
// the face velocities. Returns boundary mass totals via the stats.
void sweep_line(int n, double h, double area, double vol, double dt, int order,
                std::vector<double>& cl, std::vector<double>& th,
                const std::vector<double>& vf, std::vector<double>& flux,
                AdvectionStats& st) {
  for (int f = 0; f <= n; ++f) {
    const double v = vf[f];
    if (v == 0.0) {
      flux[f] = 0.0;
      continue;
    }
    const int up = v > 0.0 ? f : f + 1; // index into cl (ghost-padded)
    double c_face = cl[up];
    if (order == 2 && up >= 1 && up <= n) {
      const double slope = minmod(cl[up] - cl[up - 1], cl[up + 1] - cl[up]) / h;
      const double th_up = th[up];
      const double nu = th_up > 0.0 ? std::abs(v) * dt / (th_up * h) : 1.0;
      c_face += 0.5 * std::copysign(1.0, v) * (1.0 - nu) * slope * h;
    }
    flux[f] = v * c_face;
  }
  for (int i = 1; i <= n; ++i) {
    const double div_v = (vf[i] - vf[i - 1]) * area / vol;
    const double div_f = (flux[i] - flux[i - 1]) * area / vol;
    const double th_new = th[i] - dt * div_v;
    double tc = th[i] * cl[i] - dt * div_f;
    if (tc < 0.0) {
      st.clipped += -tc * vol;
      tc = 0.0;
    }
    th[i] = th_new;
    cl[i] = th_new > 0.0 ? tc / th_new : 0.0;
  }
  const double m_lo = dt * area * flux[0];
  const double m_hi = dt * area * flux[n];
  if (m_lo > 0.0) st.boundary_in += m_lo; else st.boundary_out += -m_lo;
  if (m_hi < 0.0) st.boundary_in += -m_hi; else st.boundary_out += m_hi;
}

void sweep_x(const grid::StructuredGrid& g, std::vector<double>& c,
             std::vector<double>& theta, const grid::FaceField& v, double dt,
             const SweepBC& bc, int order, AdvectionStats& st) {
  const int n = g.nx;
  std::vector<double> cl(n + 2), th(n + 1), vf(n + 1), flux(n + 1);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < n; ++i) {
      cl[i + 1] = c[g.cell(i, j)];
      th[i + 1] = theta[g.cell(i, j)];
    }
    for (int i = 0; i <= n; ++i) vf[i] = v.x[g.xface(i, j)];
    const double cin_l = bc.cin_x[g.xface(0, j)];
    const double cin_r = bc.cin_x[g.xface(n, j)];
    cl[0] = (vf[0] > 0.0 && std::isfinite(cin_l)) ? cin_l : cl[1];
    cl[n + 1] = (vf[n] < 0.0 && std::isfinite(cin_r)) ? cin_r : cl[n];
    sweep_line(n, g.dx, g.xface_area(), g.cell_volume(), dt, order, cl, th, vf,
               flux, st);
    for (int i = 0; i < n; ++i) {
      c[g.cell(i, j)] = cl[i + 1];
      theta[g.cell(i, j)] = th[i + 1];
    }
  }
}

void sweep_y(const grid::StructuredGrid& g, std::vector<double>& c,
             std::vector<double>& theta, const grid::FaceField& v, double dt,
             const SweepBC& bc, int order, AdvectionStats& st) {
  const int n = g.ny;
  std::vector<double> cl(n + 2), th(n + 1), vf(n + 1), flux(n + 1);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < n; ++j) {
      cl[j + 1] = c[g.cell(i, j)];
      th[j + 1] = theta[g.cell(i, j)];
    }
    for (int j = 0; j <= n; ++j) vf[j] = v.y[g.yface(i, j)];
    const double cin_b = bc.cin_y[g.yface(i, 0)];
    const double cin_t = bc.cin_y[g.yface(i, n)];
    cl[0] = (vf[0] > 0.0 && std::isfinite(cin_b)) ? cin_b : cl[1];
    cl[n + 1] = (vf[n] < 0.0 && std::isfinite(cin_t)) ? cin_t : cl[n];
    sweep_line(n, g.dy, g.yface_area(), g.cell_volume(), dt, order, cl, th, vf,
               flux, st);
    for (int j = 0; j < n; ++j) {
      c[g.cell(i, j)] = cl[j + 1];
      theta[g.cell(i, j)] = th[j + 1];
    }
  }
}

}  // namespace

AdvectionStats advect(const grid::StructuredGrid& g, std::vector<double>& c,
                      std::vector<double>& theta, const grid::FaceField& v,
                      double dt, const SweepBC& bc, int order, bool x_first) {
  AdvectionStats st;
  if (x_first) {
    sweep_x(g, c, theta, v, dt, bc, order, st);
    sweep_y(g, c, theta, v, dt, bc, order, st);
  } else {
    sweep_y(g, c, theta, v, dt, bc, order, st);
    sweep_x(g, c, theta, v, dt, bc, order, st);
  }
  return st;
}

DiffusionStats diffuse_implicit(const grid::StructuredGrid& g,
                                std::vector<double>& c,
                                const std::vector<double>& theta,
                                const std::vector<double>& s_phase, double phi,
                                double D_molecular, double dt,
                                const DiffusionBC& bc) {
  DiffusionStats st;
  const int n = g.cells();
  const double vol = g.cell_volume();

  std::vector<double> d(n);
  for (int k = 0; k < n; ++k)
    d[k] = constitutive::effective_diffusion(s_phase[k], phi, D_molecular);

  auto harmonic = [](double a, double b) {
    return (a > 0.0 && b > 0.0) ? 2.0 * a * b / (a + b) : 0.0;
  };

  using Trip = Eigen::Triplet<double>;
  std::vector<Trip> trips;
  trips.reserve(static_cast<std::size_t>(5 * n));
  Eigen::VectorXd rhs(n), diag = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) rhs[k] = theta[k] * c[k] * vol;

  auto couple = [&](int a, int b, double trans) {
    if (trans <= 0.0) return;
    diag[a] += trans;
    diag[b] += trans;
    trips.emplace_back(a, b, -trans);
    trips.emplace_back(b, a, -trans);
  };

  const double tx = dt * g.xface_area() / g.dx;
  const double ty = dt * g.yface_area() / g.dy;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i)
      couple(g.cell(i, j), g.cell(i + 1, j),
             tx * harmonic(d[g.cell(i, j)], d[g.cell(i + 1, j)]));
  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      couple(g.cell(i, j), g.cell(i, j + 1),
             ty * harmonic(d[g.cell(i, j)], d[g.cell(i, j + 1)]));

  std::vector<double> dirichlet_coef(n, 0.0);
  if (std::isfinite(bc.top_dirichlet)) {
    // half-cell two-point flux to the boundary value
    for (int i = 0; i < g.nx; ++i) {
      const int k = g.cell(i, g.ny - 1);
      const double trans = dt * g.yface_area() * d[k] / (0.5 * g.dy);
      diag[k] += trans;
      rhs[k] += trans * bc.top_dirichlet;
      dirichlet_coef[k] = trans;
    }
  }

  for (int k = 0; k < n; ++k) trips.emplace_back(k, k, theta[k] * vol + diag[k]);

  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper>
      cg;
  cg.setTolerance(1e-12);
  cg.setMaxIterations(4 * n);
  cg.compute(A);
  Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(c.data(), n);
  Eigen::VectorXd x = cg.solveWithGuess(rhs, x0);
  if (cg.info() != Eigen::Success)
    throw SolverError("diffuse_implicit: CG did not converge");
  st.cg_iterations = static_cast<int>(cg.iterations());

  for (int k = 0; k < n; ++k) {
    if (dirichlet_coef[k] > 0.0) // the NaN no-flux sentinel must not leak in
      st.boundary_in += dirichlet_coef[k] * (bc.top_dirichlet - x[k]);
    c[k] = x[k];
  }
  return st;
}

}  // namespace fringe::transport
