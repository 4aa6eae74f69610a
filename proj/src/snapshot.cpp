#include "fringe/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fringe/errors.hpp"
#include "fringe/units.hpp"

namespace fringe::snapshot {

std::string write_snapshot(const std::string& path, const grid::StructuredGrid& g,
                           double t, const std::vector<std::string>& names,
                           const std::vector<std::string>& units,
                           const std::vector<const std::vector<double>*>& fields) {
  std::ofstream out(path);
  if (!out) throw SolverError("cannot open snapshot file " + path);
  out << "# t = " << t << " s\n";
  out << "# columns: x[m] y[m]";
  for (std::size_t k = 0; k < names.size(); ++k)
    out << ' ' << names[k] << '[' << units[k] << ']';
  out << '\n';
  char buf[64];
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int c = g.cell(i, j);
      std::snprintf(buf, sizeof buf, "%.6g %.6g", g.xc(i), g.yc(j));
      out << buf;
      for (const auto* f : fields) {
        std::snprintf(buf, sizeof buf, " %.9g", (*f)[c]);
        out << buf;
      }
      out << '\n';
    }
    out << '\n';  // blank line between rows for plotting tools
  }
  return path;
}

std::vector<ProfileRow> extract_profile(const grid::StructuredGrid& g,
                                        const grid::FieldState& st,
                                        const grid::ModelComponents& mc,
                                        double phi, double x_cut) {
  int i = static_cast<int>(std::floor((x_cut - g.x0) / g.dx));
  if (i < 0) i = 0;
  if (i >= g.nx) i = g.nx - 1;
  std::vector<ProfileRow> rows(g.ny);
  for (int j = 0; j < g.ny; ++j) {
    const int c = g.cell(i, j);
    const double theta_s = 1.0 - phi;
    ProfileRow& r = rows[j];
    r.y = g.yc(j);
    r.s_l = st.s_l[c];
    r.c_S = st.conc[mc.doc][c];
    r.c_l_O2 = st.conc[mc.o2_l][c];
    r.c_g_O2 = st.conc[mc.o2_g][c];
    const double m_l = st.theta_l[c] * st.conc[mc.x_l][c];
    const double m_s = theta_s * st.conc[mc.x_s][c];
    r.X_l = units::cells_per_ml_from_conc(m_l);
    r.X_t = units::cells_per_ml_from_conc(m_l + m_s);
  }
  return rows;
}

void write_profile(const std::string& path, double t,
                   const std::vector<ProfileRow>& rows) {
  std::ofstream out(path);
  if (!out) throw SolverError("cannot open profile file " + path);
  out << "# t = " << t << " s\n";
  out << "y_m,s_l,X_t_cells_per_ml,X_l_cells_per_ml,c_S_kg_m3,c_l_O2_kg_m3,c_g_O2_kg_m3\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", r.y,
                  r.s_l, r.X_t, r.X_l, r.c_S, r.c_l_O2, r.c_g_O2);
    out << buf;
  }
}

}  // namespace fringe::snapshot
