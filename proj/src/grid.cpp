#include "fringe/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fringe::grid {

const char* wall_name(Wall w) {
  switch (w) {
    case Wall::left: return "left";
    case Wall::right: return "right";
    case Wall::bottom: return "bottom";
    case Wall::top: return "top";
  }
  return "?";
}

StructuredGrid StructuredGrid::make(double extent_x, double extent_y, int nx, int ny,
                                    double thickness, double x0, double y0) {
  if (nx < 1 || ny < 1) throw ConfigError("grid resolution must be at least 1x1");
  if (!(extent_x > 0.0 && extent_y > 0.0 && thickness > 0.0))
    throw ConfigError("grid extents must be positive");
  StructuredGrid g;
  g.nx = nx;
  g.ny = ny;
  g.dx = extent_x / nx;
  g.dy = extent_y / ny;
  g.x0 = x0;
  g.y0 = y0;
  g.thickness = thickness;
  return g;
}

std::vector<BoundaryFace> boundary_faces(const StructuredGrid& g, Wall w) {
  std::vector<BoundaryFace> out;
  switch (w) {
    case Wall::left:
      out.reserve(g.ny);
      for (int j = 0; j < g.ny; ++j)
        out.push_back({g.xface(0, j), g.cell(0, j), g.yc(j)});
      break;
    case Wall::right:
      out.reserve(g.ny);
      for (int j = 0; j < g.ny; ++j)
        out.push_back({g.xface(g.nx, j), g.cell(g.nx - 1, j), g.yc(j)});
      break;
    case Wall::bottom:
      out.reserve(g.nx);
      for (int i = 0; i < g.nx; ++i)
        out.push_back({g.yface(i, 0), g.cell(i, 0), g.xc(i)});
      break;
    case Wall::top:
      out.reserve(g.nx);
      for (int i = 0; i < g.nx; ++i)
        out.push_back({g.yface(i, g.ny), g.cell(i, g.ny - 1), g.xc(i)});
      break;
  }
  return out;
}

std::vector<BoundaryFace> port_faces(const StructuredGrid& g, const PortSpec& p) {
  const auto all = boundary_faces(g, p.wall);
  std::vector<BoundaryFace> out;
  const double lo = p.center - 0.5 * p.width;
  const double hi = p.center + 0.5 * p.width;
  for (const auto& f : all)
    if (f.s >= lo && f.s <= hi) out.push_back(f);
  if (out.empty()) {
    const auto nearest =
        std::min_element(all.begin(), all.end(), [&](const auto& a, const auto& b) {
          return std::abs(a.s - p.center) < std::abs(b.s - p.center);
        });
    out.push_back(*nearest);
  }
  return out;
}

int ComponentRegistry::add(ComponentSpec c) {
  if (find(c.name) >= 0) throw ConfigError("duplicate component name: " + c.name);
  comps.push_back(std::move(c));
  return static_cast<int>(comps.size()) - 1;
}

int ComponentRegistry::find(const std::string& name) const {
  for (std::size_t k = 0; k < comps.size(); ++k)
    if (comps[k].name == name) return static_cast<int>(k);
  return -1;
}

ModelComponents ModelComponents::install(ComponentRegistry& reg, double D_doc,
                                         double D_o2_l, double D_o2_g, double M_o2) {
  ModelComponents mc;
  mc.doc = reg.add({"doc", CompPhase::liquid, Regime::advective2, D_doc, 0.0});
  mc.o2_l = reg.add({"o2_l", CompPhase::liquid, Regime::advective2, D_o2_l, 0.0});
  mc.x_l = reg.add({"x_l", CompPhase::liquid, Regime::advective2, 0.0, 0.0});
  mc.x_s = reg.add({"x_s", CompPhase::solid, Regime::immobile, 0.0, 0.0});
  mc.o2_g = reg.add({"o2_g", CompPhase::gas, Regime::advective1, D_o2_g, M_o2});
  return mc;
}

FieldState FieldState::make(const StructuredGrid& g, const ComponentRegistry& reg) {
  FieldState st;
  const std::size_t n = static_cast<std::size_t>(g.cells());
  st.p_l.assign(n, 0.0);
  st.p_c.assign(n, 0.0);
  st.conc.assign(reg.comps.size(), std::vector<double>(n, 0.0));
  st.s_l.assign(n, 0.0);
  st.theta_l.assign(n, 0.0);
  st.theta_g.assign(n, 0.0);
  st.rho_g.assign(n, 0.0);
  st.v_l.resize(g);
  st.v_g.resize(g);
  return st;
}

void update_derived(FieldState& st, const StructuredGrid& g,
                    const constitutive::VanGenuchtenParams& vg,
                    const constitutive::MediumParams& medium,
                    const constitutive::FluidParams& fluid,
                    const ComponentRegistry& reg, int o2_g, double M_ref) {
  const double RT = fluid.R_gas * fluid.T;
  const double M_o2 = o2_g >= 0 ? reg[o2_g].molar_mass : 0.0;
  for (int c = 0; c < g.cells(); ++c) {
    const double s = constitutive::saturation_from_pc(st.p_c[c], vg);
    st.s_l[c] = s;
    st.theta_l[c] = medium.phi * s;
    st.theta_g[c] = medium.phi * (1.0 - s);
    const double p_g = st.p_l[c] + st.p_c[c];
    const double nu = std::max(p_g, 0.0) / RT; // total molar density [mol/m^3]
    double rho = nu * M_ref;
    if (o2_g >= 0) {
      const double c_o2 = std::clamp(st.conc[o2_g][c] / M_o2, 0.0, nu);
      rho += c_o2 * (M_o2 - M_ref);
    }
    st.rho_g[c] = rho;
  }
}

}  // namespace fringe::grid
