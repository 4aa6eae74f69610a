#pragma once

// Structured cell-centred grid over the rectangular flow domain, plus the
// field-state container shared by the flow, transport and reaction stages.
//
// Cell (i,j) has index j*nx + i; i runs along x (width), j along y (height,
// positive up, gravity acts in -y). Faces store the Darcy normal velocity:
// x-faces at index j*(nx+1)+i (normal +x), y-faces at j*nx+i (normal +y).
// The domain has a uniform out-of-plane thickness so face areas and cell
// volumes are true 3D measures.

#include <cstdint>
#include <string>
#include <vector>

#include "fringe/constitutive.hpp"
#include "fringe/errors.hpp"

namespace fringe::grid {

enum class Wall : std::uint8_t { left, right, bottom, top };

const char* wall_name(Wall w);

// flow port on a wall segment: center coordinate runs along the wall
// (y for left/right, x for bottom/top)
struct PortSpec {
  Wall wall = Wall::bottom;
  double center = 0.0; // [m]
  double width = 0.01; // [m]
};

struct StructuredGrid {
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;      // [m]
  double x0 = 0.0, y0 = 0.0;      // origin of the lower-left cell corner [m]
  double thickness = 1.0;         // out-of-plane extent [m]

  static StructuredGrid make(double extent_x, double extent_y, int nx, int ny,
                             double thickness, double x0 = 0.0, double y0 = 0.0);

  int cells() const { return nx * ny; }
  int cell(int i, int j) const { return j * nx + i; }
  int xface(int i, int j) const { return j * (nx + 1) + i; }
  int yface(int i, int j) const { return j * nx + i; }
  int n_xfaces() const { return (nx + 1) * ny; }
  int n_yfaces() const { return nx * (ny + 1); }
  // faces not on the domain boundary
  int interior_faces() const { return (nx - 1) * ny + nx * (ny - 1); }

  double xc(int i) const { return x0 + (i + 0.5) * dx; }
  double yc(int j) const { return y0 + (j + 0.5) * dy; }
  double cell_volume() const { return dx * dy * thickness; }
  double xface_area() const { return dy * thickness; }
  double yface_area() const { return dx * thickness; }
};

// one boundary face of a wall
struct BoundaryFace {
  int face = 0;   // index into the wall-normal face array
  int cell = 0;   // adjacent interior cell
  double s = 0.0; // face-center coordinate along the wall [m]
};

std::vector<BoundaryFace> boundary_faces(const StructuredGrid& g, Wall w);

// faces of `w` covered by the port interval [center-width/2, center+width/2];
// falls back to the single nearest face when the interval covers none
std::vector<BoundaryFace> port_faces(const StructuredGrid& g, const PortSpec& p);

enum class CompPhase : std::uint8_t { liquid, gas, solid };

// transport treatment of a component
enum class Regime : std::uint8_t {
  advective2, // second-order Godunov advection (+ diffusion if D > 0)
  advective1, // first-order upwind advection (+ diffusion if D > 0)
  immobile    // reaction only
};

struct ComponentSpec {
  std::string name;
  CompPhase phase = CompPhase::liquid;
  Regime regime = Regime::advective2;
  double D = 0.0;          // molecular diffusion coefficient [m^2/s]
  double molar_mass = 0.0; // [kg/mol], gas components only
};

struct ComponentRegistry {
  std::vector<ComponentSpec> comps;
  int add(ComponentSpec c);
  int find(const std::string& name) const; // -1 when absent
  int size() const { return static_cast<int>(comps.size()); }
  const ComponentSpec& operator[](int k) const { return comps[k]; }
};

// the five components of the growth/transport model, in fixed order
struct ModelComponents {
  int doc = -1;     // dissolved organic carbon, liquid
  int o2_l = -1;    // dissolved oxygen, liquid
  int x_l = -1;     // suspended biomass, liquid (D = 0)
  int x_s = -1;     // attached biomass, solid (per solid-phase volume)
  int o2_g = -1;    // oxygen in the gas mixture
  static ModelComponents install(ComponentRegistry& reg, double D_doc,
                                 double D_o2_l, double D_o2_g, double M_o2);
};

struct FaceField {
  std::vector<double> x, y;
  void resize(const StructuredGrid& g) {
    x.assign(g.n_xfaces(), 0.0);
    y.assign(g.n_yfaces(), 0.0);
  }
};

// complete simulation state; conc[k] is the concentration of component k
// per volume of its carrying phase
struct FieldState {
  std::vector<double> p_l, p_c;           // [Pa]
  std::vector<std::vector<double>> conc;  // [kg/m^3]
  // derived from (p_l, p_c) and the gas composition:
  std::vector<double> s_l, theta_l, theta_g, rho_g;
  FaceField v_l, v_g; // Darcy velocities [m/s]

  static FieldState make(const StructuredGrid& g, const ComponentRegistry& reg);
};

// recompute s_l, theta_l, theta_g, rho_g from pressures and gas composition.
// o2_g < 0 means a pure reference-gas atmosphere.
void update_derived(FieldState& st, const StructuredGrid& g,
                    const constitutive::VanGenuchtenParams& vg,
                    const constitutive::MediumParams& medium,
                    const constitutive::FluidParams& fluid,
                    const ComponentRegistry& reg, int o2_g, double M_ref);

}  // namespace fringe::grid
