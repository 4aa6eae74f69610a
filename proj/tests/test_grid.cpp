// Grid bookkeeping: index maps, face counts, boundary/port enumeration,
// component registry layout and the derived-field update.

#include <doctest.h>

#include <cmath>

#include "fringe/grid.hpp"

using namespace fringe;
using namespace fringe::grid;

TEST_SUITE("grid") {

// ----------------------------------------------------------------- indexing

TEST_CASE("chamber grid geometry") {
  const auto g = StructuredGrid::make(0.5, 0.3, 98, 64, 0.006);
  CHECK(g.dx == doctest::Approx(0.5 / 98).epsilon(1e-15));
  CHECK(g.dy == doctest::Approx(0.3 / 64).epsilon(1e-15));
  CHECK(g.cells() == 98 * 64);
  CHECK(g.n_xfaces() == 99 * 64);
  CHECK(g.n_yfaces() == 98 * 65);
  CHECK(g.interior_faces() == 97 * 64 + 98 * 63);
  CHECK(g.cell_volume() == doctest::Approx(g.dx * g.dy * 0.006).epsilon(1e-15));
  CHECK(g.xface_area() == doctest::Approx(g.dy * 0.006).epsilon(1e-15));
  CHECK(g.yface_area() == doctest::Approx(g.dx * 0.006).epsilon(1e-15));
  // cell centers cover (0, extent) symmetrically
  CHECK(g.xc(0) == doctest::Approx(0.5 * g.dx));
  CHECK(g.xc(97) == doctest::Approx(0.5 - 0.5 * g.dx));
  CHECK(g.yc(0) == doctest::Approx(0.5 * g.dy));
  CHECK(g.yc(63) == doctest::Approx(0.3 - 0.5 * g.dy));
}

TEST_CASE("index maps are bijective and row-major") {
  const auto g = StructuredGrid::make(1.0, 1.0, 7, 5, 1.0);
  int k = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) CHECK(g.cell(i, j) == k++);
  CHECK(g.xface(0, 0) == 0);
  CHECK(g.xface(g.nx, g.ny - 1) == g.n_xfaces() - 1);
  CHECK(g.yface(0, 0) == 0);
  CHECK(g.yface(g.nx - 1, g.ny) == g.n_yfaces() - 1);
  // neighbouring cells share exactly the face between them
  CHECK(g.xface(3, 2) == g.xface(2, 2) + 1);
}

TEST_CASE("make rejects degenerate input") {
  CHECK_THROWS_AS(StructuredGrid::make(1.0, 1.0, 0, 5, 1.0), ConfigError);
  CHECK_THROWS_AS(StructuredGrid::make(-1.0, 1.0, 4, 5, 1.0), ConfigError);
  CHECK_THROWS_AS(StructuredGrid::make(1.0, 1.0, 4, 5, 0.0), ConfigError);
}

// ----------------------------------------------------------------- boundary

TEST_CASE("boundary faces enumerate each wall once with correct adjacency") {
  const auto g = StructuredGrid::make(0.5, 0.3, 98, 64, 0.006);
  const auto left = boundary_faces(g, Wall::left);
  const auto right = boundary_faces(g, Wall::right);
  const auto bottom = boundary_faces(g, Wall::bottom);
  const auto top = boundary_faces(g, Wall::top);
  CHECK(left.size() == 64);
  CHECK(right.size() == 64);
  CHECK(bottom.size() == 98);
  CHECK(top.size() == 98);
  CHECK(left[5].face == g.xface(0, 5));
  CHECK(left[5].cell == g.cell(0, 5));
  CHECK(left[5].s == doctest::Approx(g.yc(5)));
  CHECK(right[0].face == g.xface(98, 0));
  CHECK(right[0].cell == g.cell(97, 0));
  CHECK(bottom[17].face == g.yface(17, 0));
  CHECK(bottom[17].cell == g.cell(17, 0));
  CHECK(bottom[17].s == doctest::Approx(g.xc(17)));
  CHECK(top[3].face == g.yface(3, 64));
  CHECK(top[3].cell == g.cell(3, 63));
}

TEST_CASE("port faces cover the interval, or fall back to the nearest face") {
  const auto g = StructuredGrid::make(0.5, 0.3, 98, 64, 0.006);
  PortSpec p{Wall::bottom, 0.05, 0.01};
  const auto faces = port_faces(g, p);
  CHECK(!faces.empty());
  for (const auto& f : faces) {
    CHECK(f.s >= 0.045);
    CHECK(f.s <= 0.055);
  }
  // a port narrower than a cell still gets exactly one face
  PortSpec tiny{Wall::left, 0.077, 1e-6};
  const auto one = port_faces(g, tiny);
  REQUIRE(one.size() == 1);
  // ... the nearest one
  for (const auto& f : boundary_faces(g, Wall::left))
    CHECK(std::abs(one[0].s - 0.077) <= std::abs(f.s - 0.077) + 1e-15);
  // a wall-wide port covers every face
  PortSpec wide{Wall::top, 0.25, 10.0};
  CHECK(port_faces(g, wide).size() == 98);
}

// ---------------------------------------------------------------- registry

TEST_CASE("model components install in fixed order with their regimes") {
  ComponentRegistry reg;
  const auto mc = ModelComponents::install(reg, 1.9e-10, 2.2e-9, 1.8e-5, 32e-3);
  CHECK(reg.size() == 5);
  CHECK(mc.doc == 0);
  CHECK(mc.o2_l == 1);
  CHECK(mc.x_l == 2);
  CHECK(mc.x_s == 3);
  CHECK(mc.o2_g == 4);
  CHECK(reg.find("o2_l") == mc.o2_l);
  CHECK(reg.find("nope") == -1);
  CHECK(reg[mc.doc].phase == CompPhase::liquid);
  CHECK(reg[mc.doc].D == 1.9e-10);
  CHECK(reg[mc.x_l].D == 0.0);           // suspended cells do not diffuse
  CHECK(reg[mc.x_s].phase == CompPhase::solid);
  CHECK(reg[mc.x_s].regime == Regime::immobile);
  CHECK(reg[mc.o2_g].phase == CompPhase::gas);
  CHECK(reg[mc.o2_g].regime == Regime::advective1);
  CHECK(reg[mc.o2_g].molar_mass == 32e-3);
  CHECK_THROWS_AS(reg.add({"doc", CompPhase::liquid, Regime::advective2, 0.0, 0.0}),
                  ConfigError);
}

// ----------------------------------------------------------- derived fields

TEST_CASE("update_derived recomputes saturations and the gas density") {
  const auto g = StructuredGrid::make(0.1, 0.1, 2, 2, 0.01);
  ComponentRegistry reg;
  const auto mc = ModelComponents::install(reg, 1.9e-10, 2.2e-9, 1.8e-5, 32e-3);
  auto st = FieldState::make(g, reg);
  CHECK(st.conc.size() == 5);
  CHECK(st.p_l.size() == 4);
  CHECK(st.v_l.x.size() == static_cast<std::size_t>(g.n_xfaces()));

  const auto vg = constitutive::VanGenuchtenParams::make(1.21e-3, 5.48);
  constitutive::MediumParams med;
  med.phi = 0.39; med.K = 2.6e-11; med.r_p = 0.9e-3;
  const constitutive::FluidParams fluid{};

  for (int c = 0; c < 4; ++c) {
    st.p_l[c] = fluid.p_atm - 500.0;
    st.p_c[c] = 500.0; // gas pressure exactly atmospheric
  }
  const double RT = fluid.R_gas * fluid.T;
  const double nu = fluid.p_atm / RT;
  // half the molar content is oxygen in cell 0, reference gas elsewhere
  st.conc[mc.o2_g][0] = 0.5 * nu * 32e-3;
  update_derived(st, g, vg, med, fluid, reg, mc.o2_g, 28.15e-3);

  const double s = constitutive::saturation_from_pc(500.0, vg);
  for (int c = 0; c < 4; ++c) {
    CHECK(st.s_l[c] == doctest::Approx(s).epsilon(1e-14));
    CHECK(st.theta_l[c] == doctest::Approx(0.39 * s).epsilon(1e-14));
    CHECK(st.theta_g[c] == doctest::Approx(0.39 * (1.0 - s)).epsilon(1e-14));
  }
  CHECK(st.rho_g[1] == doctest::Approx(nu * 28.15e-3).epsilon(1e-14));
  CHECK(st.rho_g[0] == doctest::Approx(nu * 28.15e-3 +
                                       0.5 * nu * (32e-3 - 28.15e-3)).epsilon(1e-14));
  // a pure reference atmosphere ignores the composition field
  update_derived(st, g, vg, med, fluid, reg, -1, 28.15e-3);
  CHECK(st.rho_g[0] == doctest::Approx(nu * 28.15e-3).epsilon(1e-14));
}

}  // TEST_SUITE
