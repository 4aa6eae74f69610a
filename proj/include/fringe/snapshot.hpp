#pragma once

// Plain-text grid snapshot and vertical-profile output.

#include <string>
#include <vector>

#include "fringe/grid.hpp"

namespace fringe::snapshot {

// One row per cell: x y followed by the named fields. The header lists
// column names and units. Returns the written path.
std::string write_snapshot(const std::string& path, const grid::StructuredGrid& g,
                           double t, const std::vector<std::string>& names,
                           const std::vector<std::string>& units,
                           const std::vector<const std::vector<double>*>& fields);

struct ProfileRow {
  double y = 0.0;       // [m]
  double s_l = 0.0;     // [-]
  double X_t = 0.0;     // total biomass [cells/mL porous medium]
  double X_l = 0.0;     // suspended biomass [cells/mL porous medium]
  double c_S = 0.0;     // DOC [kg/m^3 liquid]
  double c_l_O2 = 0.0;  // [kg/m^3 liquid]
  double c_g_O2 = 0.0;  // [kg/m^3 gas]
};

// vertical cut through the column of cells containing x_cut
std::vector<ProfileRow> extract_profile(const grid::StructuredGrid& g,
                                        const grid::FieldState& st,
                                        const grid::ModelComponents& mc,
                                        double phi, double x_cut);

void write_profile(const std::string& path, double t,
                   const std::vector<ProfileRow>& rows);

}  // namespace fringe::snapshot
