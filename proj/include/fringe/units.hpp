#pragma once

// Unit conventions used throughout:
//   length m, time s, mass kg, pressure Pa.
//   Concentrations are kg/m^3 of the carrying phase volume, which is
//   numerically identical to g/L; biomass is g dry weight per litre.
//   Cell counts enter and leave only through I/O conversions below.

#include <cmath>

namespace fringe::units {

inline constexpr double second = 1.0;
inline constexpr double minute = 60.0;
inline constexpr double hour = 3600.0;
inline constexpr double day = 86400.0;

// dry mass of a single cell [g]
inline constexpr double cell_dry_mass_g = 5.0e-13;

// volumetric flow: mL/h -> m^3/s
inline constexpr double ml_per_hour = 1.0e-6 / hour;

// mg/L -> kg/m^3
inline constexpr double mg_per_litre = 1.0e-3;

// cells/mL <-> kg/m^3 (= g/L) of biomass dry weight
inline double conc_from_cells_per_ml(double cells_per_ml) {
  return cells_per_ml * cell_dry_mass_g * 1.0e3;  // g/mL -> g/L
}
inline double cells_per_ml_from_conc(double kg_m3) {
  return kg_m3 / (cell_dry_mass_g * 1.0e3);
}

// per-hour rate -> per-second
inline constexpr double per_hour = 1.0 / hour;

}  // namespace fringe::units
