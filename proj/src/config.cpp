#include "fringe/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "fringe/units.hpp"

namespace fringe::config {

namespace {

struct UnitDef {
  const char* token;
  double factor;
};

const std::vector<UnitDef> u_none = {{"-", 1.0}};
const std::vector<UnitDef> u_time = {{"s", 1.0}, {"min", 60.0}, {"h", 3600.0}, {"d", 86400.0}};
const std::vector<UnitDef> u_len = {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}};
const std::vector<UnitDef> u_rate = {{"m^3/s", 1.0}, {"L/h", 1e-3 / 3600.0}, {"mL/h", 1e-6 / 3600.0}};
const std::vector<UnitDef> u_conc = {{"kg/m^3", 1.0},
                                     {"g/L", 1.0},
                                     {"mg/L", 1e-3},
                                     {"cells/mL", units::cell_dry_mass_g * 1e3}};
const std::vector<UnitDef> u_perm = {{"m^2", 1.0}};
const std::vector<UnitDef> u_press = {{"Pa", 1.0}, {"kPa", 1e3}};
const std::vector<UnitDef> u_per_press = {{"1/Pa", 1.0}};
const std::vector<UnitDef> u_per_time = {{"1/s", 1.0}, {"1/h", 1.0 / 3600.0}, {"1/d", 1.0 / 86400.0}};
const std::vector<UnitDef> u_maint = {{"m^3/(kg.s)", 1.0}, {"L/(h.g)", 1.0 / 3600.0}};
const std::vector<UnitDef> u_molar = {{"kg/mol", 1.0}, {"g/mol", 1e-3}};
const std::vector<UnitDef> u_vel = {{"m/s", 1.0}, {"m/h", 1.0 / 3600.0}, {"m/d", 1.0 / 86400.0}};
const std::vector<UnitDef> u_dens = {{"kg/m^3", 1.0}};
const std::vector<UnitDef> u_visc = {{"Pa.s", 1.0}};
const std::vector<UnitDef> u_temp = {{"K", 1.0}};
const std::vector<UnitDef> u_acc = {{"m/s^2", 1.0}};
const std::vector<UnitDef> u_diff = {{"m^2/s", 1.0}};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

struct Parser {
  coupling::Scenario sc;
  std::string origin;
  std::string section;
  int line = 0;
  std::map<std::string, std::vector<double>> port_centers;
  std::map<std::string, double> port_widths;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
  }

  double to_num(const std::string& tok) const {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || tok.empty())
      fail("expected a number, got '" + tok + "'");
    return v;
  }

  double unit_factor(const std::string& tok, const std::vector<UnitDef>& units) const {
    for (const auto& u : units)
      if (tok == u.token) return u.factor;
    std::string want;
    for (const auto& u : units) want += std::string(want.empty() ? "" : ", ") + u.token;
    fail("unit '" + tok + "' not accepted here (use one of: " + want + ")");
  }

  // `value` = N numbers followed by one unit token
  std::vector<double> nums(const std::string& value, const std::vector<UnitDef>& units,
                           int expect = -1) const {
    const auto toks = split_ws(value);
    if (toks.size() < 2) fail("expected '<numbers...> <unit>'");
    const double f = unit_factor(toks.back(), units);
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) out.push_back(to_num(toks[i]) * f);
    if (expect >= 0 && static_cast<int>(out.size()) != expect)
      fail("expected " + std::to_string(expect) + " value(s)");
    return out;
  }

  double num(const std::string& value, const std::vector<UnitDef>& units) const {
    return nums(value, units, 1)[0];
  }

  std::vector<long> ints(const std::string& value, int expect) const {
    const auto toks = split_ws(value);
    if (static_cast<int>(toks.size()) != expect)
      fail("expected " + std::to_string(expect) + " integer(s)");
    std::vector<long> out;
    for (const auto& t : toks) {
      char* end = nullptr;
      out.push_back(std::strtol(t.c_str(), &end, 10));
      if (end != t.c_str() + t.size()) fail("expected an integer, got '" + t + "'");
    }
    return out;
  }

  bool boolean(const std::string& value) const {
    const std::string v = trim(value);
    if (v == "true" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "off" || v == "no") return false;
    fail("expected true/false, got '" + v + "'");
  }

  void handle(const std::string& key, const std::string& value) {
    if (section.empty()) return top(key, value);
    if (section == "grid") return grid_s(key, value);
    if (section == "medium") return medium_s(key, value);
    if (section == "retention") return retention_s(key, value);
    if (section == "fluid") return fluid_s(key, value);
    if (section == "gas") return gas_s(key, value);
    if (section == "diffusion") return diffusion_s(key, value);
    if (section == "growth") return growth_s(key, value);
    if (section == "adhesion") return adhesion_s(key, value);
    if (section == "ports") return ports_s(key, value);
    if (section == "initial") return initial_s(key, value);
    if (section == "numerics") return numerics_s(key, value);
    if (section == "output") return output_s(key, value);
    if (section.rfind("stage.", 0) == 0) return stage_s(key, value);
    if (section == "column") return column_s(key, value);
    if (section == "fit") return fit_s(key, value);
    fail("unknown section [" + section + "]");
  }

  void top(const std::string& key, const std::string& value) {
    if (key == "kind") sc.kind = trim(value);
    else if (key == "name") sc.name = trim(value);
    else fail("unknown top-level key '" + key + "'");
  }

  void grid_s(const std::string& key, const std::string& value) {
    if (key == "extent") {
      const auto v = nums(value, u_len, 2);
      sc.extent_x = v[0];
      sc.extent_y = v[1];
    } else if (key == "resolution") {
      const auto v = ints(value, 2);
      sc.nx = static_cast<int>(v[0]);
      sc.ny = static_cast<int>(v[1]);
    } else if (key == "thickness") sc.thickness = num(value, u_len);
    else fail("unknown key '" + key + "' in [grid]");
  }

  void medium_s(const std::string& key, const std::string& value) {
    if (key == "porosity") sc.medium.phi = num(value, u_none);
    else if (key == "permeability") sc.medium.K = num(value, u_perm);
    else if (key == "grain_diameter") sc.medium.r_p = num(value, u_len);
    else if (key == "kappa_exposed") sc.medium.kappa_exposed = num(value, u_none);
    else fail("unknown key '" + key + "' in [medium]");
  }

  void retention_s(const std::string& key, const std::string& value) {
    if (key == "alpha") sc.vg.alpha = num(value, u_per_press);
    else if (key == "n") sc.vg.n = num(value, u_none);
    else if (key == "s_l_min") sc.vg.s_l_min = num(value, u_none);
    else fail("unknown key '" + key + "' in [retention]");
  }

  void fluid_s(const std::string& key, const std::string& value) {
    if (key == "rho_l") sc.fluid.rho_l = num(value, u_dens);
    else if (key == "mu_l") sc.fluid.mu_l = num(value, u_visc);
    else if (key == "mu_g") sc.fluid.mu_g = num(value, u_visc);
    else if (key == "temperature") sc.fluid.T = num(value, u_temp);
    else if (key == "k_henry") sc.fluid.k_H = num(value, u_none);
    else if (key == "p_atm") sc.fluid.p_atm = num(value, u_press);
    else if (key == "gravity") sc.fluid.g = num(value, u_acc);
    else fail("unknown key '" + key + "' in [fluid]");
  }

  void gas_s(const std::string& key, const std::string& value) {
    if (key == "o2_mole_fraction") sc.atm_o2_mole_fraction = num(value, u_none);
    else if (key == "molar_mass_o2") sc.M_o2 = num(value, u_molar);
    else if (key == "molar_mass_ref") sc.M_ref = num(value, u_molar);
    else fail("unknown key '" + key + "' in [gas]");
  }

  void diffusion_s(const std::string& key, const std::string& value) {
    if (key == "doc") sc.D_doc = num(value, u_diff);
    else if (key == "o2_liquid") sc.D_o2_l = num(value, u_diff);
    else if (key == "o2_gas") sc.D_o2_g = num(value, u_diff);
    else fail("unknown key '" + key + "' in [diffusion]");
  }

  void growth_s(const std::string& key, const std::string& value) {
    auto& gp = sc.growth;
    if (key == "enabled") sc.reactions_enabled = boolean(value);
    else if (key == "mu_max_aerobic") gp.mu_max_a = num(value, u_per_time);
    else if (key == "mu_max_anaerobic") gp.mu_max_an = num(value, u_per_time);
    else if (key == "decay") gp.d_c = num(value, u_per_time);
    else if (key == "contois_s_aerobic") gp.B_S_a = num(value, u_none);
    else if (key == "contois_s_anaerobic") gp.B_S_an = num(value, u_none);
    else if (key == "contois_o2") gp.B_O2 = num(value, u_none);
    else if (key == "yield_s_aerobic") gp.Y_S_a = num(value, u_none);
    else if (key == "yield_s_anaerobic") gp.Y_S_an = num(value, u_none);
    else if (key == "yield_o2") gp.Y_O2 = num(value, u_none);
    else if (key == "maintenance") gp.m_o = num(value, u_maint);
    else fail("unknown key '" + key + "' in [growth]");
  }

  void adhesion_s(const std::string& key, const std::string& value) {
    if (key == "k_att") sc.adhesion.k_att = num(value, u_per_time);
    else if (key == "k_det") sc.adhesion.k_det = num(value, u_per_time);
    else if (key == "capacity") sc.adhesion.c_s_X_max = num(value, u_conc);
    else fail("unknown key '" + key + "' in [adhesion]");
  }

  void ports_s(const std::string& key, const std::string& value) {
    const bool width = key.size() > 6 && key.rfind("_width") == key.size() - 6;
    const std::string group = width ? key.substr(0, key.size() - 6) : key;
    if (group != "left" && group != "right" && group != "bottom" && group != "top")
      fail("port group '" + group + "' must be named after a wall");
    if (width) port_widths[group] = num(value, u_len);
    else port_centers[group] = nums(value, u_len);
  }

  void initial_s(const std::string& key, const std::string& value) {
    if (key == "saturation") sc.initial_saturation = num(value, u_none);
    else fail("unknown key '" + key + "' in [initial]");
  }

  void numerics_s(const std::string& key, const std::string& value) {
    auto& f = sc.flow;
    if (key == "dt_init") f.dt_init = num(value, u_time);
    else if (key == "dt_max") f.dt_max = num(value, u_time);
    else if (key == "dt_min") f.dt_min = num(value, u_time);
    else if (key == "newton_rtol") f.newton_rtol = num(value, u_none);
    else if (key == "newton_max_iter") f.newton_max_iter = static_cast<int>(ints(value, 1)[0]);
    else if (key == "max_sat_change") f.max_sat_change = num(value, u_none);
    else if (key == "cfl") sc.cfl = num(value, u_none);
    else if (key == "rk_rtol") sc.rk_rtol = num(value, u_none);
    else if (key == "stiff_exchange") sc.stiff_exchange = num(value, u_none);
    else if (key == "threads") sc.threads = static_cast<int>(ints(value, 1)[0]);
    else fail("unknown key '" + key + "' in [numerics]");
  }

  void output_s(const std::string& key, const std::string& value) {
    if (key == "times") sc.output.times = nums(value, u_time);
    else if (key == "profile_x") sc.output.profile_x = nums(value, u_len);
    else fail("unknown key '" + key + "' in [output]");
  }

  void stage_s(const std::string& key, const std::string& value) {
    auto& st = sc.stages.back();
    if (key == "name") st.name = trim(value);
    else if (key == "duration") st.duration = num(value, u_time);
    else if (key == "doc") st.c_doc = num(value, u_conc);
    else if (key == "o2") st.c_o2 = num(value, u_conc);
    else if (key == "cells") st.c_cells = num(value, u_conc);
    else if (key.rfind("inflow_", 0) == 0)
      st.rates.emplace_back(key.substr(7), num(value, u_rate));
    else if (key.rfind("outflow_", 0) == 0)
      st.rates.emplace_back(key.substr(8), -num(value, u_rate));
    else fail("unknown key '" + key + "' in [" + section + "]");
  }

  void column_s(const std::string& key, const std::string& value) {
    auto& c = sc.column;
    if (key == "length") c.length = num(value, u_len);
    else if (key == "porosity") c.porosity = num(value, u_none);
    else if (key == "pore_velocity") c.pore_velocity = num(value, u_vel);
    else if (key == "c_in") c.c_in = num(value, u_conc);
    else if (key == "pulse") c.pulse_duration = num(value, u_time);
    else if (key == "sample_interval") c.sample_interval = num(value, u_time);
    else if (key == "sample_until") c.sample_until = num(value, u_time);
    else if (key == "resolution") c.n_cells = static_cast<int>(ints(value, 1)[0]);
    else if (key == "cfl") c.cfl = num(value, u_none);
    else fail("unknown key '" + key + "' in [column]");
  }

  void fit_s(const std::string& key, const std::string& value) {
    if (key == "noise") sc.fit.noise = num(value, u_none);
    else if (key == "seed") sc.fit.seed = static_cast<unsigned>(ints(value, 1)[0]);
    else if (key == "start_scale") sc.fit.start_scale = num(value, u_none);
    else if (key == "max_iter") sc.lm.max_iter = static_cast<int>(ints(value, 1)[0]);
    else fail("unknown key '" + key + "' in [fit]");
  }

  void enter_section(const std::string& name) {
    // reject typo'd sections at their header, even when they stay empty
    static const char* const known[] = {"grid",     "medium",  "retention", "fluid",
                                        "gas",      "diffusion", "growth",  "adhesion",
                                        "ports",    "initial", "numerics",  "output",
                                        "column",   "fit"};
    bool ok = name.rfind("stage.", 0) == 0;
    for (const char* k : known) ok = ok || name == k;
    if (!ok) fail("unknown section [" + name + "]");
    section = name;
    if (name.rfind("stage.", 0) == 0) sc.stages.emplace_back();
  }

  void finalize() {
    for (const auto& [group, centers] : port_centers) {
      grid::Wall wall = grid::Wall::bottom;
      if (group == "left") wall = grid::Wall::left;
      if (group == "right") wall = grid::Wall::right;
      if (group == "top") wall = grid::Wall::top;
      const double width = port_widths.count(group) ? port_widths.at(group) : 0.01;
      std::vector<grid::PortSpec> ports;
      for (double c : centers) ports.push_back({wall, c, width});
      sc.port_groups[group] = std::move(ports);
    }
    for (const auto& [group, width] : port_widths) {
      (void)width;
      if (!port_centers.count(group))
        throw ConfigError(origin + ": [ports] " + group + "_width given without " + group);
    }
  }
};

}  // namespace

coupling::Scenario parse_scenario(const std::string& text, const std::string& origin) {
  Parser p;
  p.origin = origin;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++p.line;
    std::string s = raw;
    const auto hash = s.find_first_of("#;");
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') p.fail("unterminated section header");
      p.enter_section(trim(s.substr(1, s.size() - 2)));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) p.fail("expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) p.fail("expected 'key = value'");
    p.handle(key, value);
  }
  p.finalize();
  p.sc.validate();
  return p.sc;
}

coupling::Scenario load_scenario(const std::string& name_or_path) {
  if (const char* text = builtin_text(name_or_path))
    return parse_scenario(text, name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError("no built-in scenario or readable file '" + name_or_path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), name_or_path);
}

namespace {

void put(std::ostringstream& o, const char* key, double v, const char* unit) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  o << key << " = " << buf << ' ' << unit << '\n';
}

}  // namespace

std::string serialize_scenario(const coupling::Scenario& sc) {
  std::ostringstream o;
  o << "kind = " << sc.kind << '\n';
  o << "name = " << sc.name << '\n';
  if (sc.kind == "column") {
    o << "\n[column]\n";
    put(o, "length", sc.column.length, "m");
    put(o, "porosity", sc.column.porosity, "-");
    put(o, "pore_velocity", sc.column.pore_velocity, "m/s");
    put(o, "c_in", sc.column.c_in, "kg/m^3");
    put(o, "pulse", sc.column.pulse_duration, "s");
    put(o, "sample_interval", sc.column.sample_interval, "s");
    put(o, "sample_until", sc.column.sample_until, "s");
    o << "resolution = " << sc.column.n_cells << '\n';
    put(o, "cfl", sc.column.cfl, "-");
    o << "\n[adhesion]\n";
    put(o, "k_att", sc.adhesion.k_att, "1/s");
    put(o, "k_det", sc.adhesion.k_det, "1/s");
    put(o, "capacity", sc.adhesion.c_s_X_max, "kg/m^3");
    o << "\n[fit]\n";
    put(o, "noise", sc.fit.noise, "-");
    o << "seed = " << sc.fit.seed << '\n';
    put(o, "start_scale", sc.fit.start_scale, "-");
    o << "max_iter = " << sc.lm.max_iter << '\n';
    return o.str();
  }

  o << "\n[grid]\n";
  {
    char buf[128];
    std::snprintf(buf, sizeof buf, "extent = %.17g %.17g m\n", sc.extent_x, sc.extent_y);
    o << buf;
  }
  o << "resolution = " << sc.nx << ' ' << sc.ny << '\n';
  put(o, "thickness", sc.thickness, "m");

  o << "\n[medium]\n";
  put(o, "porosity", sc.medium.phi, "-");
  put(o, "permeability", sc.medium.K, "m^2");
  put(o, "grain_diameter", sc.medium.r_p, "m");
  put(o, "kappa_exposed", sc.medium.kappa_exposed, "-");

  o << "\n[retention]\n";
  put(o, "alpha", sc.vg.alpha, "1/Pa");
  put(o, "n", sc.vg.n, "-");
  put(o, "s_l_min", sc.vg.s_l_min, "-");

  o << "\n[fluid]\n";
  put(o, "rho_l", sc.fluid.rho_l, "kg/m^3");
  put(o, "mu_l", sc.fluid.mu_l, "Pa.s");
  put(o, "mu_g", sc.fluid.mu_g, "Pa.s");
  put(o, "temperature", sc.fluid.T, "K");
  put(o, "k_henry", sc.fluid.k_H, "-");
  put(o, "p_atm", sc.fluid.p_atm, "Pa");
  put(o, "gravity", sc.fluid.g, "m/s^2");

  o << "\n[gas]\n";
  put(o, "o2_mole_fraction", sc.atm_o2_mole_fraction, "-");
  put(o, "molar_mass_o2", sc.M_o2, "kg/mol");
  put(o, "molar_mass_ref", sc.M_ref, "kg/mol");

  o << "\n[diffusion]\n";
  put(o, "doc", sc.D_doc, "m^2/s");
  put(o, "o2_liquid", sc.D_o2_l, "m^2/s");
  put(o, "o2_gas", sc.D_o2_g, "m^2/s");

  o << "\n[growth]\n";
  o << "enabled = " << (sc.reactions_enabled ? "true" : "false") << '\n';
  put(o, "mu_max_aerobic", sc.growth.mu_max_a, "1/s");
  put(o, "mu_max_anaerobic", sc.growth.mu_max_an, "1/s");
  put(o, "decay", sc.growth.d_c, "1/s");
  put(o, "contois_s_aerobic", sc.growth.B_S_a, "-");
  put(o, "contois_s_anaerobic", sc.growth.B_S_an, "-");
  put(o, "contois_o2", sc.growth.B_O2, "-");
  put(o, "yield_s_aerobic", sc.growth.Y_S_a, "-");
  put(o, "yield_s_anaerobic", sc.growth.Y_S_an, "-");
  put(o, "yield_o2", sc.growth.Y_O2, "-");
  put(o, "maintenance", sc.growth.m_o, "m^3/(kg.s)");

  o << "\n[adhesion]\n";
  put(o, "k_att", sc.adhesion.k_att, "1/s");
  put(o, "k_det", sc.adhesion.k_det, "1/s");
  put(o, "capacity", sc.adhesion.c_s_X_max, "kg/m^3");

  if (!sc.port_groups.empty()) {
    o << "\n[ports]\n";
    for (const auto& [group, ports] : sc.port_groups) {
      o << group << " =";
      char buf[64];
      for (const auto& p : ports) {
        std::snprintf(buf, sizeof buf, " %.17g", p.center);
        o << buf;
      }
      o << " m\n";
      put(o, (group + "_width").c_str(), ports.front().width, "m");
    }
  }

  o << "\n[initial]\n";
  put(o, "saturation", sc.initial_saturation, "-");

  o << "\n[numerics]\n";
  put(o, "dt_init", sc.flow.dt_init, "s");
  put(o, "dt_max", sc.flow.dt_max, "s");
  put(o, "dt_min", sc.flow.dt_min, "s");
  put(o, "newton_rtol", sc.flow.newton_rtol, "-");
  o << "newton_max_iter = " << sc.flow.newton_max_iter << '\n';
  put(o, "max_sat_change", sc.flow.max_sat_change, "-");
  put(o, "cfl", sc.cfl, "-");
  put(o, "rk_rtol", sc.rk_rtol, "-");
  put(o, "stiff_exchange", sc.stiff_exchange, "-");
  o << "threads = " << sc.threads << '\n';

  for (std::size_t k = 0; k < sc.stages.size(); ++k) {
    const auto& st = sc.stages[k];
    o << "\n[stage." << k + 1 << "]\n";
    o << "name = " << st.name << '\n';
    put(o, "duration", st.duration, "s");
    for (const auto& [group, rate] : st.rates) {
      if (rate >= 0)
        put(o, ("inflow_" + group).c_str(), rate, "m^3/s");
      else
        put(o, ("outflow_" + group).c_str(), -rate, "m^3/s");
    }
    put(o, "doc", st.c_doc, "kg/m^3");
    put(o, "o2", st.c_o2, "kg/m^3");
    put(o, "cells", st.c_cells, "kg/m^3");
  }

  if (!sc.output.times.empty() || !sc.output.profile_x.empty()) {
    o << "\n[output]\n";
    char buf[64];
    if (!sc.output.times.empty()) {
      o << "times =";
      for (double t : sc.output.times) {
        std::snprintf(buf, sizeof buf, " %.17g", t);
        o << buf;
      }
      o << " s\n";
    }
    if (!sc.output.profile_x.empty()) {
      o << "profile_x =";
      for (double x : sc.output.profile_x) {
        std::snprintf(buf, sizeof buf, " %.17g", x);
        o << buf;
      }
      o << " m\n";
    }
  }
  return o.str();
}

double parse_duration(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw ConfigError("cannot parse duration '" + s + "'");
  const std::string unit = trim(std::string(end));
  for (const auto& u : u_time)
    if (unit == u.token) return v * u.factor;
  if (unit.empty()) return v;  // bare number: seconds
  throw ConfigError("unknown time unit '" + unit + "' in '" + s + "'");
}

// ---------------------------------------------------------------------------
// built-in scenarios

namespace {

const char* const chamber_common = R"ini(
[grid]
extent = 0.5 0.3 m
resolution = 98 64
thickness = 0.006 m

[medium]
porosity = 0.39 -
permeability = 2.6e-11 m^2
grain_diameter = 0.9 mm
kappa_exposed = 1.0 -

[retention]
alpha = 1.21e-3 1/Pa
n = 5.48 -
s_l_min = 1.0e-3 -

[fluid]
rho_l = 1000 kg/m^3
mu_l = 1.0e-3 Pa.s
mu_g = 1.8e-5 Pa.s
temperature = 294.15 K
k_henry = 3.28e-2 -
p_atm = 101325 Pa
gravity = 9.81 m/s^2

[gas]
o2_mole_fraction = 0.2095 -
molar_mass_o2 = 32.0 g/mol
molar_mass_ref = 28.15 g/mol

[diffusion]
doc = 1.9e-10 m^2/s
o2_liquid = 2.2e-9 m^2/s
o2_gas = 1.8e-5 m^2/s

[growth]
enabled = true
mu_max_aerobic = 0.324 1/h
mu_max_anaerobic = 0.255 1/h
decay = 3.54e-3 1/h
contois_s_aerobic = 1.81 -
contois_s_anaerobic = 3.07 -
contois_o2 = 0.019 -
yield_s_aerobic = 0.95 -
yield_s_anaerobic = 0.163 -
yield_o2 = 0.49 -
maintenance = 0.003 L/(h.g)

[adhesion]
k_att = 3.0e-4 1/s
k_det = 6.2e-6 1/s
capacity = 1.6e8 cells/mL

[ports]
bottom = 0.05 0.115 0.215 0.28 0.39 0.445 m
bottom_width = 0.01 m
left = 0.005 0.02 0.035 0.05 m
left_width = 0.01 m
right = 0.005 0.02 0.035 0.05 m
right_width = 0.01 m

[initial]
saturation = 1.0e-3 -

[numerics]
dt_init = 0.25 s
dt_max = 1800 s
dt_min = 1.0e-6 s
newton_rtol = 1.0e-7 -
newton_max_iter = 20
max_sat_change = 0.1 -
cfl = 0.4 -
rk_rtol = 1.0e-6 -
stiff_exchange = 500 -
threads = 1

[stage.1]
name = infiltration
duration = 1 h
inflow_bottom = 190 mL/h
doc = 0.8 g/L
o2 = 0.1 mg/L
cells = 2.0e7 cells/mL

[stage.2]
name = stagnation
duration = 119 h
)ini";

const std::string chamber_full_text = std::string(
                                          "# growth chamber, full experiment: "
                                          "infiltration, stagnation, horizontal flow\n"
                                          "kind = chamber\nname = chamber_full\n") +
                                      chamber_common + R"ini(
[stage.3]
name = horizontal
duration = 120 h
inflow_left = 15 mL/h
outflow_right = 15 mL/h
doc = 0.8 g/L
o2 = 9.1 mg/L
cells = 0 cells/mL

[output]
times = 1 6 24 48 72 96 120 126 144 168 192 216 240 h
profile_x = 0.25 m
)ini";

const std::string chamber_noflow_text = std::string(
                                            "# growth chamber without the horizontal "
                                            "flow stage (day 5 endpoint)\n"
                                            "kind = chamber\nname = chamber_noflow\n") +
                                        chamber_common + R"ini(
[output]
times = 1 6 24 48 72 96 120 h
profile_x = 0.25 m
)ini";

const std::string chamber_nodoc_text = std::string(
                                           "# growth chamber, horizontal stage "
                                           "without DOC supply\n"
                                           "kind = chamber\nname = chamber_nodoc\n") +
                                       chamber_common + R"ini(
[stage.3]
name = horizontal_nodoc
duration = 120 h
inflow_left = 15 mL/h
outflow_right = 15 mL/h
doc = 0 g/L
o2 = 9.1 mg/L
cells = 0 cells/mL

[output]
times = 1 6 24 48 72 96 120 126 144 168 192 216 240 h
profile_x = 0.25 m
)ini";

const char* const column_breakthrough_text = R"ini(# saturated column pulse experiment for adhesion parameter recovery
kind = column
name = column_breakthrough

[column]
length = 0.10 m
porosity = 0.39 -
pore_velocity = 4.0 m/d
c_in = 1.0e9 cells/mL
pulse = 0.6 h
sample_interval = 120 s
sample_until = 6 h
resolution = 512
cfl = 0.4 -

[adhesion]
k_att = 3.0e-4 1/s
k_det = 6.2e-6 1/s
capacity = 1.6e8 cells/mL

[fit]
noise = 0.02 -
seed = 42
start_scale = 3.0 -
max_iter = 60
)ini";

}  // namespace

std::vector<std::string> builtin_names() {
  return {"chamber_full", "chamber_noflow", "chamber_nodoc", "column_breakthrough"};
}

const char* builtin_text(const std::string& name) {
  if (name == "chamber_full") return chamber_full_text.c_str();
  if (name == "chamber_noflow") return chamber_noflow_text.c_str();
  if (name == "chamber_nodoc") return chamber_nodoc_text.c_str();
  if (name == "column_breakthrough") return column_breakthrough_text;
  return nullptr;
}

}  // namespace fringe::config
