// fringe-sim: run growth-chamber scenarios, fit column-breakthrough
// adhesion parameters, validate scenario files.
//
// exit codes: 0 success, 2 configuration error, 3 solver failure

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fringe/config.hpp"
#include "fringe/coupling.hpp"
#include "fringe/errors.hpp"
#include "fringe/inverse.hpp"
#include "fringe/units.hpp"

namespace {

using namespace fringe;

void truncate_scenario(coupling::Scenario& sc, double t_end) {
  std::vector<coupling::StageDef> kept;
  double acc = 0.0;
  for (auto st : sc.stages) {
    if (acc >= t_end - 1e-9) break;
    st.duration = std::min(st.duration, t_end - acc);
    acc += st.duration;
    kept.push_back(std::move(st));
  }
  if (kept.empty()) throw ConfigError("--t-end leaves no simulation time");
  sc.stages = std::move(kept);
  auto& times = sc.output.times;
  times.erase(std::remove_if(times.begin(), times.end(),
                             [&](double t) { return t > t_end + 1e-9; }),
              times.end());
}

void apply_grid_override(coupling::Scenario& sc, const std::string& spec) {
  const auto x = spec.find('x');
  if (x == std::string::npos) throw ConfigError("--grid expects NXxNY, e.g. 98x64");
  try {
    sc.nx = std::stoi(spec.substr(0, x));
    sc.ny = std::stoi(spec.substr(x + 1));
  } catch (const std::exception&) {
    throw ConfigError("--grid expects NXxNY, e.g. 98x64");
  }
}

int cmd_run(const std::string& scenario, const std::string& out_dir,
            const std::string& grid_spec, const std::string& t_end_str, double cfl,
            int threads, bool quiet) {
  coupling::Scenario sc = config::load_scenario(scenario);
  if (sc.kind != "chamber")
    throw ConfigError("'" + scenario + "' is not a chamber scenario; use `invert`");
  if (!grid_spec.empty()) apply_grid_override(sc, grid_spec);
  if (!t_end_str.empty()) truncate_scenario(sc, config::parse_duration(t_end_str));
  if (cfl > 0) sc.cfl = cfl;
  if (threads > 0) sc.threads = threads;

  coupling::Simulator sim(sc);
  if (!quiet) {
    std::printf("scenario %s: %dx%d cells, %.6g h total, output -> %s\n",
                sc.name.c_str(), sc.nx, sc.ny, sc.total_duration() / units::hour,
                out_dir.c_str());
  }
  const auto hook = [&](double t, const grid::FieldState&) {
    if (quiet) return;
    const auto tot = sim.totals();
    const auto& mc = sim.comps();
    std::printf("t = %9.4g h  water %.4g mL  DOC %.4g g  X %.4g g\n",
                t / units::hour, tot.liquid_volume * 1e6,
                tot.mass[mc.doc] * 1e3,
                (tot.mass[mc.x_l] + tot.mass[mc.x_s]) * 1e3);
    std::fflush(stdout);
  };
  const auto rs = sim.run(out_dir, hook);
  if (!quiet)
    std::printf("done: %d steps, %.1f s wall, t = %.6g h\n", rs.steps,
                rs.wall_seconds, rs.t_end / units::hour);
  return 0;
}

int cmd_invert(const std::string& scenario, const std::string& data_path,
               const std::string& out_dir) {
  namespace fs = std::filesystem;
  coupling::Scenario sc = config::load_scenario(scenario);
  if (sc.kind != "column")
    throw ConfigError("'" + scenario + "' is not a column scenario");
  const auto& ex = sc.column;
  const auto times = ex.sample_times();

  fs::create_directories(out_dir);
  std::vector<double> observed;
  bool synthetic = false;
  if (!data_path.empty()) {
    std::vector<double> t_obs;
    inverse::read_breakthrough_csv(data_path, t_obs, observed);
    if (t_obs.size() != times.size())
      throw ConfigError("breakthrough data has " + std::to_string(t_obs.size()) +
                        " rows; the scenario sampling grid has " +
                        std::to_string(times.size()));
    for (std::size_t i = 0; i < times.size(); ++i)
      if (std::abs(t_obs[i] - times[i]) > 1e-6)
        throw ConfigError("breakthrough sample times do not match the scenario grid");
  } else {
    synthetic = true;
    const auto clean = inverse::breakthrough_forward(ex, sc.adhesion);
    observed = inverse::add_noise(clean, sc.fit.noise, sc.fit.seed);
    inverse::write_breakthrough_csv((fs::path(out_dir) / "synthetic_breakthrough.csv").string(),
                                    times, observed);
    std::printf("no --data given: synthesized noisy breakthrough (sigma = %g, seed = %u)\n",
                sc.fit.noise, sc.fit.seed);
  }

  reaction::AdhesionParams start = sc.adhesion;
  start.k_att *= sc.fit.start_scale;
  start.k_det *= sc.fit.start_scale;
  start.c_s_X_max *= sc.fit.start_scale;

  const auto fit = inverse::fit_adhesion(ex, observed, start, sc.lm);

  std::ofstream txt(fs::path(out_dir) / "fit_result.txt");
  auto report = [&](const char* name, double got, double truth) {
    const double rel = truth > 0 ? (got - truth) / truth : 0.0;
    std::printf("%-10s %.6g", name, got);
    txt << name << " " << got;
    if (synthetic) {
      std::printf("   (true %.6g, error %+.2f%%)", truth, 100.0 * rel);
      txt << "  true " << truth << "  rel_error " << rel;
    }
    std::printf("\n");
    txt << "\n";
  };
  std::printf("fit %s after %d iterations (%d forward runs), rss = %.6g\n",
              fit.converged ? "converged" : "stopped", fit.iterations,
              fit.evaluations, fit.rss);
  txt << "converged " << (fit.converged ? 1 : 0) << "\niterations " << fit.iterations
      << "\nevaluations " << fit.evaluations << "\nrss " << fit.rss << "\n";
  report("k_att", fit.params.k_att, sc.adhesion.k_att);
  report("k_det", fit.params.k_det, sc.adhesion.k_det);
  report("capacity", fit.params.c_s_X_max, sc.adhesion.c_s_X_max);

  std::ofstream curve(fs::path(out_dir) / "fitted_curve.csv");
  curve << "t_seconds,observed,model\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    curve << times[i] << ',' << observed[i] << ',' << fit.model[i] << '\n';
  return 0;
}

int cmd_validate(const std::string& scenario, bool dump) {
  const coupling::Scenario sc = config::load_scenario(scenario);
  std::printf("%s: kind=%s", sc.name.c_str(), sc.kind.c_str());
  if (sc.kind == "chamber")
    std::printf(", grid %dx%d, %zu stage(s), %.6g h total", sc.nx, sc.ny,
                sc.stages.size(), sc.total_duration() / units::hour);
  else
    std::printf(", %d cells, %.6g h sampled", sc.column.n_cells,
                sc.column.sample_until / units::hour);
  std::printf(" : OK\n");
  if (dump) std::fputs(config::serialize_scenario(sc).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiphase reactive-transport simulator for variably saturated porous media"};
  app.require_subcommand(1);

  std::string scenario = "chamber_full", out_dir = "out", grid_spec, t_end_str,
              data_path;
  double cfl = 0.0;
  int threads = 0;
  bool quiet = false, dump = false;

  std::string builtins;
  for (const auto& n : fringe::config::builtin_names()) builtins += " " + n;

  auto* run = app.add_subcommand("run", "run a chamber scenario");
  run->add_option("--scenario", scenario, "built-in name or file path; built-ins:" + builtins);
  run->add_option("--output", out_dir, "output directory (default: out)");
  run->add_option("--grid", grid_spec, "override resolution, NXxNY");
  run->add_option("--t-end", t_end_str, "truncate the scenario, e.g. 126h");
  run->add_option("--cfl", cfl, "override the advection CFL number");
  run->add_option("--threads", threads, "reaction worker threads");
  run->add_flag("--quiet", quiet, "suppress progress output");

  std::string inv_scenario = "column_breakthrough";
  auto* inv = app.add_subcommand("invert", "fit adhesion parameters to a breakthrough curve");
  inv->add_option("--scenario", inv_scenario, "column scenario (built-in or file)");
  inv->add_option("--data", data_path, "breakthrough CSV (t_seconds,c_out); synthesized when absent");
  inv->add_option("--output", out_dir, "output directory (default: out)");

  std::string val_scenario = "chamber_full";
  auto* val = app.add_subcommand("validate", "parse and check a scenario file");
  val->add_option("--scenario", val_scenario, "scenario to check (built-in or file)");
  val->add_flag("--dump", dump, "print the canonical serialized form");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(scenario, out_dir, grid_spec, t_end_str, cfl, threads, quiet);
    if (inv->parsed()) return cmd_invert(inv_scenario, data_path, out_dir);
    if (val->parsed()) return cmd_validate(val_scenario, dump);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const fringe::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const fringe::SolverError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
