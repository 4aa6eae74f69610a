#pragma once

// Column breakthrough forward model and Levenberg-Marquardt parameter
// recovery for the attachment/detachment kinetics.

#include <functional>
#include <string>
#include <vector>

#include "fringe/reaction.hpp"

namespace fringe::inverse {

/// Saturated 1D column pulse experiment. The column is fully liquid
/// saturated, flow is steady, and only attachment/detachment acts on the
/// suspended cells, so the outlet curve responds to (k_att, k_det, c_s_X_max)
/// alone.
struct ColumnExperiment {
  double length = 0.10;         // [m]
  double porosity = 0.39;       // [-]
  double pore_velocity = 0.0;   // [m/s]
  double c_in = 0.0;            // injected concentration [kg/m^3]
  double pulse_duration = 0.0;  // [s]
  double sample_interval = 120.0;  // [s]
  double sample_until = 0.0;       // [s]
  int n_cells = 512;
  double cfl = 0.4;

  std::vector<double> sample_times() const;
  void validate() const;
};

/// Outlet concentration [kg/m^3] at the experiment's sample times.
std::vector<double> breakthrough_forward(const ColumnExperiment& ex,
                                         const reaction::AdhesionParams& ap);

struct LMOptions {
  int max_iter = 60;
  double lambda0 = 1e-3;
  double lambda_factor = 10.0;
  double lambda_max = 1e12;
  double ftol = 1e-10;   // relative RSS decrease
  double gtol = 1e-12;   // max |gradient|
  double fd_rel = 1e-6;  // forward-difference step on log parameters
};

struct LMSummary {
  std::vector<double> params;
  double rss = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes ||r(p)||^2 over strictly positive parameters by working in
/// log space; `residuals` receives physical parameter values. The accepted
/// RSS sequence is monotone by construction.
LMSummary levenberg_marquardt(
    const std::function<std::vector<double>(const std::vector<double>&)>& residuals,
    std::vector<double> start, const LMOptions& opts = {});

struct FitResult {
  reaction::AdhesionParams params;
  double rss = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::vector<double> model;  // fitted outlet curve at sample times
};

FitResult fit_adhesion(const ColumnExperiment& ex,
                       const std::vector<double>& observed,
                       const reaction::AdhesionParams& start,
                       const LMOptions& opts = {});

/// Multiplicative Gaussian noise, fixed seed: c -> c * (1 + sigma * N(0,1)).
std::vector<double> add_noise(const std::vector<double>& clean, double sigma,
                              unsigned seed);

// breakthrough CSV: header line then "t_seconds,c_out" rows
void write_breakthrough_csv(const std::string& path,
                            const std::vector<double>& times,
                            const std::vector<double>& conc);
void read_breakthrough_csv(const std::string& path, std::vector<double>& times,
                           std::vector<double>& conc);

}  // namespace fringe::inverse
