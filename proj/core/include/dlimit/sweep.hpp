#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlimit/config.hpp"
#include "dlimit/em_system.hpp"
#include "dlimit/mhd_system.hpp"
#include "dlimit/rate_fit.hpp"

namespace dlimit {

/// One line of series_<eps>.csv.
struct SeriesRow {
  double t = 0.0;
  double norm_s0 = 0.0, norm_s2 = 0.0, norm_s4 = 0.0;
  double weighted_s0 = 0.0, weighted_s2 = 0.0;
  double f_norm_s0 = 0.0;
  double damping_accum = 0.0;
  double gamma = 0.0;
  double min_p = 0.0, min_S = 0.0, div_H = 0.0;
};

/// Trajectory summary for one epsilon. Suprema run over every step.
struct SweepRow {
  std::string config_hash;
  double epsilon = 0.0;
  double sup_norm_s0 = 0.0, sup_norm_s2 = 0.0, sup_norm_s4 = 0.0;
  double sup_sqrt_eps_f_s0 = 0.0, sup_sqrt_eps_f_s2 = 0.0;
  double sup_f_s0 = 0.0, sup_f_s2 = 0.0;
  double damping = 0.0;    ///< integral of ||F||^2 over the horizon
  double sup_gamma = 0.0;  ///< at the configured gamma_s
  double sup_div_H = 0.0;  ///< max |div H| of the Euler-Maxwell run
  double sup_div_G = 0.0;
  double t_reached = 0.0;
  int steps = 0;
};

/// MHD solution sampled at every Euler-Maxwell step time. Immutable once
/// built; every field is synchronised so workers can read it concurrently.
struct Background {
  double dt = 0.0;
  int steps = 0;
  std::vector<MhdState> states;
  double sup_div_H = 0.0;
};

/// Step for the Euler-Maxwell run: cfg.dt when set, otherwise the largest
/// step within 0.9 * cfl of the initial magnetosonic bound whose step count
/// divides t_final and is a multiple of snapshot_every.
std::pair<double, int> choose_step(const ExperimentConfig& cfg, const MhdState& ic);

/// Integrates the MHD system with half the Euler-Maxwell step.
Background compute_background(const ExperimentConfig& cfg);

struct PairResult {
  SweepRow row;
  std::vector<SeriesRow> series;
  std::vector<std::string> warnings;
  std::optional<EmState> final_state;
};

/// Runs Euler-Maxwell at epsilon against the shared background. Solver
/// failures are rethrown with epsilon and time in the message.
PairResult run_pair(const ExperimentConfig& cfg, const Background& bg, double epsilon);

/// Error-system residual of one epsilon pair under repeated dt halving.
struct ResidualStudy {
  double epsilon = 0.0;
  std::vector<int> steps;
  std::vector<double> dts;
  std::vector<double> times;     ///< interior snapshot times of the coarsest level
  std::vector<double> residual;  ///< max total residual over `times`, per level
  RateFit fit;                   ///< slope of residual against dt
};

/// Runs the pair at steps N, 2N, 4N... where N is the step count choose_step
/// picks. Snapshots are taken every snapshot_every steps, so the
/// differencing stencil shrinks with dt.
ResidualStudy residual_convergence(const ExperimentConfig& cfg, double epsilon, int levels = 4);

/// Names of the fitted metrics, in report order.
const std::vector<std::string>& rate_metrics();
double metric_value(const SweepRow& row, const std::string& metric);

struct SweepReport {
  std::string config_hash;
  std::vector<SweepRow> rows;  ///< ascending epsilon
  std::vector<std::pair<std::string, RateFit>> fits;
  std::vector<std::string> warnings;
  double gamma_C = 0.0;          ///< sup Gamma / eps^2 at the largest epsilon
  double gamma_max_ratio = 0.0;  ///< max over rows of sup Gamma / (gamma_C eps^2)

  const RateFit& fit(const std::string& metric) const;
};

/// Sorts rows, fits slopes, flags non-monotone metrics. Rows with differing
/// config hashes are refused with UsageError.
SweepReport summarize(std::vector<SweepRow> rows);

/// Caps a requested worker count by DLL_THREADS (if set) and by `jobs`.
/// A DLL_THREADS value that is not a positive integer throws UsageError.
int resolve_workers(int requested, int jobs);

/// Full sweep. With a non-empty out_dir, writes series_<eps>.csv for every
/// epsilon and sweep_report.csv.
SweepReport sweep_epsilon(const ExperimentConfig& cfg, int workers, const std::string& out_dir);

}  // namespace dlimit
