#pragma once

#include <string>
#include <vector>

#include "dlimit/em_system.hpp"
#include "dlimit/eos.hpp"
#include "dlimit/mhd_system.hpp"

namespace dlimit {

/// Smooth z-invariant trigonometric fields with the analytic defect of both
/// systems available as forcing. H is built from a stream function plus a
/// z-component, so it is solenoidal.
class ManufacturedSolution {
 public:
  /// steady = true freezes every time factor at its t = 0 value.
  explicit ManufacturedSolution(bool steady, double amp = 0.1);

  EmState em_state(const TorusGrid& grid, double t) const;
  MhdState mhd_state(const TorusGrid& grid, double t) const;

  /// d/dt of the exact fields minus the continuous right-hand side.
  EmRates em_forcing(const TorusGrid& grid, double t, double epsilon, const EosClosure& eos) const;
  MhdRates mhd_forcing(const TorusGrid& grid, double t, const EosClosure& eos) const;

 private:
  bool steady_;
  double amp_;
};

struct MmsConfig {
  int n = 32;
  int n_coarse = 16;
  double t_final = 0.5;
  double epsilon = 0.1;
  double amp = 0.1;
  std::vector<int> step_counts{64, 128, 256, 512};
  int em_spatial_steps = 128;
  // Strang splitting does not keep steady states exactly, so the MHD run needs
  // a fine step for the splitting error to stay below the n_coarse error.
  int mhd_spatial_steps = 4096;
  EosClosure eos;
  EmScheme scheme = EmScheme::exponential;
};

struct MmsSeries {
  std::string solver;
  std::vector<double> dts;
  std::vector<double> errors;  ///< max abs deviation over all fields at t_final
  double order = 0.0;          ///< least-squares slope of log error vs log dt
  double coarse_error = 0.0;   ///< steady solution, n_coarse
  double fine_error = 0.0;     ///< steady solution, n
  double spatial_drop = 0.0;   ///< coarse_error / fine_error
};

struct MmsReport {
  MmsSeries em;
  MmsSeries mhd;

  bool pass(double min_order = 1.9, double min_drop = 50.0) const;
};

MmsReport mms_verify(const MmsConfig& cfg);

/// Max abs field deviation at cfg.t_final for a single run.
double mms_em_error(const MmsConfig& cfg, int n, int steps, bool steady);
double mms_mhd_error(const MmsConfig& cfg, int n, int steps, bool steady);

}  // namespace dlimit
