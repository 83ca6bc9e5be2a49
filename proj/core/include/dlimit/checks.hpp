#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlimit/config.hpp"
#include "dlimit/eos.hpp"
#include "dlimit/sweep.hpp"

namespace dlimit {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

/// Discrete vector calculus, the div(F x G) cancellation, curl assembly,
/// symmetric-form structure, the div-curl ratio and div H / div G over a full
/// run at the smallest configured epsilon.
std::vector<CheckResult> structural_checks(const ExperimentConfig& cfg, std::uint64_t seed);

/// Positivity, d(ln r)/dp against coeff_a and the order of the Gibbs residual
/// over random admissible states in [S_floor, 2] x [p_floor, 10].
std::vector<CheckResult> eos_checks(const EosClosure& eos, std::uint64_t seed, int samples = 10000);

/// Convergence-rate bands for a sweep: slopes of sup ||(P,U,Phi,G)||_s in
/// [0.85, 1.15] (s = 0, 2), sup sqrt(eps)||F||_s >= 0.85, sup ||F||_s >= 0.4,
/// damping integral >= 1.7, sup Gamma >= 1.7 and Gamma <= 10 C eps^2.
std::vector<CheckResult> rate_checks(const SweepReport& report);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace dlimit
