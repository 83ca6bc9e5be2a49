#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dlimit/em_system.hpp"
#include "dlimit/eos.hpp"
#include "dlimit/torus.hpp"

namespace dlimit {

/// Everything a sweep needs. Loaded from an INI file with sections
/// [grid], [eos], [sweep], [ic] and [output].
struct ExperimentConfig {
  // [grid]
  int n = 64;
  int active_dims = 2;
  // [eos]
  double gamma = 5.0 / 3.0;
  double p_floor = 1e-8;
  double S_floor = 1e-8;
  // [sweep]
  std::vector<double> epsilons{1e-1, 5e-2, 2e-2, 1e-2, 5e-3, 2e-3};
  double t_final = 0.5;
  double cfl = 0.4;
  double dt = 0.0;  ///< 0 picks the largest CFL-admissible step that divides t_final
  int snapshot_every = 8;
  std::vector<double> s_list{0.0, 2.0, 4.0};
  double gamma_s = 2.0;  ///< Sobolev index of the reported weighted energy
  EmScheme scheme = EmScheme::exponential;
  // [ic]
  std::string recipe = "default";
  double amp = 0.1;
  double perturb_amp = 1.0;
  std::uint64_t seed = 20240611;
  // [output]
  std::string output_dir = "out";

  TorusGrid grid() const { return TorusGrid(n, active_dims); }
  EosClosure eos() const { return EosClosure(gamma, p_floor, S_floor); }

  /// Throws UsageError describing the first violated invariant.
  void validate() const;

  /// Stable text form of every field that influences results (not output_dir).
  std::string canonical() const;
  std::uint64_t hash() const;
  std::string hash_hex() const;
};

/// Parses INI text. Unknown sections or keys are rejected with UsageError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

std::string scheme_name(EmScheme s);
EmScheme parse_scheme(const std::string& name);

}  // namespace dlimit
