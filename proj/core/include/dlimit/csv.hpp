#pragma once

#include <string>
#include <vector>

#include "dlimit/sweep.hpp"

namespace dlimit {

inline constexpr const char* kSeriesHeader =
    "t,norm_s0,norm_s2,norm_s4,weighted_s0,weighted_s2,f_norm_s0,damping_accum,gamma,min_p,"
    "min_S,div_H";

/// "0.05" style tag used in series file names.
std::string epsilon_tag(double epsilon);

void write_series_csv(const std::string& path, const std::string& config_hash, double epsilon,
                      const std::vector<SeriesRow>& rows);
void write_sweep_report(const std::string& path, const SweepReport& report);

/// Reads the per-epsilon rows of a sweep_report.csv (the comment block is ignored).
std::vector<SweepRow> read_sweep_rows(const std::string& path);

/// Combines several reports; throws UsageError when config hashes differ.
SweepReport merge_sweep_reports(const std::vector<std::string>& paths);

}  // namespace dlimit
