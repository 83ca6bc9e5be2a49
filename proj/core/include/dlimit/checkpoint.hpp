#pragma once

#include <string>

#include "dlimit/em_system.hpp"
#include "dlimit/mhd_system.hpp"

namespace dlimit {

/// Checkpoint container: one JSON header line (format, kind, grid, time,
/// field names, sample count, config hash) followed by the physical samples of
/// every component as little-endian doubles.
void write_checkpoint(const std::string& path, const EmState& s, const std::string& config_hash = "");
void write_checkpoint(const std::string& path, const MhdState& s, const std::string& config_hash = "");

/// Throw UsageError on a malformed file or a kind mismatch.
EmState read_em_checkpoint(const std::string& path);
MhdState read_mhd_checkpoint(const std::string& path);

}  // namespace dlimit
