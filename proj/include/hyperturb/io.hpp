/// @file io.hpp
/// @brief CSV and report emission.  All numeric text is printed with 17
///        significant digits so binary64 values round-trip exactly.

#pragma once

#include <cstdint>
#include <string>

#include "hyperturb/diagnostics.hpp"
#include "hyperturb/grid.hpp"
#include "hyperturb/solver.hpp"

namespace hyperturb {

std::string format_g17(double v);

/// Pinned fields format: "# hyperturb fields v1", header line, then rows in
/// row-major cell order.
std::string fields_csv(const Field& field);
void write_fields_csv(const std::string& path, const Field& field);

std::string diagnostics_csv(const std::vector<StepRecord>& log);

/// Flat JSON with a fixed key order.
std::string run_report_json(const RunResult& result, bool aborted, const std::string& abort_reason,
                            long abort_step);
std::string sweep_report_json(const ConvergenceReport& report);
std::string check_report_json(const SweepReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// FNV-1a 64-bit content hash, hex encoded; used for determinism baselines.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace hyperturb
