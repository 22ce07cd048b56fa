#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "bearing/bounds.hpp"
#include "bearing/runner.hpp"

namespace bearing {

enum class OutputFormat { csv, report, both };

OutputFormat output_format_from_string(std::string_view name);

/// Shortest round-trip text for a double ("%.17g"; "inf", "nan").
std::string format_number(double x);

/// Trajectory table in original agent id order. Empty for aborted runs.
void write_csv(const RunResult& r, std::ostream& os);

/// Human-readable run summary: pre-check, bound inputs, admissibility, verdict.
void write_report(const RunResult& r, std::ostream& os);

/// Bound inputs and result only.
void write_bound_report(const BoundReport& b, std::ostream& os);

/// Writes <dir>/<name>_seed<seed>.csv and/or .report.txt and returns the paths.
/// The CSV is skipped when the run produced no complete trace.
std::vector<std::filesystem::path> emit(const RunResult& r, const std::filesystem::path& dir,
                                        OutputFormat format);

}  // namespace bearing
