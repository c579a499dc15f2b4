#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "fixopt/experiment.hpp"

namespace fixopt {

inline constexpr const char* kRawCsvHeader = "algorithm,sampling,seed,n,D_contrib,f_value,clamps";
inline constexpr const char* kAggregateCsvHeader = "algorithm,n,D_n,F_n";

void write_raw_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

/// Per-algorithm summary (final D_N, F_N, clamp totals, wall time, warnings) as JSON.
void write_summary(std::ostream& out, const ExperimentResult& result);

struct SvgSeries {
  std::string name;
  std::vector<double> values;  // indexed by n
};

/// Standalone SVG 1.1 line chart, one polyline per series.
void write_svg(std::ostream& out, const std::string& title, const std::vector<SvgSeries>& series, bool log_y);

std::vector<SvgSeries> d_series(const std::vector<AggregateRow>& rows);
std::vector<SvgSeries> f_series(const std::vector<AggregateRow>& rows);

/// File wrappers. Unwritable paths throw IoError naming the path.
void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);
void emit_aggregate(const std::vector<AggregateRow>& rows, const std::filesystem::path& path);
void emit_summary(const ExperimentResult& result, const std::filesystem::path& path);
void emit_svg(const std::vector<SvgSeries>& series, const std::string& title, bool log_y,
              const std::filesystem::path& path);

}  // namespace fixopt
