#pragma once

// Serialization of engine, statistics and regression results as JSON, CSV or
// fixed-width text. Every emitter is deterministic for identical input.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lcameta/lca_engine.hpp"
#include "lcameta/metastats.hpp"
#include "lcameta/regress.hpp"

namespace lcameta::report {

enum class Format { json, csv, text };

std::optional<Format> parse_format(std::string_view text);

/// Fixed 4-decimal rendering used by CSV and text output.
std::string fixed4(double value);

nlohmann::json to_json(const ScoreBreakdown& breakdown);
nlohmann::json to_json(const std::vector<RankedContribution>& ranking);
nlohmann::json to_json(const DescriptiveStats& stats);
nlohmann::json to_json(const FitResult& fit);
nlohmann::json to_json(const ResidualDiagnostics& diagnostics);
nlohmann::json to_json(const SelectionReport& report);

std::string dump(const nlohmann::json& document);

/// `lca-compute`: JSON tree + ranking, CSV sankey edge list, or text ranking.
std::string emit_breakdown(const ScoreBreakdown& breakdown, Format format, std::size_t depth);

/// `lca-compare`: one entry per (process, scenario). `diffs` holds the
/// consecutive-scenario difference reports of the first process.
struct Comparison {
  std::vector<std::string> process_ids;
  std::vector<std::vector<ScoreBreakdown>> per_process;  // [process][scenario]
};
std::string emit_comparison(const Comparison& comparison, Format format);

struct Conversion {
  double value_per_kg = 0.0;
  double specific_energy = 0.0;
  double value_per_kwh = 0.0;
};
std::string emit_conversion(const Conversion& conversion, Format format);

struct StatsRow {
  std::string group;  // all, km, kWh, kg
  bool outliers_excluded = false;
  DescriptiveStats stats;
};
/// A single row in JSON form is the bare `{n, mean, median, std_dev,
/// variance, range}` object; several rows become an array with group labels.
std::string emit_stats(const std::vector<StatsRow>& rows, Format format);

std::string emit_yearly(const std::vector<YearlyAverage>& averages, Format format);

struct IqrRow {
  std::string study_id;
  std::string functional_unit;
  double mass_basis = 0.0;
  bool flagged_outlier = false;
};
std::string emit_iqr(const std::vector<IqrRow>& rows, Format format);

std::string emit_fits(const std::vector<FitResult>& fits, Format format);
std::string emit_selection(const SelectionReport& report, Format format);

}  // namespace lcameta::report
