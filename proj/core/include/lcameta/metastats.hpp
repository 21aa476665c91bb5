#pragma once

// Meta-analysis dataset: ingestion, mass-basis harmonization and descriptive
// statistics.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcameta {

enum class FunctionalUnit { km, kWh, kg };
enum class Boundary { cradle_to_gate, cradle_to_grave };

std::string_view to_string(FunctionalUnit unit);
std::string_view to_string(Boundary boundary);
std::optional<FunctionalUnit> parse_functional_unit(std::string_view text);

struct StudyRecord {
  std::string study_id;
  int year = 0;
  std::string chemistry;
  FunctionalUnit functional_unit = FunctionalUnit::kg;
  Boundary boundary = Boundary::cradle_to_gate;
  std::string region;
  double gwp_native = 0.0;       // kg CO2-eq per functional unit
  double mass_conversion = 1.0;  // kg of battery per functional unit
  bool outlier = false;
  std::string source;  // optional trailing comment column
};

/// CSV with header `study_id,year,chemistry,functional_unit,boundary,region,
/// gwp_native,mass_conversion,outlier` and an optional trailing `source`
/// column. Every row is checked; any invalid row rejects the whole file with a
/// DatasetError listing each row's problems.
std::vector<StudyRecord> ingest_dataset(std::string_view document);

/// kg CO2-eq per kg of battery.
double to_mass_basis(const StudyRecord& record);

struct DescriptiveStats {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double std_dev = 0.0;  // sample (n - 1) denominator; 0 for n = 1
  double variance = 0.0;
  double range = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Statistics of a plain sample; throws ValidationError when empty.
DescriptiveStats describe_values(std::vector<double> values);

/// Mass-basis statistics over the records passing the filters. Throws
/// ValidationError naming the filter when the subset is empty.
DescriptiveStats describe(const std::vector<StudyRecord>& records, std::optional<FunctionalUnit> group,
                          bool exclude_outliers);

struct YearlyAverage {
  int year = 0;
  double mean_gwp = 0.0;
  std::size_t n = 0;
};

/// One entry per distinct year in ascending order.
std::vector<YearlyAverage> yearly_averages(const std::vector<StudyRecord>& records, bool exclude_outliers);

/// Linear-interpolation quantile (the common "type 7" definition), q in [0, 1].
double quantile(std::vector<double> values, double q);

struct IqrFlag {
  std::size_t index = 0;  // into the record list
  double mass_basis = 0.0;
};

/// Records whose mass-basis value exceeds Q3 + 1.5 IQR of the (optionally
/// grouped) subset. Diagnostic only; the dataset's own outlier flags are what
/// `describe` honours.
std::vector<IqrFlag> iqr_outliers(const std::vector<StudyRecord>& records, std::optional<FunctionalUnit> group);

}  // namespace lcameta
