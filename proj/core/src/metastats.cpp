#include "lcameta/metastats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "lcameta/csv.hpp"
#include "lcameta/error.hpp"

namespace lcameta {

std::string_view to_string(FunctionalUnit unit) {
  switch (unit) {
    case FunctionalUnit::km: return "km";
    case FunctionalUnit::kWh: return "kWh";
    case FunctionalUnit::kg: return "kg";
  }
  return "?";
}

std::string_view to_string(Boundary boundary) {
  return boundary == Boundary::cradle_to_gate ? "cradle_to_gate" : "cradle_to_grave";
}

std::optional<FunctionalUnit> parse_functional_unit(std::string_view text) {
  if (text == "km") return FunctionalUnit::km;
  if (text == "kWh") return FunctionalUnit::kWh;
  if (text == "kg") return FunctionalUnit::kg;
  return std::nullopt;
}

namespace {

template <typename T>
bool parse_number(const std::string& text, T& out) {
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return !text.empty() && ec == std::errc() && end == text.data() + text.size();
}

}  // namespace

std::vector<StudyRecord> ingest_dataset(std::string_view document) {
  static const csv::Row header{"study_id", "year",      "chemistry",       "functional_unit", "boundary",
                               "region",   "gwp_native", "mass_conversion", "outlier"};
  const auto records = csv::parse(document);
  if (records.empty()) throw ParseError("dataset is empty; expected a header row", 1);

  csv::Row found = records.front().fields;
  const bool with_source = found.size() == header.size() + 1 && found.back() == "source";
  if (with_source) found.pop_back();
  if (found != header) {
    throw ParseError("dataset header must be study_id,year,chemistry,functional_unit,boundary,region,"
                     "gwp_native,mass_conversion,outlier[,source]",
                     records.front().line);
  }
  const std::size_t width = header.size() + (with_source ? 1 : 0);

  std::vector<StudyRecord> out;
  std::vector<std::string> problems;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& [line, f] = records[r];
    const std::string row = "row " + std::to_string(r) + " (line " + std::to_string(line) + ")";
    if (f.size() != width) {
      problems.push_back(row + ": expected " + std::to_string(width) + " columns, found " + std::to_string(f.size()));
      continue;
    }
    std::vector<std::string> issues;
    StudyRecord rec;
    rec.study_id = f[0];
    if (rec.study_id.empty()) issues.push_back("empty study_id");
    if (!parse_number(f[1], rec.year)) issues.push_back("year '" + f[1] + "' is not an integer");
    rec.chemistry = f[2];
    if (auto unit = parse_functional_unit(f[3])) {
      rec.functional_unit = *unit;
    } else {
      issues.push_back("functional_unit '" + f[3] + "' is not one of km, kWh, kg");
    }
    if (f[4] == "cradle_to_gate") {
      rec.boundary = Boundary::cradle_to_gate;
    } else if (f[4] == "cradle_to_grave") {
      rec.boundary = Boundary::cradle_to_grave;
    } else {
      issues.push_back("boundary '" + f[4] + "' is not cradle_to_gate or cradle_to_grave");
    }
    rec.region = f[5];
    if (!parse_number(f[6], rec.gwp_native) || !std::isfinite(rec.gwp_native)) {
      issues.push_back("gwp_native '" + f[6] + "' is not a finite number");
    }
    if (!parse_number(f[7], rec.mass_conversion) || !std::isfinite(rec.mass_conversion)) {
      issues.push_back("mass_conversion '" + f[7] + "' is not a finite number");
    } else if (!(rec.mass_conversion > 0.0)) {
      issues.push_back("mass_conversion must be positive, got " + f[7]);
    }
    if (f[8] == "true" || f[8] == "1") {
      rec.outlier = true;
    } else if (f[8] == "false" || f[8] == "0") {
      rec.outlier = false;
    } else {
      issues.push_back("outlier '" + f[8] + "' is not true/false");
    }
    if (with_source) rec.source = f[9];

    if (issues.empty()) {
      const double mass = to_mass_basis(rec);
      if (!std::isfinite(mass) || !(mass > 0.0)) issues.push_back("mass-basis value must be finite and positive");
    }
    for (const auto& issue : issues) problems.push_back(row + ": " + issue);
    if (issues.empty()) out.push_back(std::move(rec));
  }
  if (!problems.empty()) throw DatasetError(std::move(problems));
  return out;
}

double to_mass_basis(const StudyRecord& record) { return record.gwp_native / record.mass_conversion; }

DescriptiveStats describe_values(std::vector<double> values) {
  if (values.empty()) throw ValidationError("cannot describe an empty sample");
  std::sort(values.begin(), values.end());
  DescriptiveStats s;
  s.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  const std::size_t mid = s.n / 2;
  s.median = s.n % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.variance = s.n > 1 ? ss / static_cast<double>(s.n - 1) : 0.0;
  s.std_dev = std::sqrt(s.variance);
  s.min = values.front();
  s.max = values.back();
  s.range = s.max - s.min;
  return s;
}

namespace {

std::vector<double> select(const std::vector<StudyRecord>& records, std::optional<FunctionalUnit> group,
                           bool exclude_outliers) {
  std::vector<double> values;
  for (const auto& r : records) {
    if (group && r.functional_unit != *group) continue;
    if (exclude_outliers && r.outlier) continue;
    values.push_back(to_mass_basis(r));
  }
  return values;
}

}  // namespace

DescriptiveStats describe(const std::vector<StudyRecord>& records, std::optional<FunctionalUnit> group,
                          bool exclude_outliers) {
  std::vector<double> values = select(records, group, exclude_outliers);
  if (values.empty()) {
    std::string filter = "functional_unit=" + std::string(group ? to_string(*group) : "all");
    filter += exclude_outliers ? ", outliers excluded" : ", outliers included";
    throw ValidationError("no records match filter (" + filter + ")");
  }
  return describe_values(std::move(values));
}

std::vector<YearlyAverage> yearly_averages(const std::vector<StudyRecord>& records, bool exclude_outliers) {
  std::map<int, std::pair<double, std::size_t>> by_year;
  for (const auto& r : records) {
    if (exclude_outliers && r.outlier) continue;
    auto& [sum, count] = by_year[r.year];
    sum += to_mass_basis(r);
    ++count;
  }
  std::vector<YearlyAverage> out;
  out.reserve(by_year.size());
  for (const auto& [year, acc] : by_year) {
    out.push_back({year, acc.first / static_cast<double>(acc.second), acc.second});
  }
  return out;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ValidationError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<IqrFlag> iqr_outliers(const std::vector<StudyRecord>& records, std::optional<FunctionalUnit> group) {
  const std::vector<double> values = select(records, group, false);
  if (values.empty()) return {};
  const double q1 = quantile(values, 0.25);
  const double q3 = quantile(values, 0.75);
  const double fence = q3 + 1.5 * (q3 - q1);
  std::vector<IqrFlag> flags;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (group && records[i].functional_unit != *group) continue;
    const double v = to_mass_basis(records[i]);
    if (v > fence) flags.push_back({i, v});
  }
  return flags;
}

}  // namespace lcameta
