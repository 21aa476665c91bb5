#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "lcameta/error.hpp"
#include "lcameta/metastats.hpp"
#include "support/files.hpp"
#include "support/stats_properties.hpp"

using namespace lcameta;

namespace {

const std::string kHeader = "study_id,year,chemistry,functional_unit,boundary,region,gwp_native,mass_conversion,outlier\n";

StudyRecord record(int year, double value, FunctionalUnit unit = FunctionalUnit::kg, bool outlier = false) {
  StudyRecord r;
  r.study_id = "x";
  r.year = year;
  r.functional_unit = unit;
  r.gwp_native = value;
  r.outlier = outlier;
  return r;
}

}  // namespace

TEST_CASE("ingestion") {
  SUBCASE("header only") { CHECK(ingest_dataset(kHeader).empty()); }
  SUBCASE("valid rows, optional source column") {
    const auto rows = ingest_dataset(
        "study_id,year,chemistry,functional_unit,boundary,region,gwp_native,mass_conversion,outlier,source\n"
        "A,2015,NMC,kWh,cradle_to_gate,CN,100,4.785,false,\"Doe, 2015\"\n");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].functional_unit == FunctionalUnit::kWh);
    CHECK(rows[0].source == "Doe, 2015");
  }
  SUBCASE("zero mass conversion is rejected naming the row") {
    try {
      ingest_dataset(kHeader + "A,2015,NMC,kg,cradle_to_gate,CN,20,1,false\nB,2016,NMC,kg,cradle_to_gate,CN,20,0,false\n");
      FAIL("expected a dataset error");
    } catch (const DatasetError& e) {
      REQUIRE(e.diagnostics().size() == 1);
      CHECK(e.diagnostics()[0].find("row 2") != std::string::npos);
    }
  }
  SUBCASE("every bad row is reported") {
    try {
      ingest_dataset(kHeader + "A,20x5,NMC,kg,cradle_to_gate,CN,20,1,false\nB,2016,NMC,mile,cradle_to_gate,CN,20,1,maybe\n");
      FAIL("expected a dataset error");
    } catch (const DatasetError& e) {
      CHECK(e.diagnostics().size() >= 2);
    }
  }
  SUBCASE("bad header") { CHECK_THROWS_AS(ingest_dataset("a,b\n"), ParseError); }
}

TEST_CASE("mass basis") {
  CHECK(to_mass_basis(record(2015, 21.68)) == 21.68);
  auto kwh = record(2015, 100.0, FunctionalUnit::kWh);
  kwh.mass_conversion = 1.0 / 0.209;
  CHECK(to_mass_basis(kwh) == doctest::Approx(100.0 * 0.209).epsilon(1e-12));
  CHECK(to_mass_basis(record(2015, 0.0)) == 0.0);
  auto scaled = kwh;
  scaled.gwp_native *= 3.5;
  scaled.mass_conversion *= 3.5;
  CHECK(to_mass_basis(scaled) == doctest::Approx(to_mass_basis(kwh)).epsilon(1e-15));
}

TEST_CASE("descriptive statistics") {
  const auto s = describe_values({3, 1, 2});
  CHECK(s.mean == 2.0);
  CHECK(s.median == 2.0);
  CHECK(s.variance == 1.0);
  CHECK(s.range == 2.0);
  CHECK(describe_values({5}).variance == 0.0);
  CHECK(describe_values({1, 2, 3, 10}).median == 2.5);
  CHECK_THROWS_AS(describe_values({}), ValidationError);

  SUBCASE("empty filtered subset names the filter") {
    const std::vector<StudyRecord> only_kg{record(2015, 1.0)};
    try {
      describe(only_kg, FunctionalUnit::km, false);
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("functional_unit=km") != std::string::npos);
    }
  }
}

TEST_CASE("quantile and IQR flags") {
  CHECK(quantile({1, 2, 3, 4}, 0.25) == doctest::Approx(1.75));
  CHECK(quantile({1, 2, 3, 4}, 1.0) == 4.0);
  std::vector<StudyRecord> rs;
  for (double v : {10, 11, 12, 13, 14, 15, 100}) rs.push_back(record(2015, v));
  const auto flags = iqr_outliers(rs, std::nullopt);
  REQUIRE(flags.size() == 1);
  CHECK(flags[0].index == 6);
}

TEST_CASE("yearly averages") {
  SUBCASE("single year") {
    const auto y = yearly_averages({record(2015, 10), record(2015, 20)}, false);
    REQUIRE(y.size() == 1);
    CHECK(y[0].year == 2015);
    CHECK(y[0].mean_gwp == 15.0);
    CHECK(y[0].n == 2);
  }
  SUBCASE("outlier exclusion against a grouping oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
      const auto rs = testing_support::random_records(rng);
      std::map<int, std::pair<double, int>> expect;
      for (const auto& r : rs)
        if (!r.outlier) {
          expect[r.year].first += to_mass_basis(r);
          expect[r.year].second += 1;
        }
      const auto got = yearly_averages(rs, true);
      REQUIRE(got.size() == expect.size());
      auto it = expect.begin();
      for (const auto& g : got) {
        CHECK(g.year == it->first);
        CHECK(g.mean_gwp == doctest::Approx(it->second.first / it->second.second).epsilon(1e-12));
        ++it;
      }
    }
  }
}

TEST_CASE("random datasets satisfy the statistics properties") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    CHECK(testing_support::check_stats_properties(rng) == "");
  }
}

TEST_CASE("shipped synthetic dataset") {
  const auto rows = ingest_dataset(testing_support::read_data("meta_dataset.csv"));
  CHECK(rows.size() == 40);
  CHECK(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.outlier; }) == 4);
  CHECK(yearly_averages(rows, true).size() == 7);
  const auto all = describe(rows, std::nullopt, false);
  CHECK(std::fabs(all.mean - 24.77) < 0.02);
  CHECK(std::fabs(all.median - 20.18) < 0.02);
}
