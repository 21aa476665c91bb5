#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "lcameta/csv.hpp"
#include "support/files.hpp"

using testing_support::data_path;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "lcameta");
  std::ostringstream out, err;
  const int code = lcameta::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lca_args(const std::string& sub) {
  return {sub, "--inventory", data_path("nmc811_battery.json"), "--factors", data_path("factors_appendix.csv")};
}

std::set<std::string> flags_in(const std::string& help) {
  std::set<std::string> flags;
  static const std::regex flag(R"((^|[\s,])(--[a-z][a-z-]*))");
  for (auto it = std::sregex_iterator(help.begin(), help.end(), flag); it != std::sregex_iterator(); ++it)
    flags.insert((*it)[2]);
  return flags;
}

}  // namespace

TEST_CASE("exit codes") {
  const auto none = run({});
  CHECK(none.code == lcameta::cli::kUsageError);
  CHECK(none.out.empty());
  CHECK(none.err.find("lca-compare") != std::string::npos);

  const auto help = run({"--help"});
  CHECK(help.code == lcameta::cli::kSuccess);
  CHECK(help.err.empty());

  CHECK(run({"no-such-command"}).code == lcameta::cli::kUsageError);
  CHECK(run({"lca-convert"}).code == lcameta::cli::kUsageError);
  CHECK(run({"lca-convert", "--value", "1", "--format", "xml"}).code == lcameta::cli::kUsageError);
}

TEST_CASE("lca-compare csv reproduces the appendix totals") {
  auto args = lca_args("lca-compare");
  args.insert(args.end(), {"--scenarios", "cn,sk,se", "--format", "csv"});
  const auto r = run(args);
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  const auto rows = lcameta::csv::parse(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].fields[2] == "17.3293");
  CHECK(rows[2].fields[2] == "16.8552");
  CHECK(rows[3].fields[2] == "16.4704");
}

TEST_CASE("lca-convert") {
  const auto r = run({"lca-convert", "--value", "16.85", "--specific-energy", "0.209", "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("80.6220") != std::string::npos);
  CHECK(run({"lca-convert", "--value", "1", "--specific-energy", "0"}).code == lcameta::cli::kValidationFailure);
}

TEST_CASE("sankey csv has one edge per pack exchange at depth 1") {
  auto args = lca_args("lca-compute");
  args.insert(args.end(), {"--scenario", "cn", "--format", "csv", "--depth", "1"});
  const auto r = run(args);
  REQUIRE(r.code == 0);
  CHECK(lcameta::csv::parse(r.out).size() == 1 + 18);
}

TEST_CASE("validation findings exit 1 with JSON on stderr") {
  const auto dir = std::filesystem::temp_directory_path() / "lcameta_cli_test";
  std::filesystem::create_directories(dir);
  const auto factors = (dir / "factors.csv").string();
  {
    std::ofstream(factors) << "input_name,origin,unit,gwp_factor\n";
  }
  const auto r = run({"lca-compute", "--inventory", data_path("nmc811_battery.json"), "--factors", factors});
  CHECK(r.code == lcameta::cli::kValidationFailure);
  CHECK(r.out.empty());
  CHECK(r.err.find("\"findings\"") != std::string::npos);
  CHECK(r.err.find("missing_factor") != std::string::npos);
}

TEST_CASE("empty statistics group names the filter") {
  const auto dir = std::filesystem::temp_directory_path() / "lcameta_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "only_kg.csv").string();
  {
    std::ofstream(path) << "study_id,year,chemistry,functional_unit,boundary,region,gwp_native,mass_conversion,outlier\n"
                        << "A,2015,NMC,kg,cradle_to_gate,CN,20,1,false\n";
  }
  const auto r = run({"stats-describe", "--dataset", path, "--group", "km"});
  CHECK(r.code == lcameta::cli::kValidationFailure);
  CHECK(r.out.empty());
  CHECK(r.err.find("functional_unit=km") != std::string::npos);
}

TEST_CASE("identical inputs give identical bytes") {
  std::vector<std::vector<std::string>> invocations;
  for (const char* fmt : {"json", "csv", "text"}) {
    auto a = lca_args("lca-compare");
    a.insert(a.end(), {"--scenarios", "cn,sk,se", "--format", fmt});
    invocations.push_back(a);
    invocations.push_back({"stats-describe", "--dataset", data_path("meta_dataset.csv"), "--by-group", "--format", fmt});
    invocations.push_back({"regress-select", "--input", data_path("regression_yearly.csv"), "--format", fmt});
  }
  for (const auto& args : invocations) {
    const auto first = run(args);
    const auto second = run(args);
    CAPTURE(args[0]);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK_FALSE(first.out.empty());
  }
}

TEST_CASE("help lists exactly the accepted flags") {
  const std::map<std::string, std::set<std::string>> expected{
      {"lca-compute", {"--inventory", "--factors", "--process", "--scenario", "--scenario-dir", "--depth"}},
      {"lca-compare", {"--inventory", "--factors", "--scenarios", "--scenario-dir", "--process"}},
      {"lca-convert", {"--value", "--specific-energy"}},
      {"stats-describe", {"--dataset", "--group", "--exclude-outliers", "--by-group", "--yearly", "--iqr-check"}},
      {"regress-fit", {"--input", "--models"}},
      {"regress-select", {"--input", "--models", "--alpha"}},
      {"report",
       {"--inventory", "--factors", "--scenarios", "--scenario-dir", "--process", "--depth", "--specific-energy",
        "--dataset", "--regression", "--alpha"}},
  };
  for (const auto& [sub, flags] : expected) {
    CAPTURE(sub);
    const auto r = run({sub, "--help"});
    CHECK(r.code == 0);
    auto want = flags;
    want.insert({"--help", "--help-all", "--format", "--output"});
    CHECK(flags_in(r.out) == want);
  }
}

TEST_CASE("output file receives the report") {
  const auto path = (std::filesystem::temp_directory_path() / "lcameta_cli_convert.json").string();
  const auto r = run({"lca-convert", "--value", "17.33", "--output", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(testing_support::read_file(path).find("82.9186") != std::string::npos);
}
