#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lcameta/error.hpp"
#include "lcameta/inventory.hpp"
#include "lcameta/lca_engine.hpp"
#include "lcameta/metastats.hpp"
#include "lcameta/regress.hpp"
#include "report.hpp"

namespace lcameta::cli {

namespace fs = std::filesystem;
using report::Format;

namespace {

constexpr double kDefaultSpecificEnergy = 0.209;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Findings are reported as one JSON document on the error stream.
class FindingsError : public ValidationError {
 public:
  explicit FindingsError(std::vector<Finding> findings)
      : ValidationError("validation failed"), findings_(std::move(findings)) {}
  const std::vector<Finding>& findings() const noexcept { return findings_; }

 private:
  std::vector<Finding> findings_;
};

void require_valid(const InventoryGraph& graph, const EmissionFactorTable& factors, const std::string& scenario) {
  auto findings = validate(graph, factors);
  if (findings.empty()) return;
  for (auto& f : findings) f.message = "[" + scenario + "] " + f.message;
  throw FindingsError(std::move(findings));
}

struct Options {
  std::string inventory;
  std::string factors;
  std::vector<std::string> processes;
  std::string scenario;
  std::vector<std::string> scenarios;
  std::string scenario_dir;
  std::size_t depth = 1;
  double value = 0.0;
  double specific_energy = kDefaultSpecificEnergy;
  std::string dataset;
  std::string group = "all";
  bool exclude_outliers = false;
  bool by_group = false;
  bool yearly = false;
  bool iqr_check = false;
  std::string regression;
  std::string models;
  double alpha = kDefaultSelectionAlpha;
  std::string format = "json";
  std::string output;
};

ScenarioConfig load_scenario(const std::string& token, const Options& opts) {
  fs::path path = token;
  if (path.extension() != ".json" && token.find('/') == std::string::npos) {
    fs::path dir = opts.scenario_dir.empty() ? fs::path(opts.inventory).parent_path() / "scenarios"
                                             : fs::path(opts.scenario_dir);
    path = dir / (token + ".json");
  }
  if (!fs::exists(path)) throw ValidationError("scenario '" + token + "' not found at " + path.string());
  return parse_scenario(read_file(path.string()));
}

std::vector<std::string> default_processes(const Options& opts) {
  return opts.processes.empty() ? std::vector<std::string>{"battery_pack"} : opts.processes;
}

Format format_of(const Options& opts) { return *report::parse_format(opts.format); }

std::string cmd_lca_compute(const Options& opts, std::ostream& err) {
  InventoryGraph graph = parse_inventory(read_file(opts.inventory));
  const EmissionFactorTable factors = parse_factors(read_file(opts.factors));
  ScoreOptions score_options;
  if (!opts.scenario.empty()) {
    const ScenarioConfig scenario = load_scenario(opts.scenario, opts);
    ScenarioApplication applied = apply_scenario(graph, scenario);
    for (const auto& w : applied.warnings) err << "warning: " << w << "\n";
    graph = std::move(applied.graph);
    score_options.scenario = scenario.name;
  }
  require_valid(graph, factors, score_options.scenario);
  const auto processes = default_processes(opts);
  const ScoreBreakdown breakdown = unit_score(graph, factors, processes.front(), score_options);
  for (const auto& w : breakdown.warnings) err << "warning: " << w << "\n";
  return report::emit_breakdown(breakdown, format_of(opts), opts.depth);
}

std::string cmd_lca_compare(const Options& opts, std::ostream& err) {
  const InventoryGraph graph = parse_inventory(read_file(opts.inventory));
  const EmissionFactorTable factors = parse_factors(read_file(opts.factors));
  std::vector<ScenarioConfig> scenarios;
  for (const auto& token : opts.scenarios) {
    scenarios.push_back(load_scenario(token, opts));
    const ScenarioApplication applied = apply_scenario(graph, scenarios.back());
    for (const auto& w : applied.warnings) err << "warning: " << w << "\n";
    require_valid(applied.graph, factors, scenarios.back().name);
  }
  report::Comparison comparison;
  comparison.process_ids = default_processes(opts);
  for (const auto& id : comparison.process_ids) {
    if (!graph.contains(id)) throw ValidationError("unknown process '" + id + "'");
    comparison.per_process.push_back(compare_scenarios(graph, factors, id, scenarios));
  }
  return report::emit_comparison(comparison, format_of(opts));
}

std::string cmd_lca_convert(const Options& opts) {
  const BasisConversion conversion(opts.specific_energy);
  return report::emit_conversion({opts.value, opts.specific_energy, convert_basis(opts.value, conversion)},
                                 format_of(opts));
}

std::string cmd_stats_describe(const Options& opts) {
  const auto records = ingest_dataset(read_file(opts.dataset));
  const Format format = format_of(opts);
  const std::optional<FunctionalUnit> group = opts.group == "all" ? std::nullopt : parse_functional_unit(opts.group);

  if (opts.yearly) return report::emit_yearly(yearly_averages(records, opts.exclude_outliers), format);

  if (opts.iqr_check) {
    std::vector<report::IqrRow> rows;
    for (const auto& flag : iqr_outliers(records, group)) {
      const auto& r = records[flag.index];
      rows.push_back({r.study_id, std::string(to_string(r.functional_unit)), flag.mass_basis, r.outlier});
    }
    return report::emit_iqr(rows, format);
  }

  std::vector<report::StatsRow> rows;
  const bool all_groups = opts.by_group || (format == Format::csv && !group);
  if (all_groups) {
    const std::vector<std::optional<FunctionalUnit>> groups{std::nullopt, FunctionalUnit::km, FunctionalUnit::kWh,
                                                            FunctionalUnit::kg};
    for (bool exclude : {false, true}) {
      if (!opts.by_group && exclude != opts.exclude_outliers) continue;
      for (const auto& g : groups) {
        rows.push_back({g ? std::string(to_string(*g)) : "all", exclude, describe(records, g, exclude)});
      }
    }
  } else {
    rows.push_back({opts.group, opts.exclude_outliers, describe(records, group, opts.exclude_outliers)});
  }
  return report::emit_stats(rows, format);
}

std::vector<ModelSpec> parse_models(const std::string& text) {
  if (text == "all") return ModelSpec::all();
  std::vector<ModelSpec> specs;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) specs.push_back(ModelSpec::from_name(token));
  return specs;
}

std::string cmd_regress_fit(const Options& opts) {
  const RegressionInput input = parse_regression_input(read_file(opts.regression));
  std::vector<FitResult> fits;
  for (const auto& spec : parse_models(opts.models.empty() ? "l_both" : opts.models)) fits.push_back(fit(spec, input));
  return report::emit_fits(fits, format_of(opts));
}

std::string cmd_regress_select(const Options& opts) {
  const RegressionInput input = parse_regression_input(read_file(opts.regression));
  const auto specs = parse_models(opts.models.empty() ? "all" : opts.models);
  return report::emit_selection(model_selection_report(input, opts.alpha, specs), format_of(opts));
}

std::string cmd_report(const Options& opts, std::ostream& err) {
  using nlohmann::json;
  json doc = json::object();
  std::string text;

  if (!opts.inventory.empty()) {
    const InventoryGraph graph = parse_inventory(read_file(opts.inventory));
    const EmissionFactorTable factors = parse_factors(read_file(opts.factors));
    std::vector<ScenarioConfig> scenarios;
    for (const auto& token : opts.scenarios) {
      scenarios.push_back(load_scenario(token, opts));
      const ScenarioApplication applied = apply_scenario(graph, scenarios.back());
      for (const auto& w : applied.warnings) err << "warning: " << w << "\n";
      require_valid(applied.graph, factors, scenarios.back().name);
    }
    const BasisConversion conversion(opts.specific_energy);
    const auto process = default_processes(opts).front();
    const auto breakdowns = compare_scenarios(graph, factors, process, scenarios);
    json lca = json::array();
    text += "GWP by scenario\n";
    text += fmt::format("{:<10} {:>12} {:>14}\n", "scenario", "per kg", "per kWh");
    for (const auto& b : breakdowns) {
      const double per_kwh = convert_basis(b.total, conversion);
      lca.push_back({{"scenario", b.scenario},
                     {"process_id", b.process_id},
                     {"total_per_kg", b.total},
                     {"total_per_kwh", per_kwh},
                     {"ranking", report::to_json(contribution_ranking(b, opts.depth))}});
      text += fmt::format("{:<10} {:>12} {:>14}\n", b.scenario, report::fixed4(b.total), report::fixed4(per_kwh));
    }
    doc["lca"] = std::move(lca);
    doc["specific_energy"] = opts.specific_energy;
    if (!breakdowns.empty()) {
      json edges = json::array();
      for (const auto& e : sankey_edges(breakdowns.front(), 0)) {
        edges.push_back({{"source", e.source}, {"target", e.target}, {"value", e.value}});
      }
      doc["sankey"] = std::move(edges);
    }
  }

  if (!opts.dataset.empty()) {
    const auto records = ingest_dataset(read_file(opts.dataset));
    json rows = json::array();
    text += "\nMeta-analysis statistics (kg CO2-eq per kg)\n";
    std::vector<report::StatsRow> stats_rows;
    for (bool exclude : {false, true}) {
      for (std::optional<FunctionalUnit> g : {std::optional<FunctionalUnit>{}, std::optional{FunctionalUnit::km},
                                              std::optional{FunctionalUnit::kWh}, std::optional{FunctionalUnit::kg}}) {
        try {
          stats_rows.push_back({g ? std::string(to_string(*g)) : "all", exclude, describe(records, g, exclude)});
        } catch (const ValidationError& e) {
          err << "warning: " << e.what() << "\n";
        }
      }
    }
    for (const auto& r : stats_rows) {
      json item = report::to_json(r.stats);
      item["group"] = r.group;
      item["outliers_excluded"] = r.outliers_excluded;
      rows.push_back(std::move(item));
    }
    doc["statistics"] = std::move(rows);
    text += report::emit_stats(stats_rows, Format::text);
    json yearly = json::array();
    for (const auto& y : yearly_averages(records, true)) {
      yearly.push_back({{"year", y.year}, {"mean_gwp", y.mean_gwp}, {"n", y.n}});
    }
    doc["yearly_averages"] = std::move(yearly);
  }

  if (!opts.regression.empty()) {
    const RegressionInput input = parse_regression_input(read_file(opts.regression));
    const SelectionReport selection = model_selection_report(input, opts.alpha);
    doc["model_selection"] = report::to_json(selection);
    text += "\nModel selection\n" + report::emit_selection(selection, Format::text);
    if (!selection.entries.empty() && selection.entries.front().fit) {
      doc["best_fit"] = report::to_json(*selection.entries.front().fit);
      text += "\nBest fit\n" + report::emit_fits({*selection.entries.front().fit}, Format::text);
    }
  }

  if (doc.empty()) throw ValidationError("report needs at least one of --inventory, --dataset, --regression");
  return format_of(opts) == Format::json ? report::dump(doc) : text;
}

void add_format(CLI::App* cmd, Options& opts, std::vector<std::string> allowed) {
  cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember(std::move(allowed)))
      ->capture_default_str();
  cmd->add_option("--output", opts.output, "Write the report to this file instead of standard output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Battery life-cycle GWP engine and meta-analysis regression toolkit", "lcameta"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto* compute = app.add_subcommand("lca-compute", "Score one process under an optional scenario");
  compute->add_option("--inventory", opts.inventory, "Inventory JSON")->required()->check(CLI::ExistingFile);
  compute->add_option("--factors", opts.factors, "Emission-factor CSV")->required()->check(CLI::ExistingFile);
  compute->add_option("--process", opts.processes, "Process id to score (default battery_pack)");
  compute->add_option("--scenario", opts.scenario, "Scenario name (resolved in --scenario-dir) or JSON path");
  compute->add_option("--scenario-dir", opts.scenario_dir, "Directory of <name>.json scenarios");
  compute->add_option("--depth", opts.depth, "Ranking / sankey depth")->capture_default_str();
  add_format(compute, opts, {"json", "csv", "text"});

  auto* compare = app.add_subcommand("lca-compare", "Score one or more processes under several scenarios");
  compare->add_option("--inventory", opts.inventory, "Inventory JSON")->required()->check(CLI::ExistingFile);
  compare->add_option("--factors", opts.factors, "Emission-factor CSV")->required()->check(CLI::ExistingFile);
  compare->add_option("--scenarios", opts.scenarios, "Comma-separated scenario names or paths")
      ->required()->delimiter(',');
  compare->add_option("--scenario-dir", opts.scenario_dir, "Directory of <name>.json scenarios");
  compare->add_option("--process", opts.processes, "Process id (repeatable; default battery_pack)");
  add_format(compare, opts, {"json", "csv", "text"});

  auto* convert = app.add_subcommand("lca-convert", "Convert kg CO2-eq per kg to per kWh");
  convert->add_option("--value", opts.value, "GWP in kg CO2-eq per kg")->required();
  convert->add_option("--specific-energy", opts.specific_energy, "kWh per kg")->capture_default_str();
  add_format(convert, opts, {"json", "csv", "text"});

  auto* describe_cmd = app.add_subcommand("stats-describe", "Descriptive statistics of the study dataset");
  describe_cmd->add_option("--dataset", opts.dataset, "Study dataset CSV")->required()->check(CLI::ExistingFile);
  describe_cmd->add_option("--group", opts.group, "Functional-unit filter")
      ->check(CLI::IsMember({"all", "km", "kWh", "kg"}))->capture_default_str();
  describe_cmd->add_flag("--exclude-outliers", opts.exclude_outliers, "Drop records flagged as outliers");
  describe_cmd->add_flag("--by-group", opts.by_group, "Every group, with and without outliers");
  describe_cmd->add_flag("--yearly", opts.yearly, "Yearly averages of mass-basis values instead");
  describe_cmd->add_flag("--iqr-check", opts.iqr_check, "List records above Q3 + 1.5 IQR instead");
  add_format(describe_cmd, opts, {"json", "csv", "text"});

  auto* fit_cmd = app.add_subcommand("regress-fit", "Fit regression models");
  fit_cmd->add_option("--input", opts.regression, "Regression CSV")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--models", opts.models, "all or comma list of l_qa,l_ech,l_both,p_qa,p_ech,p_both");
  add_format(fit_cmd, opts, {"json", "csv", "text"});

  auto* select = app.add_subcommand("regress-select", "Fit and rank all model forms");
  select->add_option("--input", opts.regression, "Regression CSV")->required()->check(CLI::ExistingFile);
  select->add_option("--models", opts.models, "all or comma list of model names");
  select->add_option("--alpha", opts.alpha, "Significance level for flagging")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  add_format(select, opts, {"json", "csv", "text"});

  auto* report_cmd = app.add_subcommand("report", "Combined LCA, statistics and regression report");
  report_cmd->add_option("--inventory", opts.inventory, "Inventory JSON")->check(CLI::ExistingFile);
  report_cmd->add_option("--factors", opts.factors, "Emission-factor CSV")->check(CLI::ExistingFile);
  report_cmd->add_option("--scenarios", opts.scenarios, "Comma-separated scenario names or paths")->delimiter(',');
  report_cmd->add_option("--scenario-dir", opts.scenario_dir, "Directory of <name>.json scenarios");
  report_cmd->add_option("--process", opts.processes, "Process id (default battery_pack)");
  report_cmd->add_option("--depth", opts.depth, "Ranking depth")->capture_default_str();
  report_cmd->add_option("--specific-energy", opts.specific_energy, "kWh per kg")->capture_default_str();
  report_cmd->add_option("--dataset", opts.dataset, "Study dataset CSV")->check(CLI::ExistingFile);
  report_cmd->add_option("--regression", opts.regression, "Regression CSV")->check(CLI::ExistingFile);
  report_cmd->add_option("--alpha", opts.alpha, "Significance level for flagging")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  add_format(report_cmd, opts, {"json", "text"});

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (args.size() <= 1) {
      err << app.help();
    } else {
      err << "error: " << e.what() << "\n";
      err << "run '" << app.get_name() << " --help' for usage\n";
    }
    return kUsageError;
  }
  if (compare->parsed() && opts.scenarios.empty()) {
    err << "error: --scenarios needs at least one scenario\n";
    return kUsageError;
  }
  if (report_cmd->parsed() && !opts.inventory.empty() && (opts.factors.empty() || opts.scenarios.empty())) {
    err << "error: report with --inventory also needs --factors and --scenarios\n";
    return kUsageError;
  }

  try {
    std::string bytes;
    if (compute->parsed()) {
      bytes = cmd_lca_compute(opts, err);
    } else if (compare->parsed()) {
      bytes = cmd_lca_compare(opts, err);
    } else if (convert->parsed()) {
      bytes = cmd_lca_convert(opts);
    } else if (describe_cmd->parsed()) {
      bytes = cmd_stats_describe(opts);
    } else if (fit_cmd->parsed()) {
      bytes = cmd_regress_fit(opts);
    } else if (select->parsed()) {
      bytes = cmd_regress_select(opts);
    } else {
      bytes = cmd_report(opts, err);
    }

    if (opts.output.empty()) {
      out << bytes;
    } else {
      std::ofstream file(opts.output, std::ios::binary | std::ios::trunc);
      if (!file || !(file << bytes) || !file.flush()) {
        err << "error: cannot write '" << opts.output << "'\n";
        return kValidationFailure;
      }
    }
    return kSuccess;
  } catch (const FindingsError& e) {
    nlohmann::json findings = nlohmann::json::array();
    for (const auto& f : e.findings()) {
      findings.push_back({{"severity", std::string(to_string(f.severity))}, {"code", f.code}, {"message", f.message}});
    }
    err << nlohmann::json{{"findings", std::move(findings)}}.dump(2) << "\n";
    return kValidationFailure;
  } catch (const DatasetError& e) {
    err << "error: dataset rejected\n";
    for (const auto& d : e.diagnostics()) err << "  " << d << "\n";
    return kValidationFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
}

}  // namespace lcameta::cli
