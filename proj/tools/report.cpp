#include "report.hpp"

#include <cmath>

#include <fmt/format.h>

#include "lcameta/csv.hpp"

namespace lcameta::report {

using nlohmann::json;

std::optional<Format> parse_format(std::string_view text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  if (text == "text") return Format::text;
  return std::nullopt;
}

std::string fixed4(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  // Avoid "-0.0000" for tiny negatives.
  const std::string text = fmt::format("{:.4f}", value);
  return text == "-0.0000" ? "0.0000" : text;
}

std::string dump(const json& document) { return document.dump(2) + "\n"; }

json to_json(const ScoreBreakdown& breakdown) {
  json contributions = json::array();
  for (const auto& c : breakdown.contributions) {
    json item{{"input", c.exchange.input_name},
              {"origin", c.exchange.origin},
              {"amount", c.exchange.amount},
              {"unit", c.exchange.unit},
              {"kind", std::string(to_string(c.exchange.kind))},
              {"score", c.score},
              {"share", c.share}};
    if (c.child) item["child"] = to_json(*c.child);
    contributions.push_back(std::move(item));
  }
  return json{{"process_id", breakdown.process_id},
              {"scenario", breakdown.scenario},
              {"total", breakdown.total},
              {"has_negative", breakdown.has_negative},
              {"contributions", std::move(contributions)}};
}

json to_json(const std::vector<RankedContribution>& ranking) {
  json out = json::array();
  for (const auto& r : ranking) out.push_back({{"path", r.path}, {"score", r.score}, {"share", r.share}});
  return out;
}

json to_json(const DescriptiveStats& s) {
  return json{{"n", s.n},           {"mean", s.mean},         {"median", s.median},
              {"std_dev", s.std_dev}, {"variance", s.variance}, {"range", s.range}};
}

json to_json(const ResidualDiagnostics& d) {
  return json{{"durbin_watson", d.durbin_watson},
              {"skewness", d.skewness},
              {"kurtosis", d.kurtosis},
              {"jb_stat", d.jb_stat},
              {"jb_p", d.jb_p}};
}

json to_json(const FitResult& fit) {
  json coefficients = json::array();
  for (const auto& c : fit.coefficients) {
    coefficients.push_back({{"name", c.name},
                            {"value", c.value},
                            {"std_error", c.std_error},
                            {"t_stat", c.t_stat},
                            {"p_value", c.p_value}});
  }
  json out{{"model", fit.spec.name()},
           {"coefficients", std::move(coefficients)},
           {"r_squared", fit.r_squared},
           {"adj_r_squared", fit.adj_r_squared},
           {"f_stat", fit.f_stat},
           {"f_p_value", fit.f_p_value},
           {"residuals", fit.residuals},
           {"df_resid", fit.df_resid}};
  out["diagnostics"] = fit.diagnostics ? to_json(*fit.diagnostics) : json(nullptr);
  return out;
}

json to_json(const SelectionReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json item{{"model", e.spec.name()}, {"flagged", e.flagged}};
    if (e.fit) {
      json p_values = json::object();
      for (const auto& c : e.fit->coefficients) p_values[c.name] = c.p_value;
      item["r_squared"] = e.fit->r_squared;
      item["f_p_value"] = e.fit->f_p_value;
      item["coefficient_p_values"] = std::move(p_values);
    }
    if (!e.note.empty()) item["note"] = e.note;
    entries.push_back(std::move(item));
  }
  return json{{"alpha", report.alpha}, {"entries", std::move(entries)}};
}

// ---------------------------------------------------------------------------

std::string emit_breakdown(const ScoreBreakdown& breakdown, Format format, std::size_t depth) {
  switch (format) {
    case Format::json: {
      json doc{{"process_id", breakdown.process_id},
               {"scenario", breakdown.scenario},
               {"total", breakdown.total},
               {"warnings", breakdown.warnings},
               {"ranking", to_json(contribution_ranking(breakdown, depth))},
               {"tree", to_json(breakdown)}};
      return dump(doc);
    }
    case Format::csv: {
      std::string out = csv::format_row({"source", "target", "value"});
      for (const auto& e : sankey_edges(breakdown, depth)) out += csv::format_row({e.source, e.target, fixed4(e.value)});
      return out;
    }
    case Format::text: {
      std::string out = fmt::format("process  {}\nscenario {}\ntotal    {} kg CO2-eq\n\n", breakdown.process_id,
                                    breakdown.scenario, fixed4(breakdown.total));
      out += fmt::format("{:>12}  {:>8}  {}\n", "score", "share", "path");
      for (const auto& r : contribution_ranking(breakdown, depth)) {
        out += fmt::format("{:>12}  {:>8}  {}\n", fixed4(r.score), fixed4(r.share), join_path(r.path));
      }
      return out;
    }
  }
  return {};
}

std::string emit_comparison(const Comparison& comparison, Format format) {
  switch (format) {
    case Format::json: {
      json results = json::array();
      json trees = json::array();
      for (std::size_t p = 0; p < comparison.process_ids.size(); ++p) {
        for (const auto& b : comparison.per_process[p]) {
          results.push_back({{"scenario", b.scenario}, {"process_id", b.process_id}, {"total", b.total},
                             {"warnings", b.warnings}});
          trees.push_back(to_json(b));
        }
      }
      json diffs = json::array();
      if (!comparison.per_process.empty()) {
        const auto& row = comparison.per_process.front();
        for (std::size_t s = 1; s < row.size(); ++s) {
          json differences = json::array();
          for (const auto& d : diff_breakdowns(row[s - 1], row[s])) {
            differences.push_back({{"path", d.path}, {"score_a", d.score_a}, {"score_b", d.score_b}});
          }
          diffs.push_back({{"from", row[s - 1].scenario}, {"to", row[s].scenario},
                           {"differences", std::move(differences)}});
        }
      }
      return dump(json{{"results", std::move(results)}, {"diffs", std::move(diffs)}, {"breakdowns", std::move(trees)}});
    }
    case Format::csv: {
      std::string out = csv::format_row({"scenario", "process_id", "total"});
      for (std::size_t p = 0; p < comparison.process_ids.size(); ++p) {
        for (const auto& b : comparison.per_process[p]) out += csv::format_row({b.scenario, b.process_id, fixed4(b.total)});
      }
      return out;
    }
    case Format::text: {
      std::string out = fmt::format("{:<10}  {:>12}  {}\n", "scenario", "total", "process");
      for (std::size_t p = 0; p < comparison.process_ids.size(); ++p) {
        for (const auto& b : comparison.per_process[p]) {
          out += fmt::format("{:<10}  {:>12}  {}\n", b.scenario, fixed4(b.total), b.process_id);
        }
      }
      return out;
    }
  }
  return {};
}

std::string emit_conversion(const Conversion& c, Format format) {
  switch (format) {
    case Format::json:
      return dump(json{{"value_per_kg", c.value_per_kg},
                       {"specific_energy", c.specific_energy},
                       {"value_per_kwh", c.value_per_kwh}});
    case Format::csv:
      return csv::format_row({"value_per_kg", "specific_energy", "value_per_kwh"}) +
             csv::format_row({fixed4(c.value_per_kg), fixed4(c.specific_energy), fixed4(c.value_per_kwh)});
    case Format::text:
      return fmt::format("{} kg CO2-eq/kg / {} kWh/kg = {} kg CO2-eq/kWh\n", fixed4(c.value_per_kg),
                         fixed4(c.specific_energy), fixed4(c.value_per_kwh));
  }
  return {};
}

std::string emit_stats(const std::vector<StatsRow>& rows, Format format) {
  switch (format) {
    case Format::json: {
      if (rows.size() == 1) return dump(to_json(rows.front().stats));
      json out = json::array();
      for (const auto& r : rows) {
        json item = to_json(r.stats);
        item["group"] = r.group;
        item["outliers_excluded"] = r.outliers_excluded;
        out.push_back(std::move(item));
      }
      return dump(out);
    }
    case Format::csv: {
      std::string out =
          csv::format_row({"group", "outliers_excluded", "n", "mean", "median", "std_dev", "variance", "range"});
      for (const auto& r : rows) {
        const auto& s = r.stats;
        out += csv::format_row({r.group, r.outliers_excluded ? "true" : "false", std::to_string(s.n), fixed4(s.mean),
                                fixed4(s.median), fixed4(s.std_dev), fixed4(s.variance), fixed4(s.range)});
      }
      return out;
    }
    case Format::text: {
      std::string out = fmt::format("{:<6} {:<9} {:>4} {:>10} {:>10} {:>10} {:>10} {:>10}\n", "group", "outliers",
                                    "n", "mean", "median", "std_dev", "variance", "range");
      for (const auto& r : rows) {
        const auto& s = r.stats;
        out += fmt::format("{:<6} {:<9} {:>4} {:>10} {:>10} {:>10} {:>10} {:>10}\n", r.group,
                           r.outliers_excluded ? "excluded" : "included", s.n, fixed4(s.mean), fixed4(s.median),
                           fixed4(s.std_dev), fixed4(s.variance), fixed4(s.range));
      }
      return out;
    }
  }
  return {};
}

std::string emit_yearly(const std::vector<YearlyAverage>& averages, Format format) {
  switch (format) {
    case Format::json: {
      json out = json::array();
      for (const auto& a : averages) out.push_back({{"year", a.year}, {"mean_gwp", a.mean_gwp}, {"n", a.n}});
      return dump(out);
    }
    case Format::csv: {
      std::string out = csv::format_row({"year", "mean_gwp", "n"});
      for (const auto& a : averages) out += csv::format_row({std::to_string(a.year), fixed4(a.mean_gwp), std::to_string(a.n)});
      return out;
    }
    case Format::text: {
      std::string out = fmt::format("{:<6} {:>10} {:>4}\n", "year", "mean_gwp", "n");
      for (const auto& a : averages) out += fmt::format("{:<6} {:>10} {:>4}\n", a.year, fixed4(a.mean_gwp), a.n);
      return out;
    }
  }
  return {};
}

std::string emit_iqr(const std::vector<IqrRow>& rows, Format format) {
  switch (format) {
    case Format::json: {
      json out = json::array();
      for (const auto& r : rows) {
        out.push_back({{"study_id", r.study_id},
                       {"functional_unit", r.functional_unit},
                       {"mass_basis", r.mass_basis},
                       {"flagged_outlier", r.flagged_outlier}});
      }
      return dump(out);
    }
    case Format::csv: {
      std::string out = csv::format_row({"study_id", "functional_unit", "mass_basis", "flagged_outlier"});
      for (const auto& r : rows) {
        out += csv::format_row({r.study_id, r.functional_unit, fixed4(r.mass_basis), r.flagged_outlier ? "true" : "false"});
      }
      return out;
    }
    case Format::text: {
      std::string out = fmt::format("{:<24} {:<5} {:>10} {}\n", "study_id", "unit", "mass_basis", "flagged");
      for (const auto& r : rows) {
        out += fmt::format("{:<24} {:<5} {:>10} {}\n", r.study_id, r.functional_unit, fixed4(r.mass_basis),
                           r.flagged_outlier ? "yes" : "no");
      }
      return out;
    }
  }
  return {};
}

std::string emit_fits(const std::vector<FitResult>& fits, Format format) {
  switch (format) {
    case Format::json: {
      if (fits.size() == 1) return dump(to_json(fits.front()));
      json out = json::array();
      for (const auto& f : fits) out.push_back(to_json(f));
      return dump(out);
    }
    case Format::csv: {
      std::string out = csv::format_row({"model", "coefficient", "value", "std_error", "t_stat", "p_value", "r_squared",
                                         "f_stat", "f_p_value", "df_resid"});
      for (const auto& f : fits) {
        for (const auto& c : f.coefficients) {
          out += csv::format_row({f.spec.name(), c.name, fmt::format("{:.6g}", c.value),
                                  fmt::format("{:.6g}", c.std_error), fixed4(c.t_stat), fmt::format("{:.6f}", c.p_value),
                                  fixed4(f.r_squared), fixed4(f.f_stat), fixed4(f.f_p_value),
                                  std::to_string(f.df_resid)});
        }
      }
      return out;
    }
    case Format::text: {
      std::string out;
      for (const auto& f : fits) {
        out += fmt::format("model {}  R^2 {}  adj R^2 {}  F {}  p(F) {}  df_resid {}\n", f.spec.name(),
                           fixed4(f.r_squared), fixed4(f.adj_r_squared), fixed4(f.f_stat), fixed4(f.f_p_value),
                           f.df_resid);
        out += fmt::format("  {:<12} {:>14} {:>14} {:>10} {:>10}\n", "coefficient", "value", "std_error", "t_stat",
                           "p_value");
        for (const auto& c : f.coefficients) {
          out += fmt::format("  {:<12} {:>14.6g} {:>14.6g} {:>10} {:>10.6f}\n", c.name, c.value, c.std_error,
                             fixed4(c.t_stat), c.p_value);
        }
        if (f.diagnostics) {
          const auto& d = *f.diagnostics;
          out += fmt::format("  Durbin-Watson {}  skewness {}  kurtosis {}  JB {}  p(JB) {}\n",
                             fixed4(d.durbin_watson), fixed4(d.skewness), fixed4(d.kurtosis), fixed4(d.jb_stat),
                             fixed4(d.jb_p));
        }
      }
      return out;
    }
  }
  return {};
}

std::string emit_selection(const SelectionReport& report, Format format) {
  switch (format) {
    case Format::json: return dump(to_json(report));
    case Format::csv: {
      std::string out = csv::format_row({"rank", "model", "r_squared", "f_p_value", "max_coefficient_p", "flagged", "note"});
      std::size_t rank = 0;
      for (const auto& e : report.entries) {
        ++rank;
        std::string r2, fp, maxp;
        if (e.fit) {
          double worst = 0.0;
          for (const auto& c : e.fit->coefficients) worst = std::max(worst, c.p_value);
          r2 = fixed4(e.fit->r_squared);
          fp = fixed4(e.fit->f_p_value);
          maxp = fixed4(worst);
        }
        out += csv::format_row({std::to_string(rank), e.spec.name(), r2, fp, maxp, e.flagged ? "true" : "false", e.note});
      }
      return out;
    }
    case Format::text: {
      std::string out = fmt::format("alpha {}\n{:<4} {:<7} {:>8} {:>9} {:>9} {}\n", fixed4(report.alpha), "rank",
                                    "model", "R^2", "p(F)", "max p", "flagged");
      std::size_t rank = 0;
      for (const auto& e : report.entries) {
        ++rank;
        if (!e.fit) {
          out += fmt::format("{:<4} {:<7} {}\n", rank, e.spec.name(), e.note);
          continue;
        }
        double worst = 0.0;
        for (const auto& c : e.fit->coefficients) worst = std::max(worst, c.p_value);
        out += fmt::format("{:<4} {:<7} {:>8} {:>9} {:>9} {}\n", rank, e.spec.name(), fixed4(e.fit->r_squared),
                           fixed4(e.fit->f_p_value), fixed4(worst), e.flagged ? "yes" : "no");
      }
      return out;
    }
  }
  return {};
}

}  // namespace lcameta::report
