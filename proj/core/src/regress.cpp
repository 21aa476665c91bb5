#include "lcameta/regress.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <limits>

#include "lcameta/csv.hpp"
#include "lcameta/linalg.hpp"
#include "lcameta/special_functions.hpp"

namespace lcameta {

std::string_view to_string(Predictor predictor) { return predictor == Predictor::qa ? "qa" : "ech"; }

std::string ModelSpec::name() const {
  std::string out = transform == Transform::identity ? "l_" : "p_";
  if (predictors.size() == 2) return out + "both";
  if (predictors.size() == 1) return out + std::string(to_string(predictors.front()));
  return out + "none";
}

ModelSpec ModelSpec::from_name(std::string_view name) {
  for (auto& spec : all()) {
    if (spec.name() == name) return spec;
  }
  throw ValidationError("unknown model '" + std::string(name) +
                        "'; expected one of l_qa, l_ech, l_both, p_qa, p_ech, p_both");
}

std::vector<ModelSpec> ModelSpec::all() {
  std::vector<ModelSpec> specs;
  for (Transform t : {Transform::identity, Transform::log}) {
    specs.push_back({t, {Predictor::qa}});
    specs.push_back({t, {Predictor::ech}});
    specs.push_back({t, {Predictor::qa, Predictor::ech}});
  }
  return specs;
}

RegressionInput parse_regression_input(std::string_view document) {
  const auto records = csv::parse(document);
  const csv::Row header{"year", "qa_gwh", "ech_gco2_per_kwh", "gwp_kg_per_kg"};
  if (records.empty() || records.front().fields != header) {
    throw ParseError("regression input header must be exactly year,qa_gwh,ech_gco2_per_kwh,gwp_kg_per_kg",
                     records.empty() ? 1 : records.front().line);
  }

  std::vector<std::string> problems;
  RegressionInput input;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& [line, fields] = records[r];
    const std::string where = "line " + std::to_string(line);
    if (fields.size() != header.size()) {
      problems.push_back(where + ": expected 4 columns, found " + std::to_string(fields.size()));
      continue;
    }
    RegressionRow row;
    bool ok = true;
    auto read = [&](const std::string& text, auto& target, const char* column) {
      auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), target);
      if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        problems.push_back(where + ": " + column + " '" + text + "' is not numeric");
        ok = false;
      }
    };
    read(fields[0], row.year, "year");
    read(fields[1], row.qa, "qa_gwh");
    read(fields[2], row.ech, "ech_gco2_per_kwh");
    read(fields[3], row.response, "gwp_kg_per_kg");
    if (ok && !(std::isfinite(row.qa) && std::isfinite(row.ech) && std::isfinite(row.response))) {
      problems.push_back(where + ": non-finite value");
      ok = false;
    }
    if (ok) input.rows.push_back(row);
  }
  if (!problems.empty()) throw DatasetError(std::move(problems));
  return input;
}

double t_p_value(double t, int df) {
  if (df < 1) throw ValidationError("t distribution needs df >= 1, got " + std::to_string(df));
  return special::student_t_two_sided(t, df);
}

double f_p_value(double f, int df1, int df2) {
  if (df1 < 1 || df2 < 1) {
    throw ValidationError("F distribution needs positive degrees of freedom, got (" + std::to_string(df1) + ", " +
                          std::to_string(df2) + ")");
  }
  if (!(f >= 0.0)) throw ValidationError("F statistic must be non-negative");
  return special::f_upper_tail(f, df1, df2);
}

double durbin_watson(std::span<const double> residuals) {
  if (residuals.size() < 2) throw NumericError("Durbin-Watson needs at least 2 residuals");
  double num = 0.0;
  double den = residuals[0] * residuals[0];
  for (std::size_t t = 1; t < residuals.size(); ++t) {
    const double d = residuals[t] - residuals[t - 1];
    num += d * d;
    den += residuals[t] * residuals[t];
  }
  if (den == 0.0) throw NumericError("Durbin-Watson undefined for all-zero residuals");
  return num / den;
}

Moments moments(std::span<const double> residuals) {
  const std::size_t n = residuals.size();
  if (n < 3) throw NumericError("skewness and kurtosis need at least 3 values");
  double mean = 0.0;
  for (double e : residuals) mean += e;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double e : residuals) {
    const double d = e - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  if (!(m2 > 0.0)) throw NumericError("skewness and kurtosis undefined for zero variance");
  return {m3 / std::pow(m2, 1.5), m4 / (m2 * m2)};
}

JarqueBera jarque_bera(double skewness, double kurtosis, std::size_t n) {
  if (n < 3) throw NumericError("Jarque-Bera needs n >= 3");
  const double excess = kurtosis - 3.0;
  const double jb = static_cast<double>(n) / 6.0 * (skewness * skewness + excess * excess / 4.0);
  return {jb, special::chi_square_upper_tail(jb, 2.0)};
}

ResidualDiagnostics diagnose(std::span<const double> residuals) {
  ResidualDiagnostics d;
  d.durbin_watson = durbin_watson(residuals);
  const Moments m = moments(residuals);
  d.skewness = m.skewness;
  d.kurtosis = m.kurtosis;
  const JarqueBera jb = jarque_bera(m.skewness, m.kurtosis, residuals.size());
  d.jb_stat = jb.statistic;
  d.jb_p = jb.p_value;
  return d;
}

FitResult fit(const ModelSpec& spec, const RegressionInput& data) {
  const std::size_t k = spec.predictors.size();
  const std::size_t n = data.rows.size();
  if (k == 0) throw ValidationError("model needs at least one predictor");
  if (n < k + 2) {
    throw ValidationError("model " + spec.name() + " needs at least " + std::to_string(k + 2) +
                          " observations, got " + std::to_string(n));
  }

  const bool log_model = spec.transform == Transform::log;
  auto transform = [&](double value, std::string_view column, int year) {
    if (!log_model) return value;
    if (!(value > 0.0)) {
      throw ValidationError("model " + spec.name() + ": " + std::string(column) + " for year " +
                            std::to_string(year) + " must be positive under the log transform");
    }
    return std::log(value);
  };

  std::vector<std::string> names{"intercept"};
  for (Predictor p : spec.predictors) names.push_back((log_model ? "log_" : "") + std::string(to_string(p)));

  linalg::Matrix design(n, k + 1);
  std::vector<double> response(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RegressionRow& row = data.rows[i];
    design(i, 0) = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      const bool qa = spec.predictors[j] == Predictor::qa;
      design(i, j + 1) = transform(qa ? row.qa : row.ech, qa ? "qa_gwh" : "ech_gco2_per_kwh", row.year);
    }
    response[i] = transform(row.response, "gwp_kg_per_kg", row.year);
  }

  const linalg::LeastSquaresSolution ls = linalg::least_squares_qr(design, response, names);

  FitResult result;
  result.spec = spec;
  result.df_resid = static_cast<int>(n - k - 1);
  result.residuals = ls.residuals;
  result.fitted = ls.fitted;

  double mean = 0.0;
  for (double y : response) mean += y;
  mean /= static_cast<double>(n);
  double sst = 0.0, ssr = 0.0, max_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sst += (response[i] - mean) * (response[i] - mean);
    ssr += ls.residuals[i] * ls.residuals[i];
    max_abs = std::max(max_abs, std::abs(response[i]));
  }
  if (sst == 0.0) throw NumericError("response is constant; R^2 is undefined");

  // Residuals at rounding level are an exact fit.
  const bool exact = std::sqrt(ssr / static_cast<double>(n)) <= 1e-12 * std::max(1.0, max_abs);
  if (exact) {
    ssr = 0.0;
    std::fill(result.residuals.begin(), result.residuals.end(), 0.0);
  }

  const double df = result.df_resid;
  result.r_squared = 1.0 - ssr / sst;
  result.adj_r_squared = 1.0 - (1.0 - result.r_squared) * static_cast<double>(n - 1) / df;
  const double s2 = ssr / df;

  for (std::size_t j = 0; j <= k; ++j) {
    Coefficient c;
    c.name = names[j];
    c.value = ls.coefficients[j];
    c.std_error = std::sqrt(s2 * ls.gram_inverse(j, j));
    if (c.std_error > 0.0) {
      c.t_stat = c.value / c.std_error;
      c.p_value = t_p_value(c.t_stat, result.df_resid);
    } else {
      c.t_stat = c.value == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), c.value);
      c.p_value = c.value == 0.0 ? 1.0 : 0.0;
    }
    result.coefficients.push_back(std::move(c));
  }

  if (exact) {
    result.f_stat = std::numeric_limits<double>::infinity();
    result.f_p_value = 0.0;
  } else {
    result.f_stat = (result.r_squared / static_cast<double>(k)) / ((1.0 - result.r_squared) / df);
    result.f_p_value = f_p_value(result.f_stat, static_cast<int>(k), result.df_resid);
    result.diagnostics = diagnose(result.residuals);
  }
  return result;
}

SelectionReport model_selection_report(const RegressionInput& data, double alpha,
                                       std::span<const ModelSpec> specs) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  const std::vector<ModelSpec> defaults = specs.empty() ? ModelSpec::all() : std::vector<ModelSpec>{};
  if (specs.empty()) specs = defaults;

  std::vector<std::future<SelectionEntry>> pending;
  for (const ModelSpec& spec : specs) {
    pending.push_back(std::async(std::launch::async, [&data, spec, alpha] {
      SelectionEntry entry{spec, std::nullopt, {}, false};
      try {
        entry.fit = fit(spec, data);
        entry.flagged = std::all_of(entry.fit->coefficients.begin(), entry.fit->coefficients.end(),
                                    [alpha](const Coefficient& c) { return c.p_value < alpha; });
      } catch (const Error& e) {
        entry.note = std::string("skipped: ") + e.what();
      }
      return entry;
    }));
  }

  SelectionReport report;
  report.alpha = alpha;
  for (auto& f : pending) report.entries.push_back(f.get());
  std::stable_sort(report.entries.begin(), report.entries.end(), [](const SelectionEntry& a, const SelectionEntry& b) {
    if (a.fit.has_value() != b.fit.has_value()) return a.fit.has_value();
    if (!a.fit) return false;
    return a.fit->f_p_value < b.fit->f_p_value;
  });
  return report;
}

}  // namespace lcameta
