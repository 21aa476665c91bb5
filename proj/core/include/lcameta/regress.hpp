#pragma once

// Least-squares fits of specific emissions against annual production (Qa, GWh)
// and grid carbon intensity (Ech, g CO2/kWh), with inferential statistics and
// residual diagnostics.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcameta/error.hpp"

namespace lcameta {

enum class Transform { identity, log };
enum class Predictor { qa, ech };

std::string_view to_string(Predictor predictor);

/// Linear (identity/identity) or power-law (natural log/log) model over a
/// nonempty subset of {Qa, Ech}, always with an intercept.
struct ModelSpec {
  Transform transform = Transform::identity;
  std::vector<Predictor> predictors;

  /// l_qa, l_ech, l_both, p_qa, p_ech, p_both.
  std::string name() const;
  /// Inverse of name(); throws ValidationError on an unknown name.
  static ModelSpec from_name(std::string_view name);
  /// The six specs in canonical order.
  static std::vector<ModelSpec> all();

  bool operator==(const ModelSpec&) const = default;
};

struct RegressionRow {
  int year = 0;
  double qa = 0.0;        // GWh
  double ech = 0.0;       // g CO2 / kWh
  double response = 0.0;  // kg CO2-eq / kg
};

struct RegressionInput {
  std::vector<RegressionRow> rows;
};

/// CSV with header `year,qa_gwh,ech_gco2_per_kwh,gwp_kg_per_kg`.
RegressionInput parse_regression_input(std::string_view document);

struct Coefficient {
  std::string name;  // intercept, qa, ech (log_qa, log_ech for power models)
  double value = 0.0;
  double std_error = 0.0;
  double t_stat = 0.0;
  double p_value = 0.0;
};

struct ResidualDiagnostics {
  double durbin_watson = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;  // Pearson (non-excess)
  double jb_stat = 0.0;
  double jb_p = 0.0;
};

struct FitResult {
  ModelSpec spec;
  std::vector<Coefficient> coefficients;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double f_stat = 0.0;
  double f_p_value = 0.0;
  std::vector<double> residuals;  // in the fitted (possibly log) space
  std::vector<double> fitted;
  int df_resid = 0;
  /// Absent when the residuals are (numerically) all zero.
  std::optional<ResidualDiagnostics> diagnostics;
};

/// OLS via Householder QR. Standard errors from s^2 (X^T X)^{-1}, s^2 =
/// SSR / df_resid; two-sided t p-values; F = (R^2/k) / ((1 - R^2)/df_resid).
/// Throws ValidationError for n < k + 2 or a nonpositive value under the log
/// transform and linalg::RankDeficiencyError naming the collinear column.
FitResult fit(const ModelSpec& spec, const RegressionInput& data);

/// Two-sided p-value of Student's t; throws ValidationError for df < 1.
double t_p_value(double t, int df);

/// Upper-tail p-value of F(df1, df2); throws ValidationError for invalid input.
double f_p_value(double f, int df1, int df2);

/// sum_{t>=2} (e_t - e_{t-1})^2 / sum e_t^2. Needs n >= 2, nonzero residuals.
double durbin_watson(std::span<const double> residuals);

struct Moments {
  double skewness = 0.0;
  double kurtosis = 0.0;
};

/// g1 = m3 / m2^{3/2}, g2 = m4 / m2^2 with biased central moments. Needs n >= 3
/// and nonzero variance.
Moments moments(std::span<const double> residuals);

struct JarqueBera {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// JB = n/6 (g1^2 + (g2 - 3)^2 / 4), p = exp(-JB/2).
JarqueBera jarque_bera(double skewness, double kurtosis, std::size_t n);

/// All four diagnostics for one residual vector.
ResidualDiagnostics diagnose(std::span<const double> residuals);

struct SelectionEntry {
  ModelSpec spec;
  std::optional<FitResult> fit;  // empty when the spec was skipped
  std::string note;
  bool flagged = false;  // every coefficient p-value < alpha
};

struct SelectionReport {
  double alpha = 0.16;
  std::vector<SelectionEntry> entries;  // fitted specs by ascending F p-value, then skipped ones
};

inline constexpr double kDefaultSelectionAlpha = 0.16;

/// Fits every spec (concurrently) and ranks them.
SelectionReport model_selection_report(const RegressionInput& data, double alpha = kDefaultSelectionAlpha,
                                       std::span<const ModelSpec> specs = {});

}  // namespace lcameta
