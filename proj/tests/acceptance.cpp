// Acceptance runner: one PASS/FAIL line per criterion, with indented detail.
// Criterion 8 depends on calibrated synthetic data and is reported without
// affecting the exit status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "cli.hpp"
#include "lcameta/csv.hpp"
#include "lcameta/lca_engine.hpp"
#include "lcameta/metastats.hpp"
#include "lcameta/regress.hpp"
#include "support/engine_properties.hpp"
#include "support/files.hpp"
#include "support/ols_check.hpp"
#include "support/special_grid.hpp"
#include "support/stats_properties.hpp"

using namespace lcameta;
using testing_support::data_path;
using testing_support::read_data;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  std::string id;
  std::string title;
  bool gating = true;
  bool pass = true;
  std::vector<std::string> details;

  void expect(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok    " : "MISS  ") + what);
  }
  void note(const std::string& what) { details.push_back("info  " + what); }
};

std::string near(double got, double want, double tol) {
  return fmt::format("got {:.6f}, expected {} (tol {})", got, want, tol);
}

const std::string kCellId = "market for battery cell production, Li-ion, NMC811";

Criterion appendix_reproduction() {
  Criterion c{"1", "appendix totals via lca-compare"};
  const auto start = Clock::now();
  std::vector<std::string> args{"lcameta", "lca-compare", "--inventory", data_path("nmc811_battery.json"),
                                "--factors", data_path("factors_appendix.csv"), "--scenarios", "cn,sk,se",
                                "--process", "battery_pack", "--process", kCellId, "--format", "json"};
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  const double elapsed = seconds_since(start);
  c.expect(code == 0, fmt::format("exit status {}", code));
  if (code != 0) return c;

  std::map<std::pair<std::string, std::string>, double> totals;
  const auto doc = nlohmann::json::parse(out.str());
  for (const auto& row : doc.at("results"))
    totals[{row.at("scenario").get<std::string>(), row.at("process_id").get<std::string>()}] = row.at("total").get<double>();
  const char* names[] = {"CN", "SK", "SE"};
  const double battery[] = {17.3293, 16.8552, 16.4704};
  const double cell[] = {16.8064, 16.1422, 15.6031};
  for (std::size_t i = 0; i < 3; ++i) {
    const double b = totals.at({names[i], "battery_pack"});
    const double l = totals.at({names[i], kCellId});
    c.expect(std::fabs(b - battery[i]) <= 5e-4, std::string(names[i]) + " battery " + near(b, battery[i], 5e-4));
    c.expect(std::fabs(l - cell[i]) <= 5e-4, std::string(names[i]) + " cell " + near(l, cell[i], 5e-4));
  }
  c.expect(elapsed < 1.0, fmt::format("runtime {:.3f} s < 1 s", elapsed));
  return c;
}

Criterion nesting_consistency() {
  Criterion c{"2", "battery cell contribution equals 0.71359 x cell total"};
  const auto graph = parse_inventory(read_data("nmc811_battery.json"));
  const auto factors = parse_factors(read_data("factors_appendix.csv"));
  const char* names[] = {"cn", "sk", "se"};
  const double printed[] = {11.99286, 11.51889, 11.13418};
  for (int i = 0; i < 3; ++i) {
    const auto sc = parse_scenario(read_data(std::string("scenarios/") + names[i] + ".json"));
    const auto g = apply_scenario(graph, sc).graph;
    const auto battery = unit_score(g, factors, "battery_pack", {sc.name});
    const double cell_total = unit_score(g, factors, kCellId, {sc.name}).total;
    const auto& first = battery.contributions.front();
    c.expect(first.exchange.input_name == kCellId && std::fabs(first.score - 0.71359 * cell_total) <= 5e-5,
             sc.name + " contribution " + near(first.score, 0.71359 * cell_total, 5e-5));
    c.note(sc.name + fmt::format(" printed appendix value {} differs by {:.2e}", printed[i],
                                 std::fabs(first.score - printed[i])));
  }
  return c;
}

Criterion basis_conversion() {
  Criterion c{"3", "mass to energy basis at 0.209 kWh/kg"};
  const double in[] = {17.33, 16.85, 16.47};
  const double want[] = {82.92, 80.62, 78.80};
  const BasisConversion k(0.209);
  for (int i = 0; i < 3; ++i) {
    const double got = convert_basis(in[i], k);
    c.expect(std::fabs(got - want[i]) <= 0.01, fmt::format("{} -> ", in[i]) + near(got, want[i], 0.01));
  }
  return c;
}

Criterion published_diagnostics() {
  Criterion c{"4", "p-values from the published statistics"};
  const struct {
    double t, p;
  } rows[] = {{-2.0803, 0.10599}, {-3.4246, 0.072404}, {2.3391, 0.079458}};
  for (const auto& r : rows) {
    const double got = t_p_value(r.t, 4);
    c.expect(std::fabs(got - r.p) <= 5e-4, fmt::format("t_p_value({}, 4) ", r.t) + near(got, r.p, 5e-4));
  }
  c.note(fmt::format("coefficient / sigma for the production term is {:.4f}; t_p_value of that is {:.6f}",
                     -1.2162 / 0.50161, t_p_value(-1.2162 / 0.50161, 4)));
  const double f = (0.6034 / 2) / (0.3966 / 4);
  const double fp = f_p_value(f, 2, 4);
  c.expect(std::fabs(fp - 0.1573) <= 2e-3, fmt::format("f_p_value({:.5f}, 2, 4) ", f) + near(fp, 0.1573, 2e-3));
  const double jb = jarque_bera(-0.5303, 2.5922, 7).statistic;
  c.expect(std::fabs(jb - 0.3766) <= 1e-3, "jarque_bera(-0.5303, 2.5922, 7) statistic " + near(jb, 0.3766, 1e-3));
  return c;
}

Criterion ols_oracle() {
  Criterion c{"5", "OLS against the normal-equations oracle"};
  std::mt19937_64 rng(5150);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) worst = std::max(worst, testing_support::ols_instance_error(rng));
  c.expect(worst <= 1e-8, fmt::format("100 instances, worst relative error {:.3e} <= 1e-8", worst));
  double r2 = 0.0;
  const double resid = testing_support::exact_fit_residual(rng, r2);
  c.expect(std::fabs(r2 - 1.0) <= 1e-10 && resid <= 1e-10,
           fmt::format("exact fit R^2 = {:.12f}, max |residual| = {:.3e}", r2, resid));
  return c;
}

Criterion special_functions() {
  Criterion c{"6", "t, F and chi-square tails against quadrature"};
  const auto t = testing_support::sweep_t();
  const auto f = testing_support::sweep_f();
  const auto chi = testing_support::sweep_chi_square();
  for (const auto& [name, e] : {std::pair{"t", t}, std::pair{"F", f}, std::pair{"chi-square", chi}}) {
    c.expect(e.worst <= 1e-6,
             fmt::format("{}: {} points, worst |error| {:.3e} at {}", name, e.points, e.worst, e.where));
  }
  return c;
}

Criterion stats_properties() {
  Criterion c{"7", "descriptive statistics property suite"};
  std::mt19937_64 rng(777);
  int failures = 0;
  std::string first;
  for (int i = 0; i < 1000; ++i) {
    auto e = testing_support::check_stats_properties(rng);
    if (!e.empty() && failures++ == 0) first = e;
  }
  c.expect(failures == 0, fmt::format("1000 random datasets, {} failing{}", failures,
                                      first.empty() ? "" : " (first: " + first + ")"));
  return c;
}

Criterion reconstruction_targets() {
  Criterion c{"8", "calibrated synthetic datasets against published summaries"};
  c.gating = false;
  const auto rows = ingest_dataset(read_data("meta_dataset.csv"));
  const struct {
    bool exclude;
    double mean, median, sd, var, range;
  } targets[] = {{false, 24.77, 20.18, 19.09, 364.39, 89.67}, {true, 19.12, 17.63, 7.34, 53.80, 29.04}};
  for (const auto& t : targets) {
    const auto s = describe(rows, std::nullopt, t.exclude);
    const std::string label = t.exclude ? "without outliers" : "with outliers";
    const double got[] = {s.mean, s.median, s.std_dev, s.variance, s.range};
    const double want[] = {t.mean, t.median, t.sd, t.var, t.range};
    const char* what[] = {"mean", "median", "std", "variance", "range"};
    for (int i = 0; i < 5; ++i)
      c.expect(std::fabs(got[i] - want[i]) <= 0.02, label + " " + what[i] + " " + near(got[i], want[i], 0.02));
  }

  const auto input = parse_regression_input(read_data("regression_yearly.csv"));
  const auto f = fit(ModelSpec::from_name("l_both"), input);
  const double beta[] = {-185.7, -1.2162, 0.38658};
  const double sigma[] = {89.266, 0.50161, 0.16527};
  for (int j = 0; j < 3; ++j) {
    const auto& k = f.coefficients[j];
    c.expect(std::fabs(k.value / beta[j] - 1) <= 0.005, k.name + " value " + near(k.value, beta[j], 0.005) + " rel");
    c.expect(std::fabs(k.std_error / sigma[j] - 1) <= 0.005,
             k.name + " sigma " + near(k.std_error, sigma[j], 0.005) + " rel");
  }
  c.expect(std::fabs(f.r_squared / 0.6034 - 1) <= 0.005, "R^2 " + near(f.r_squared, 0.6034, 0.005) + " rel");
  const auto& d = *f.diagnostics;
  c.expect(std::fabs(d.durbin_watson - 2.2035) <= 1e-3, "Durbin-Watson " + near(d.durbin_watson, 2.2035, 1e-3));
  c.expect(std::fabs(d.skewness + 0.5303) <= 1e-3, "skewness " + near(d.skewness, -0.5303, 1e-3));
  c.expect(std::fabs(d.kurtosis - 2.5922) <= 1e-3, "kurtosis " + near(d.kurtosis, 2.5922, 1e-3));
  c.expect(std::fabs(d.jb_stat - 0.3766) <= 1e-3, "Jarque-Bera statistic " + near(d.jb_stat, 0.3766, 1e-3));
  c.note(fmt::format("fitted t for the production term is {:.4f} (p {:.6f})", f.coefficients[1].t_stat,
                     f.coefficients[1].p_value));
  return c;
}

Criterion engine_properties() {
  Criterion c{"9", "engine property suite on random DAG inventories"};
  std::mt19937_64 rng(9001);
  const auto start = Clock::now();
  int failures = 0;
  std::string first;
  for (int i = 0; i < 500; ++i) {
    auto e = testing_support::check_engine_properties(rng);
    if (!e.empty() && failures++ == 0) first = e;
  }
  const double elapsed = seconds_since(start);
  c.expect(failures == 0, fmt::format("500 inventories, {} failing{}", failures,
                                      first.empty() ? "" : " (first: " + first + ")"));
  c.expect(elapsed < 10.0, fmt::format("runtime {:.2f} s < 10 s", elapsed));
  return c;
}

}  // namespace

int main() {
  const struct {
    const char* id;
    Criterion (*run)();
  } checks[] = {{"1", appendix_reproduction}, {"2", nesting_consistency}, {"3", basis_conversion},
                {"4", published_diagnostics}, {"5", ols_oracle},          {"6", special_functions},
                {"7", stats_properties},      {"8", reconstruction_targets}, {"9", engine_properties}};
  int failed = 0;
  for (const auto& check : checks) {
    Criterion c{check.id, "(aborted)"};
    try {
      c = check.run();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s  criterion %s: %s%s\n", c.pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                c.gating ? "" : " [reported, not gating]");
    for (const auto& d : c.details) std::printf("        %s\n", d.c_str());
    if (!c.pass && c.gating) ++failed;
  }
  std::printf("%d gating criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
