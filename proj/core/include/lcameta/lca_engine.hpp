#pragma once

// Global-warming-potential scoring over inventory graphs.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lcameta/error.hpp"
#include "lcameta/inventory.hpp"

namespace lcameta {

struct ScoreBreakdown;

struct Contribution {
  ExchangeRef exchange;
  double score = 0.0;  // kg CO2-eq per reference flow of the owning process
  double share = 0.0;  // fraction of the owning total (of sum |score| when negatives exist)
  std::shared_ptr<const ScoreBreakdown> child;  // set iff exchange.kind == process
};

struct ScoreBreakdown {
  std::string process_id;
  std::string scenario;
  double total = 0.0;  // kg CO2-eq per reference flow
  double reference_quantity = 1.0;
  std::vector<Contribution> contributions;
  bool has_negative = false;  // some score in this subtree is negative
  std::vector<std::string> warnings;
};

class MissingFactorError : public Error {
 public:
  explicit MissingFactorError(FactorKey key)
      : Error("missing emission factor " + to_string(key)), key_(std::move(key)) {}
  const FactorKey& key() const noexcept { return key_; }

 private:
  FactorKey key_;
};

class UnknownProcessError : public Error {
 public:
  explicit UnknownProcessError(const std::string& id) : Error("unknown process '" + id + "'") {}
};

struct ScoreOptions {
  std::string scenario = "baseline";
  bool memoize = true;  // off re-scores shared sub-processes at every reference
};

/// Post-order evaluation of `process_id`. Each sub-process is scored once per
/// call when memoizing; children are shared between contributions in that case.
ScoreBreakdown unit_score(const InventoryGraph& graph, const EmissionFactorTable& factors,
                          const std::string& process_id, const ScoreOptions& options = {});

/// One breakdown per scenario, evaluated concurrently on `apply_scenario`
/// copies, in input order.
std::vector<ScoreBreakdown> compare_scenarios(const InventoryGraph& graph, const EmissionFactorTable& factors,
                                              const std::string& process_id,
                                              std::span<const ScenarioConfig> scenarios);

/// Battery energy capacity per mass, kWh/kg.
class BasisConversion {
 public:
  explicit BasisConversion(double specific_energy);
  double specific_energy() const noexcept { return specific_energy_; }

 private:
  double specific_energy_;
};

/// kg CO2-eq per kg to kg CO2-eq per kWh.
double convert_basis(double score_per_kg, const BasisConversion& conversion);

struct RankedContribution {
  std::vector<std::string> path;  // process ids / exchange names from the root
  double score = 0.0;             // in root reference-flow terms
  double share = 0.0;             // against the root total
};

std::string join_path(const std::vector<std::string>& path, std::string_view separator = " / ");

/// Contributions flattened to `depth` levels below the root (leaves above that
/// depth are kept as they are), sorted by descending score. Depth 0 yields the
/// root total alone.
std::vector<RankedContribution> contribution_ranking(const ScoreBreakdown& breakdown, std::size_t depth);

struct SankeyEdge {
  std::string source;
  std::string target;
  double value = 0.0;  // kg CO2-eq per root reference flow
};

/// Edge list of the contribution tree down to `max_depth` levels (0 = all).
/// Leaf targets are labelled "input_name [origin]", process targets by id.
std::vector<SankeyEdge> sankey_edges(const ScoreBreakdown& breakdown, std::size_t max_depth = 0);

struct BreakdownDifference {
  std::vector<std::string> path;
  double score_a = 0.0;
  double score_b = 0.0;
};

/// Positions (matched by path) whose root-scaled scores differ by more than
/// `tolerance` absolute, plus entries present in only one tree.
std::vector<BreakdownDifference> diff_breakdowns(const ScoreBreakdown& a, const ScoreBreakdown& b,
                                                 double tolerance = 0.0);

}  // namespace lcameta
