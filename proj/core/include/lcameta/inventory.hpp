#pragma once

// Process-inventory graphs, emission-factor tables and regional scenario
// substitutions.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace lcameta {

enum class ExchangeKind { leaf, process };

std::string_view to_string(ExchangeKind kind);

/// One input flow into a process, per 1 unit of the owning reference flow.
struct ExchangeRef {
  std::string input_name;
  std::string origin;  // region code; unknown codes are legal until lookup
  double amount = 0.0;
  std::string unit;
  ExchangeKind kind = ExchangeKind::leaf;

  bool operator==(const ExchangeRef&) const = default;
};

struct ReferenceFlow {
  double quantity = 1.0;
  std::string unit = "kg";

  bool operator==(const ReferenceFlow&) const = default;
};

struct ProcessInventory {
  std::string id;
  ReferenceFlow reference_flow;
  std::vector<ExchangeRef> exchanges;

  bool operator==(const ProcessInventory&) const = default;
};

/// Processes keyed by id, kept in document order. Construction only enforces
/// unique ids; `parse_inventory` and `validate` check the remaining invariants.
class InventoryGraph {
 public:
  InventoryGraph() = default;
  explicit InventoryGraph(std::vector<ProcessInventory> processes);

  const std::vector<ProcessInventory>& processes() const noexcept { return processes_; }
  std::size_t size() const noexcept { return processes_.size(); }
  bool empty() const noexcept { return processes_.empty(); }

  const ProcessInventory* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  bool operator==(const InventoryGraph& other) const { return processes_ == other.processes_; }

 private:
  std::vector<ProcessInventory> processes_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct FactorKey {
  std::string input_name;
  std::string origin;
  std::string unit;

  auto operator<=>(const FactorKey&) const = default;
};

std::string to_string(const FactorKey& key);

/// kg CO2-eq per unit of a leaf exchange.
class EmissionFactorTable {
 public:
  /// Throws ValidationError on a duplicate key or a non-finite factor.
  void insert(FactorKey key, double factor);

  std::optional<double> find(const FactorKey& key) const;
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::map<FactorKey, double>& entries() const noexcept { return entries_; }

 private:
  std::map<FactorKey, double> entries_;
};

struct Substitution {
  std::string match;  // case-insensitive substring of input_name
  std::string new_origin;

  bool operator==(const Substitution&) const = default;
};

struct ScenarioConfig {
  std::string name;
  std::vector<Substitution> substitutions;
};

struct ScenarioApplication {
  InventoryGraph graph;
  std::vector<std::string> warnings;  // one per substitution that matched nothing
};

enum class Severity { warning, error };

std::string_view to_string(Severity severity);

struct Finding {
  Severity severity = Severity::error;
  std::string code;  // missing_factor, negative_amount, dangling_process, cycle, ...
  std::string message;
};

/// Parses and fully validates the JSON inventory schema. Throws ParseError for
/// malformed JSON or schema mismatches and ValidationError for duplicate ids,
/// dangling process references, cycles (message carries the path) and
/// negative or non-finite amounts.
InventoryGraph parse_inventory(std::string_view document);

/// Inverse of `parse_inventory`; output is stable for identical graphs.
std::string serialize_inventory(const InventoryGraph& graph);

/// CSV with header exactly `input_name,origin,unit,gwp_factor`.
EmissionFactorTable parse_factors(std::string_view document);

std::string serialize_factors(const EmissionFactorTable& table);

ScenarioConfig parse_scenario(std::string_view document);

/// Case-insensitive substring test used for scenario matching.
bool matches_pattern(std::string_view input_name, std::string_view pattern);

/// Returns a copy of `graph` with the origin of every matching exchange
/// (leaf or process) replaced. Later substitutions win when several match.
ScenarioApplication apply_scenario(const InventoryGraph& graph, const ScenarioConfig& scenario);

/// Empty iff every invariant holds and every leaf reachable anywhere in the
/// graph has a factor. Never throws.
std::vector<Finding> validate(const InventoryGraph& graph, const EmissionFactorTable& factors);

/// Process ids forming a cycle (first id repeated at the end), or empty when
/// the process-reference graph is acyclic. Dangling references are ignored.
std::vector<std::string> find_cycle(const InventoryGraph& graph);

}  // namespace lcameta
