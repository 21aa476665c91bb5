#include "lcameta/lca_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace lcameta {

namespace {

class Evaluator {
 public:
  Evaluator(const InventoryGraph& graph, const EmissionFactorTable& factors, const ScoreOptions& options)
      : graph_(graph), factors_(factors), options_(options) {}

  std::shared_ptr<const ScoreBreakdown> score(const std::string& process_id) {
    if (options_.memoize) {
      if (auto it = memo_.find(process_id); it != memo_.end()) return it->second;
    }
    const ProcessInventory* process = graph_.find(process_id);
    if (!process) throw UnknownProcessError(process_id);
    if (!active_.insert(process_id).second) {
      throw ValidationError("cycle detected through process '" + process_id + "'");
    }

    auto node = std::make_shared<ScoreBreakdown>();
    node->process_id = process->id;
    node->scenario = options_.scenario;
    node->reference_quantity = process->reference_flow.quantity;
    node->contributions.reserve(process->exchanges.size());

    for (const auto& x : process->exchanges) {
      Contribution c;
      c.exchange = x;
      if (x.kind == ExchangeKind::process) {
        c.child = score(x.input_name);
        c.score = x.amount * c.child->total / c.child->reference_quantity;
        node->has_negative = node->has_negative || c.child->has_negative;
      } else {
        FactorKey key{x.input_name, x.origin, x.unit};
        const auto factor = factors_.find(key);
        if (!factor) throw MissingFactorError(std::move(key));
        c.score = x.amount * *factor;
      }
      node->has_negative = node->has_negative || c.score < 0.0;
      node->total += c.score;
      node->contributions.push_back(std::move(c));
    }

    double denominator = node->total;
    if (std::any_of(node->contributions.begin(), node->contributions.end(),
                    [](const Contribution& c) { return c.score < 0.0; })) {
      denominator = 0.0;
      for (const auto& c : node->contributions) denominator += std::abs(c.score);
      node->warnings.push_back("process '" + node->process_id +
                               "' has negative contributions; shares are relative to the sum of magnitudes");
    }
    if (denominator != 0.0) {
      for (auto& c : node->contributions) c.share = c.score / denominator;
    }

    active_.erase(process_id);
    std::shared_ptr<const ScoreBreakdown> result = std::move(node);
    if (options_.memoize) memo_.emplace(process_id, result);
    return result;
  }

 private:
  const InventoryGraph& graph_;
  const EmissionFactorTable& factors_;
  const ScoreOptions& options_;
  std::unordered_map<std::string, std::shared_ptr<const ScoreBreakdown>> memo_;
  std::unordered_set<std::string> active_;
};

// Multiplier turning a child's per-reference-flow scores into parent terms.
double child_scale(const Contribution& c) { return c.exchange.amount / c.child->reference_quantity; }

double root_denominator(const ScoreBreakdown& root) {
  if (!root.has_negative) return root.total;
  double sum = 0.0;
  for (const auto& c : root.contributions) sum += std::abs(c.score);
  return sum;
}

}  // namespace

ScoreBreakdown unit_score(const InventoryGraph& graph, const EmissionFactorTable& factors,
                          const std::string& process_id, const ScoreOptions& options) {
  Evaluator evaluator(graph, factors, options);
  ScoreBreakdown root = *evaluator.score(process_id);

  // Surface warnings from the whole tree on the root.
  // Children are shared when memoizing, so visit each node once.
  std::set<std::string> seen(root.warnings.begin(), root.warnings.end());
  std::unordered_set<const ScoreBreakdown*> visited;
  std::function<void(const ScoreBreakdown&)> collect = [&](const ScoreBreakdown& node) {
    for (const auto& c : node.contributions) {
      if (!c.child || !visited.insert(c.child.get()).second) continue;
      for (const auto& w : c.child->warnings) {
        if (seen.insert(w).second) root.warnings.push_back(w);
      }
      collect(*c.child);
    }
  };
  collect(root);
  return root;
}

std::vector<ScoreBreakdown> compare_scenarios(const InventoryGraph& graph, const EmissionFactorTable& factors,
                                              const std::string& process_id,
                                              std::span<const ScenarioConfig> scenarios) {
  std::vector<std::future<ScoreBreakdown>> pending;
  pending.reserve(scenarios.size());
  for (const auto& scenario : scenarios) {
    pending.push_back(std::async(std::launch::async, [&graph, &factors, &process_id, &scenario] {
      ScenarioApplication applied = apply_scenario(graph, scenario);
      ScoreOptions options;
      options.scenario = scenario.name;
      ScoreBreakdown breakdown = unit_score(applied.graph, factors, process_id, options);
      breakdown.warnings.insert(breakdown.warnings.begin(), applied.warnings.begin(), applied.warnings.end());
      return breakdown;
    }));
  }
  std::vector<ScoreBreakdown> results;
  results.reserve(pending.size());
  for (auto& f : pending) results.push_back(f.get());
  return results;
}

BasisConversion::BasisConversion(double specific_energy) : specific_energy_(specific_energy) {
  if (!(specific_energy > 0.0) || !std::isfinite(specific_energy)) {
    throw ValidationError("specific energy must be positive and finite, got " + std::to_string(specific_energy));
  }
}

double convert_basis(double score_per_kg, const BasisConversion& conversion) {
  return score_per_kg / conversion.specific_energy();
}

std::string join_path(const std::vector<std::string>& path, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += separator;
    out += path[i];
  }
  return out;
}

std::vector<RankedContribution> contribution_ranking(const ScoreBreakdown& breakdown, std::size_t depth) {
  const double denominator = root_denominator(breakdown);
  auto share_of = [&](double score) { return denominator == 0.0 ? 0.0 : score / denominator; };

  std::vector<RankedContribution> out;
  if (depth == 0) {
    out.push_back({{breakdown.process_id}, breakdown.total, breakdown.total == 0.0 ? 0.0 : 1.0});
    return out;
  }

  std::function<void(const ScoreBreakdown&, double, std::vector<std::string>&, std::size_t)> walk =
      [&](const ScoreBreakdown& node, double scale, std::vector<std::string>& path, std::size_t level) {
        for (const auto& c : node.contributions) {
          path.push_back(c.exchange.input_name);
          const double score = scale * c.score;
          if (c.child && level < depth && !c.child->contributions.empty()) {
            walk(*c.child, scale * child_scale(c), path, level + 1);
          } else {
            out.push_back({path, score, share_of(score)});
          }
          path.pop_back();
        }
      };
  std::vector<std::string> path{breakdown.process_id};
  walk(breakdown, 1.0, path, 1);

  std::stable_sort(out.begin(), out.end(), [](const RankedContribution& a, const RankedContribution& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.path < b.path;
  });
  return out;
}

std::vector<SankeyEdge> sankey_edges(const ScoreBreakdown& breakdown, std::size_t max_depth) {
  std::vector<SankeyEdge> edges;
  std::function<void(const ScoreBreakdown&, double, std::size_t)> walk = [&](const ScoreBreakdown& node,
                                                                             double scale, std::size_t level) {
    for (const auto& c : node.contributions) {
      const std::string target =
          c.child ? c.exchange.input_name : c.exchange.input_name + " [" + c.exchange.origin + "]";
      edges.push_back({node.process_id, target, scale * c.score});
    }
    if (max_depth != 0 && level >= max_depth) return;
    for (const auto& c : node.contributions) {
      if (c.child) walk(*c.child, scale * child_scale(c), level + 1);
    }
  };
  walk(breakdown, 1.0, 1);
  return edges;
}

std::vector<BreakdownDifference> diff_breakdowns(const ScoreBreakdown& a, const ScoreBreakdown& b,
                                                 double tolerance) {
  using Table = std::map<std::vector<std::string>, double>;
  auto flatten = [](const ScoreBreakdown& root) {
    Table table;
    std::function<void(const ScoreBreakdown&, double, std::vector<std::string>&)> walk =
        [&](const ScoreBreakdown& node, double scale, std::vector<std::string>& path) {
          std::map<std::string, int> occurrences;
          for (const auto& c : node.contributions) {
            std::string label = c.exchange.input_name;
            if (const int k = occurrences[label]++; k > 0) label += " #" + std::to_string(k + 1);
            path.push_back(std::move(label));
            table[path] = scale * c.score;
            if (c.child) walk(*c.child, scale * child_scale(c), path);
            path.pop_back();
          }
        };
    std::vector<std::string> path{root.process_id};
    table[path] = root.total;
    walk(root, 1.0, path);
    return table;
  };

  const Table ta = flatten(a);
  const Table tb = flatten(b);
  std::vector<BreakdownDifference> diffs;
  for (const auto& [path, score] : ta) {
    auto it = tb.find(path);
    if (it == tb.end()) {
      diffs.push_back({path, score, std::nan("")});
    } else if (std::abs(score - it->second) > tolerance) {
      diffs.push_back({path, score, it->second});
    }
  }
  for (const auto& [path, score] : tb) {
    if (!ta.contains(path)) diffs.push_back({path, std::nan(""), score});
  }
  return diffs;
}

}  // namespace lcameta
