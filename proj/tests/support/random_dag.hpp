#pragma once

// Random acyclic inventories for the engine property suite, plus a naive
// recursive scorer that serves as the oracle.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "lcameta/inventory.hpp"

namespace testing_support {

struct RandomInventory {
  lcameta::InventoryGraph graph;
  lcameta::EmissionFactorTable factors;
  std::string root;
};

inline const std::vector<std::string>& origins() {
  static const std::vector<std::string> o{"GLO", "CN", "SE", "ALT"};
  return o;
}

inline std::string leaf_name(std::size_t i) { return "material " + std::to_string(i); }

/// Process i only references processes with a larger index, so the graph is a
/// DAG rooted at "p0". Every (leaf, origin) pair has a factor so any origin
/// substitution stays scorable.
inline RandomInventory random_inventory(std::mt19937_64& rng, std::size_t max_processes = 50,
                                        std::size_t max_exchanges = 10, std::size_t leaf_kinds = 12) {
  std::uniform_int_distribution<std::size_t> n_proc(1, max_processes);
  std::uniform_int_distribution<std::size_t> n_exch(0, max_exchanges);
  std::uniform_real_distribution<double> amount(0.0, 2.0);
  std::uniform_real_distribution<double> quantity(0.5, 2.0);
  std::uniform_real_distribution<double> factor(0.01, 20.0);
  std::uniform_int_distribution<std::size_t> leaf(0, leaf_kinds - 1);
  std::uniform_int_distribution<std::size_t> origin(0, 2);  // ALT is only ever substituted in
  std::bernoulli_distribution pick_process(0.35);

  RandomInventory out;
  for (std::size_t i = 0; i < leaf_kinds; ++i)
    for (const auto& o : origins()) out.factors.insert({leaf_name(i), o, "kg"}, factor(rng));

  const std::size_t n = n_proc(rng);
  std::vector<lcameta::ProcessInventory> processes(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& p = processes[i];
    p.id = "p" + std::to_string(i);
    p.reference_flow.quantity = quantity(rng);
    const std::size_t m = n_exch(rng);
    for (std::size_t k = 0; k < m; ++k) {
      lcameta::ExchangeRef x;
      x.amount = amount(rng);
      if (i + 1 < n && pick_process(rng)) {
        std::uniform_int_distribution<std::size_t> target(i + 1, n - 1);
        x.input_name = "p" + std::to_string(target(rng));
        x.kind = lcameta::ExchangeKind::process;
        x.origin = "GLO";
        x.unit = "kg";
      } else {
        x.input_name = leaf_name(leaf(rng));
        x.origin = origins()[origin(rng)];
        x.unit = "kg";
      }
      p.exchanges.push_back(std::move(x));
    }
  }
  out.graph = lcameta::InventoryGraph(std::move(processes));
  out.root = "p0";
  return out;
}

/// Straightforward recursion without memoization.
inline double naive_score(const lcameta::InventoryGraph& g, const lcameta::EmissionFactorTable& f,
                          const std::string& id) {
  const auto* p = g.find(id);
  double total = 0.0;
  for (const auto& x : p->exchanges) {
    if (x.kind == lcameta::ExchangeKind::leaf) {
      total += x.amount * *f.find({x.input_name, x.origin, x.unit});
    } else {
      const auto* child = g.find(x.input_name);
      total += x.amount * naive_score(g, f, x.input_name) / child->reference_flow.quantity;
    }
  }
  return total;
}

}  // namespace testing_support
