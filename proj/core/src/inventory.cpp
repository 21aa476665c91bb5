#include "lcameta/inventory.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>

#include <json.hpp>

#include "lcameta/csv.hpp"
#include "lcameta/error.hpp"

namespace lcameta {

using nlohmann::json;

std::string_view to_string(ExchangeKind kind) {
  return kind == ExchangeKind::leaf ? "leaf" : "process";
}

std::string_view to_string(Severity severity) {
  return severity == Severity::error ? "error" : "warning";
}

std::string to_string(const FactorKey& key) {
  return "(" + key.input_name + ", " + key.origin + ", " + key.unit + ")";
}

InventoryGraph::InventoryGraph(std::vector<ProcessInventory> processes)
    : processes_(std::move(processes)) {
  index_.reserve(processes_.size());
  for (std::size_t i = 0; i < processes_.size(); ++i) {
    auto [it, inserted] = index_.emplace(processes_[i].id, i);
    if (!inserted) throw ValidationError("duplicate process id '" + processes_[i].id + "'");
  }
}

const ProcessInventory* InventoryGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &processes_[it->second];
}

void EmissionFactorTable::insert(FactorKey key, double factor) {
  if (!std::isfinite(factor)) {
    throw ValidationError("non-finite factor for " + to_string(key));
  }
  auto [it, inserted] = entries_.emplace(std::move(key), factor);
  if (!inserted) throw ValidationError("duplicate factor key " + to_string(it->first));
}

std::optional<double> EmissionFactorTable::find(const FactorKey& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// JSON inventory and scenario documents

namespace {

const json& require(const json& object, const char* key, json::value_t type, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) throw ParseError(where + ": missing key '" + key + "'");
  const bool ok = type == json::value_t::number_float ? it->is_number() : it->type() == type;
  if (!ok) throw ParseError(where + ": key '" + key + "' has the wrong type");
  return *it;
}

json parse_json(std::string_view document) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error at byte ") + std::to_string(e.byte) + ": " + e.what(), e.byte);
  }
}

std::string cycle_text(const std::vector<std::string>& cycle) {
  std::string text;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) text += " -> ";
    text += cycle[i];
  }
  return text;
}

}  // namespace

InventoryGraph parse_inventory(std::string_view document) {
  const json root = parse_json(document);
  if (!root.is_object()) throw ParseError("inventory document must be a JSON object");
  const json& list = require(root, "processes", json::value_t::array, "inventory");

  std::vector<ProcessInventory> processes;
  processes.reserve(list.size());
  for (std::size_t p = 0; p < list.size(); ++p) {
    const json& node = list[p];
    const std::string where = "processes[" + std::to_string(p) + "]";
    if (!node.is_object()) throw ParseError(where + ": expected an object");

    ProcessInventory process;
    process.id = require(node, "id", json::value_t::string, where).get<std::string>();
    const json& flow = require(node, "reference_flow", json::value_t::object, where);
    process.reference_flow.quantity = require(flow, "quantity", json::value_t::number_float, where).get<double>();
    process.reference_flow.unit = require(flow, "unit", json::value_t::string, where).get<std::string>();
    if (!(process.reference_flow.quantity > 0.0) || !std::isfinite(process.reference_flow.quantity)) {
      throw ValidationError("process '" + process.id + "': reference flow quantity must be positive");
    }

    const json& exchanges = require(node, "exchanges", json::value_t::array, where);
    for (std::size_t e = 0; e < exchanges.size(); ++e) {
      const json& x = exchanges[e];
      const std::string at = where + ".exchanges[" + std::to_string(e) + "]";
      if (!x.is_object()) throw ParseError(at + ": expected an object");
      ExchangeRef ref;
      ref.input_name = require(x, "input", json::value_t::string, at).get<std::string>();
      ref.origin = require(x, "origin", json::value_t::string, at).get<std::string>();
      ref.amount = require(x, "amount", json::value_t::number_float, at).get<double>();
      ref.unit = require(x, "unit", json::value_t::string, at).get<std::string>();
      const auto kind = require(x, "kind", json::value_t::string, at).get<std::string>();
      if (kind == "leaf") {
        ref.kind = ExchangeKind::leaf;
      } else if (kind == "process") {
        ref.kind = ExchangeKind::process;
      } else {
        throw ParseError(at + ": kind must be \"leaf\" or \"process\", got \"" + kind + "\"");
      }
      if (!std::isfinite(ref.amount)) {
        throw ValidationError("process '" + process.id + "': non-finite amount for '" + ref.input_name + "'");
      }
      if (ref.amount < 0.0) {
        throw ValidationError("process '" + process.id + "': negative amount for '" + ref.input_name + "'");
      }
      process.exchanges.push_back(std::move(ref));
    }
    processes.push_back(std::move(process));
  }

  InventoryGraph graph(std::move(processes));
  for (const auto& process : graph.processes()) {
    for (const auto& x : process.exchanges) {
      if (x.kind == ExchangeKind::process && !graph.contains(x.input_name)) {
        throw ValidationError("process '" + process.id + "' references unknown process '" + x.input_name + "'");
      }
    }
  }
  if (auto cycle = find_cycle(graph); !cycle.empty()) {
    throw ValidationError("cycle detected: " + cycle_text(cycle));
  }
  return graph;
}

std::string serialize_inventory(const InventoryGraph& graph) {
  json list = json::array();
  for (const auto& process : graph.processes()) {
    json exchanges = json::array();
    for (const auto& x : process.exchanges) {
      exchanges.push_back({{"input", x.input_name},
                           {"origin", x.origin},
                           {"amount", x.amount},
                           {"unit", x.unit},
                           {"kind", std::string(to_string(x.kind))}});
    }
    list.push_back({{"id", process.id},
                    {"reference_flow",
                     {{"quantity", process.reference_flow.quantity}, {"unit", process.reference_flow.unit}}},
                    {"exchanges", std::move(exchanges)}});
  }
  return json{{"processes", std::move(list)}}.dump(2) + "\n";
}

ScenarioConfig parse_scenario(std::string_view document) {
  const json root = parse_json(document);
  if (!root.is_object()) throw ParseError("scenario document must be a JSON object");
  ScenarioConfig scenario;
  scenario.name = require(root, "name", json::value_t::string, "scenario").get<std::string>();
  const json& subs = require(root, "substitutions", json::value_t::array, "scenario");
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const std::string at = "substitutions[" + std::to_string(i) + "]";
    if (!subs[i].is_object()) throw ParseError(at + ": expected an object");
    scenario.substitutions.push_back(
        {require(subs[i], "match", json::value_t::string, at).get<std::string>(),
         require(subs[i], "new_origin", json::value_t::string, at).get<std::string>()});
  }
  return scenario;
}

// ---------------------------------------------------------------------------
// Factor CSV

EmissionFactorTable parse_factors(std::string_view document) {
  const auto records = csv::parse(document);
  if (records.empty()) throw ParseError("factor file is empty; expected header input_name,origin,unit,gwp_factor", 1);

  const csv::Row expected{"input_name", "origin", "unit", "gwp_factor"};
  if (records.front().fields != expected) {
    throw ParseError("factor file header must be exactly input_name,origin,unit,gwp_factor", records.front().line);
  }

  EmissionFactorTable table;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& [line, fields] = records[r];
    if (fields.size() != expected.size()) {
      throw ParseError("line " + std::to_string(line) + ": expected 4 columns, found " +
                           std::to_string(fields.size()),
                       line);
    }
    const std::string& text = fields[3];
    double factor = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), factor);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
      throw ParseError("line " + std::to_string(line) + ": gwp_factor '" + text + "' is not numeric", line);
    }
    try {
      table.insert({fields[0], fields[1], fields[2]}, factor);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line) + ": " + e.what());
    }
  }
  return table;
}

std::string serialize_factors(const EmissionFactorTable& table) {
  std::string out = csv::format_row({"input_name", "origin", "unit", "gwp_factor"});
  for (const auto& [key, factor] : table.entries()) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, factor);
    out += csv::format_row({key.input_name, key.origin, key.unit, std::string(buffer, end)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scenarios

bool matches_pattern(std::string_view input_name, std::string_view pattern) {
  auto lower = [](unsigned char c) { return static_cast<char>(std::tolower(c)); };
  auto it = std::search(input_name.begin(), input_name.end(), pattern.begin(), pattern.end(),
                        [&](char a, char b) { return lower(a) == lower(b); });
  return it != input_name.end() || pattern.empty();
}

ScenarioApplication apply_scenario(const InventoryGraph& graph, const ScenarioConfig& scenario) {
  std::vector<ProcessInventory> processes = graph.processes();
  std::vector<std::size_t> hits(scenario.substitutions.size(), 0);
  for (auto& process : processes) {
    for (auto& x : process.exchanges) {
      for (std::size_t s = 0; s < scenario.substitutions.size(); ++s) {
        const auto& sub = scenario.substitutions[s];
        if (matches_pattern(x.input_name, sub.match)) {
          x.origin = sub.new_origin;
          ++hits[s];
        }
      }
    }
  }

  ScenarioApplication result{InventoryGraph(std::move(processes)), {}};
  for (std::size_t s = 0; s < hits.size(); ++s) {
    if (hits[s] == 0) {
      result.warnings.push_back("scenario '" + scenario.name + "': pattern '" +
                                scenario.substitutions[s].match + "' matched no exchange");
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> find_cycle(const InventoryGraph& graph) {
  enum class Mark { unvisited, active, done };
  std::unordered_map<std::string, Mark> marks;
  std::vector<std::string> stack;
  std::vector<std::string> cycle;

  std::function<bool(const ProcessInventory&)> visit = [&](const ProcessInventory& process) {
    marks[process.id] = Mark::active;
    stack.push_back(process.id);
    for (const auto& x : process.exchanges) {
      if (x.kind != ExchangeKind::process) continue;
      const ProcessInventory* child = graph.find(x.input_name);
      if (!child) continue;
      const Mark mark = marks.contains(child->id) ? marks[child->id] : Mark::unvisited;
      if (mark == Mark::active) {
        auto from = std::find(stack.begin(), stack.end(), child->id);
        cycle.assign(from, stack.end());
        cycle.push_back(child->id);
        return true;
      }
      if (mark == Mark::unvisited && visit(*child)) return true;
    }
    stack.pop_back();
    marks[process.id] = Mark::done;
    return false;
  };

  for (const auto& process : graph.processes()) {
    if (!marks.contains(process.id) && visit(process)) return cycle;
  }
  return {};
}

std::vector<Finding> validate(const InventoryGraph& graph, const EmissionFactorTable& factors) {
  std::vector<Finding> findings;
  auto report = [&](std::string code, std::string message) {
    findings.push_back({Severity::error, std::move(code), std::move(message)});
  };

  for (const auto& process : graph.processes()) {
    const double quantity = process.reference_flow.quantity;
    if (!(quantity > 0.0) || !std::isfinite(quantity)) {
      report("nonpositive_reference_flow", "process '" + process.id + "': reference flow quantity must be positive");
    }
    for (const auto& x : process.exchanges) {
      const std::string where = "process '" + process.id + "', exchange '" + x.input_name + "'";
      if (!std::isfinite(x.amount)) {
        report("non_finite_amount", where + ": amount is not finite");
      } else if (x.amount < 0.0) {
        report("negative_amount", where + ": negative amount " + std::to_string(x.amount));
      }
      if (x.kind == ExchangeKind::process) {
        if (!graph.contains(x.input_name)) {
          report("dangling_process", where + ": no process with id '" + x.input_name + "'");
        }
      } else {
        const FactorKey key{x.input_name, x.origin, x.unit};
        if (!factors.find(key)) report("missing_factor", where + ": missing factor " + to_string(key));
      }
    }
  }
  if (auto cycle = find_cycle(graph); !cycle.empty()) {
    report("cycle", "cycle detected: " + cycle_text(cycle));
  }
  return findings;
}

}  // namespace lcameta
