#include "chorefair/instances.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "chorefair/rng.hpp"
#include "chorefair/verify.hpp"

namespace chorefair {

namespace {

Instance uniform_rows(std::size_t agents, const std::vector<Cost>& row, std::string label,
                      Cost scale) {
  InstanceMeta meta{std::move(label), std::vector<Cost>(agents, scale)};
  return Instance::from_matrix(CostMatrix(agents, row), std::move(meta));
}

const nlohmann::json& require(const nlohmann::json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw Error(ErrorKind::kMalformedInput, std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

std::size_t require_count(const nlohmann::json& doc, const char* key) {
  const auto& value = require(doc, key);
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw Error(ErrorKind::kMalformedInput, std::string("field '") + key +
                                                "' must be a nonnegative integer");
  }
  return value.get<std::size_t>();
}

nlohmann::json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kMalformedInput, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kMalformedInput, path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kMalformedInput, "cannot write " + path.string());
  out << doc.dump() << '\n';
}

}  // namespace

std::pair<Instance, Instance> gen_theorem2_n2() {
  const std::vector<Cost> top{3, 1, 1, 1};
  const std::vector<Cost> flat{1, 1, 1, 1};
  return {Instance::from_matrix({top, flat}, {"hard-n2-top", {1, 1}}),
          Instance::from_matrix({flat, flat}, {"hard-n2-flat", {1, 1}})};
}

std::vector<Instance> gen_theorem2_n3(std::size_t items) {
  const AdversarialFamily family = theorem2_family_n3(items);
  const auto m = static_cast<Cost>(items);
  return {uniform_rows(3, family.rows[0], "hard-n3-base", 1),
          uniform_rows(3, family.rows[1], "hard-n3-c1", m - 1),
          uniform_rows(3, family.rows[2], "hard-n3-c2", m - 2),
          uniform_rows(3, family.rows[3], "hard-n3-c3", m - 3)};
}

Instance gen_random(std::size_t agents, std::size_t items, Cost max_cost, std::uint64_t seed,
                    bool ido) {
  if (agents == 0 || items == 0 || max_cost < 0) {
    throw Error(ErrorKind::kValidation, "gen_random needs n, m >= 1 and max cost >= 0");
  }
  Rng rng(seed);
  CostMatrix costs(agents, std::vector<Cost>(items));
  for (auto& row : costs) {
    for (auto& c : row) c = static_cast<Cost>(rng.uniform(static_cast<std::size_t>(max_cost) + 1));
    if (ido) std::sort(row.begin(), row.end(), std::greater<>());
  }
  return Instance::from_matrix(std::move(costs));
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json doc{{"n", inst.agents()}, {"m", inst.items()}, {"costs", inst.matrix()}};
  if (!inst.meta().label.empty()) doc["label"] = inst.meta().label;
  if (!inst.meta().row_scale.empty()) doc["scale"] = inst.meta().row_scale;
  return doc;
}

Instance instance_from_json(const nlohmann::json& doc) {
  const std::size_t n = require_count(doc, "n");
  const std::size_t m = require_count(doc, "m");
  const auto& costs = require(doc, "costs");
  if (!costs.is_array()) throw Error(ErrorKind::kMalformedInput, "'costs' must be an array");
  if (costs.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "'costs' has " + std::to_string(costs.size()) +
                                                   " rows but n = " + std::to_string(n));
  }
  CostMatrix matrix;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const auto& row = costs[i];
    if (!row.is_array()) throw Error(ErrorKind::kMalformedInput, "cost rows must be arrays");
    if (row.size() != m) {
      throw Error(ErrorKind::kDimensionMismatch, "row " + std::to_string(i + 1) + " has " +
                                                     std::to_string(row.size()) +
                                                     " entries but m = " + std::to_string(m));
    }
    std::vector<Cost> values;
    for (const auto& c : row) {
      if (!c.is_number_integer()) throw Error(ErrorKind::kMalformedInput, "costs must be integers");
      values.push_back(c.get<Cost>());
    }
    matrix.push_back(std::move(values));
  }
  InstanceMeta meta;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw Error(ErrorKind::kMalformedInput, "'label' must be text");
    meta.label = doc["label"].get<std::string>();
  }
  if (doc.contains("scale")) {
    const auto& scale = doc["scale"];
    if (!scale.is_array()) throw Error(ErrorKind::kMalformedInput, "'scale' must be an array");
    for (const auto& s : scale) {
      if (!s.is_number_integer()) throw Error(ErrorKind::kMalformedInput, "scale must be integers");
      meta.row_scale.push_back(s.get<Cost>());
    }
  }
  return Instance::from_matrix(std::move(matrix), std::move(meta));
}

nlohmann::json allocation_to_json(const Allocation& alloc) {
  nlohmann::json bundles = nlohmann::json::array();
  for (const auto& bundle : alloc.bundles()) {
    nlohmann::json items = nlohmann::json::array();
    for (std::size_t j : bundle) items.push_back(j + 1);
    bundles.push_back(std::move(items));
  }
  return nlohmann::json{{"bundles", std::move(bundles)}};
}

Allocation allocation_from_json(const nlohmann::json& doc, std::optional<std::size_t> items) {
  const auto& bundles = require(doc, "bundles");
  if (!bundles.is_array()) throw Error(ErrorKind::kMalformedInput, "'bundles' must be an array");
  std::vector<ItemSet> sets;
  std::size_t listed = 0;
  for (const auto& bundle : bundles) {
    if (!bundle.is_array()) throw Error(ErrorKind::kMalformedInput, "bundles must be arrays");
    ItemSet set;
    for (const auto& item : bundle) {
      if (!item.is_number_integer()) throw Error(ErrorKind::kMalformedInput, "items must be integers");
      const auto value = item.get<std::int64_t>();
      if (value < 1) {
        throw Error(ErrorKind::kInfeasibleAllocation,
                    "item " + std::to_string(value) + " is out of range");
      }
      set.push_back(static_cast<std::size_t>(value - 1));
    }
    listed += set.size();
    sets.push_back(std::move(set));
  }
  return Allocation::from_bundles(std::move(sets), items.value_or(listed));
}

Instance read_instance(const std::filesystem::path& path) {
  return instance_from_json(parse_file(path));
}

void write_instance(const std::filesystem::path& path, const Instance& inst) {
  write_file(path, instance_to_json(inst));
}

Allocation read_allocation(const std::filesystem::path& path, std::optional<std::size_t> items) {
  return allocation_from_json(parse_file(path), items);
}

void write_allocation(const std::filesystem::path& path, const Allocation& alloc) {
  write_file(path, allocation_to_json(alloc));
}

std::string instance_to_csv(const Instance& inst) {
  std::ostringstream out;
  for (std::size_t j = 0; j < inst.items(); ++j) out << (j ? "," : "") << "item_" << j + 1;
  out << '\n';
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    auto row = inst.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
    out << '\n';
  }
  return out.str();
}

}  // namespace chorefair
