#pragma once

// Instance generators and JSON/CSV file formats.
//
//   instance:   {"n": 2, "m": 4, "costs": [[3,1,1,1],[1,1,1,1]]}
//               optional "label" (string) and "scale" (one integer per row)
//   allocation: {"bundles": [[1,4],[2,3]]}   one-based items

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chorefair/core.hpp"

namespace chorefair {

// The two 2x4 identical-ranking instances: [(3,1,1,1),(1,1,1,1)] and
// [(1,1,1,1),(1,1,1,1)].
std::pair<Instance, Instance> gen_theorem2_n2();

// Four 3xm instances, one per adversarial row scaled to integers; every row of
// an instance is that family row. Labels name the row, row_scale records the
// factor. Throws Error(kValidation) for even m or m < 5.
std::vector<Instance> gen_theorem2_n3(std::size_t items);

// Uniform costs in [0, max_cost]; with `ido` every row is then sorted
// non-increasingly.
Instance gen_random(std::size_t agents, std::size_t items, Cost max_cost,
                    std::uint64_t seed, bool ido = false);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json allocation_to_json(const Allocation& alloc);
// Without `items`, the bundles must partition {1..total items listed}.
Allocation allocation_from_json(const nlohmann::json& doc,
                                std::optional<std::size_t> items = std::nullopt);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& inst);
Allocation read_allocation(const std::filesystem::path& path,
                           std::optional<std::size_t> items = std::nullopt);
void write_allocation(const std::filesystem::path& path, const Allocation& alloc);

// Header "item_1,...,item_m", one row per agent.
std::string instance_to_csv(const Instance& inst);

}  // namespace chorefair
