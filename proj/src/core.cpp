#include "chorefair/core.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace chorefair {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation: return "Validation";
    case ErrorKind::kNegativeCost: return "NegativeCost";
    case ErrorKind::kEmptyMatrix: return "EmptyMatrix";
    case ErrorKind::kRaggedRows: return "RaggedRows";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kInfeasibleAllocation: return "InfeasibleAllocation";
    case ErrorKind::kMalformedInput: return "MalformedInput";
    case ErrorKind::kUnknownAlgorithm: return "UnknownAlgorithm";
    case ErrorKind::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::string message = "invalid instance:";
  for (const auto& v : violations) {
    message += " [";
    message += to_string(v.kind);
    message += ": " + v.detail + "]";
  }
  return message;
}

// The error kind reported for a batch: the single kind if there is one.
ErrorKind summary_kind(const std::vector<Violation>& violations) {
  if (violations.empty()) return ErrorKind::kValidation;
  ErrorKind first = violations.front().kind;
  for (const auto& v : violations) {
    if (v.kind != first) return ErrorKind::kValidation;
  }
  return first;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(summary_kind(violations), join_violations(violations)),
      violations_(std::move(violations)) {}

Instance validate_instance(const CostMatrix& raw) {
  std::vector<Violation> violations;
  if (raw.empty() || raw.front().empty()) {
    violations.push_back({ErrorKind::kEmptyMatrix, "need at least one agent and one item"});
    throw ValidationError(std::move(violations));
  }
  const std::size_t items = raw.front().size();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != items) {
      violations.push_back({ErrorKind::kRaggedRows,
                            "row " + std::to_string(i + 1) + " has " +
                                std::to_string(raw[i].size()) + " entries, expected " +
                                std::to_string(items)});
      continue;
    }
    for (std::size_t j = 0; j < items; ++j) {
      if (raw[i][j] < 0) {
        violations.push_back({ErrorKind::kNegativeCost,
                              "cost of item " + std::to_string(j + 1) + " for agent " +
                                  std::to_string(i + 1) + " is " + std::to_string(raw[i][j])});
      }
    }
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));

  Instance inst;
  inst.agents_ = raw.size();
  inst.items_ = items;
  inst.costs_.reserve(inst.agents_ * items);
  for (const auto& row : raw) inst.costs_.insert(inst.costs_.end(), row.begin(), row.end());
  return inst;
}

Instance Instance::from_matrix(CostMatrix costs, InstanceMeta meta) {
  Instance inst = validate_instance(costs);
  if (!meta.row_scale.empty() && meta.row_scale.size() != inst.agents()) {
    throw Error(ErrorKind::kDimensionMismatch, "row_scale needs one entry per agent");
  }
  inst.meta_ = std::move(meta);
  return inst;
}

Cost Instance::total(std::size_t agent) const {
  auto r = row(agent);
  return std::accumulate(r.begin(), r.end(), Cost{0});
}

CostMatrix Instance::matrix() const {
  CostMatrix out(agents_);
  for (std::size_t i = 0; i < agents_; ++i) {
    auto r = row(i);
    out[i].assign(r.begin(), r.end());
  }
  return out;
}

OrdinalProfile OrdinalProfile::from_rankings(std::vector<std::vector<std::size_t>> rankings) {
  if (rankings.empty() || rankings.front().empty()) {
    throw Error(ErrorKind::kEmptyMatrix, "profile needs at least one agent and one item");
  }
  OrdinalProfile profile;
  profile.items_ = rankings.front().size();
  profile.positions_.reserve(rankings.size());
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    const auto& ranking = rankings[i];
    if (ranking.size() != profile.items_) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "ranking of agent " + std::to_string(i + 1) + " has wrong length");
    }
    std::vector<std::size_t> position(profile.items_, profile.items_);
    for (std::size_t k = 0; k < ranking.size(); ++k) {
      const std::size_t item = ranking[k];
      if (item >= profile.items_ || position[item] != profile.items_) {
        throw Error(ErrorKind::kValidation,
                    "ranking of agent " + std::to_string(i + 1) + " is not a permutation");
      }
      position[item] = k;
    }
    profile.positions_.push_back(std::move(position));
  }
  profile.rankings_ = std::move(rankings);
  return profile;
}

OrdinalProfile OrdinalProfile::with_ranking(std::size_t agent,
                                            std::vector<std::size_t> ranking) const {
  auto rankings = rankings_;
  rankings.at(agent) = std::move(ranking);
  return from_rankings(std::move(rankings));
}

OrdinalProfile ordinal_of(const Instance& inst) {
  std::vector<std::vector<std::size_t>> rankings(inst.agents());
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    auto& ranking = rankings[i];
    ranking.resize(inst.items());
    std::iota(ranking.begin(), ranking.end(), std::size_t{0});
    auto row = inst.row(i);
    std::stable_sort(ranking.begin(), ranking.end(),
                     [&](std::size_t a, std::size_t b) { return row[a] > row[b]; });
  }
  return OrdinalProfile::from_rankings(std::move(rankings));
}

bool consistent_with(std::span<const Cost> row, std::span<const std::size_t> ranking) {
  for (std::size_t k = 1; k < ranking.size(); ++k) {
    if (row[ranking[k - 1]] < row[ranking[k]]) return false;
  }
  return true;
}

Allocation Allocation::from_bundles(std::vector<ItemSet> bundles, std::size_t items) {
  if (bundles.empty()) {
    throw Error(ErrorKind::kInfeasibleAllocation, "allocation needs at least one bundle");
  }
  constexpr std::size_t kUnowned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(items, kUnowned);
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    auto& bundle = bundles[i];
    std::sort(bundle.begin(), bundle.end());
    for (std::size_t item : bundle) {
      if (item >= items) {
        throw Error(ErrorKind::kInfeasibleAllocation,
                    "item " + std::to_string(item + 1) + " is out of range");
      }
      if (owner[item] != kUnowned) {
        throw Error(ErrorKind::kInfeasibleAllocation,
                    "item " + std::to_string(item + 1) + " is allocated twice");
      }
      owner[item] = i;
    }
  }
  for (std::size_t j = 0; j < items; ++j) {
    if (owner[j] == kUnowned) {
      throw Error(ErrorKind::kInfeasibleAllocation,
                  "item " + std::to_string(j + 1) + " is not allocated");
    }
  }
  Allocation alloc;
  alloc.bundles_ = std::move(bundles);
  alloc.owner_ = std::move(owner);
  return alloc;
}

Allocation Allocation::from_owners(std::span<const std::size_t> owner, std::size_t agents) {
  if (agents == 0) {
    throw Error(ErrorKind::kInfeasibleAllocation, "allocation needs at least one agent");
  }
  Allocation alloc;
  alloc.bundles_.resize(agents);
  alloc.owner_.assign(owner.begin(), owner.end());
  for (std::size_t j = 0; j < owner.size(); ++j) {
    if (owner[j] >= agents) {
      throw Error(ErrorKind::kInfeasibleAllocation,
                  "item " + std::to_string(j + 1) + " has no valid owner");
    }
    alloc.bundles_[owner[j]].push_back(j);
  }
  return alloc;
}

Cost bundle_cost(const Instance& inst, std::size_t agent, std::span<const std::size_t> bundle) {
  if (agent >= inst.agents()) throw std::out_of_range("bundle_cost: agent out of range");
  auto row = inst.row(agent);
  Cost total = 0;
  for (std::size_t item : bundle) {
    if (item >= row.size()) throw std::out_of_range("bundle_cost: item out of range");
    total += row[item];
  }
  return total;
}

bool is_ido(const Instance& inst) {
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    auto row = inst.row(i);
    if (!std::is_sorted(row.begin(), row.end(), std::greater<>())) return false;
  }
  return true;
}

IdoInstance::IdoInstance(Instance inst) : inst_(std::move(inst)) {
  if (!is_ido(inst_)) {
    throw Error(ErrorKind::kValidation, "IDO instance rows must be non-increasing");
  }
}

}  // namespace chorefair
