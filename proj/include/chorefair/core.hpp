#pragma once

// Domain types for chore allocation: cost instances, ordinal profiles and
// allocations.
//
// All library-level indices (agents and items) are zero-based. Serialized
// forms and the command line use one-based indices; the conversion happens in
// instances.hpp and the CLI.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chorefair/error.hpp"

namespace chorefair {

using Cost = std::int64_t;
using CostMatrix = std::vector<std::vector<Cost>>;
// Sorted, duplicate-free list of item indices.
using ItemSet = std::vector<std::size_t>;

struct Violation {
  ErrorKind kind;
  std::string detail;
};

// Raised by validate_instance; carries every violation found, not just the
// first one.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Optional provenance carried along with generated instances. row_scale[i]
// is the integer factor agent i's row was multiplied by to clear fractions.
struct InstanceMeta {
  std::string label;
  std::vector<Cost> row_scale;

  friend bool operator==(const InstanceMeta&, const InstanceMeta&) = default;
};

// n agents by m items matrix of nonnegative integer costs. Immutable once
// built; construct through validate_instance or Instance::from_matrix.
class Instance {
 public:
  static Instance from_matrix(CostMatrix costs, InstanceMeta meta = {});

  std::size_t agents() const { return agents_; }
  std::size_t items() const { return items_; }

  Cost cost(std::size_t agent, std::size_t item) const {
    return costs_[agent * items_ + item];
  }
  std::span<const Cost> row(std::size_t agent) const {
    return {costs_.data() + agent * items_, items_};
  }
  Cost total(std::size_t agent) const;

  CostMatrix matrix() const;
  const InstanceMeta& meta() const { return meta_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  friend Instance validate_instance(const CostMatrix& raw);
  Instance() = default;

  std::size_t agents_ = 0;
  std::size_t items_ = 0;
  std::vector<Cost> costs_;  // row-major
  InstanceMeta meta_;
};

// Checks rectangularity, non-emptiness and nonnegativity; throws
// ValidationError listing all problems.
Instance validate_instance(const CostMatrix& raw);

// Per-agent rankings, each a permutation of the items listed from the most
// costly (least preferred) to the least costly (most preferred).
class OrdinalProfile {
 public:
  static OrdinalProfile from_rankings(std::vector<std::vector<std::size_t>> rankings);

  std::size_t agents() const { return rankings_.size(); }
  std::size_t items() const { return items_; }

  const std::vector<std::size_t>& ranking(std::size_t agent) const {
    return rankings_[agent];
  }
  // Position of item in agent's ranking; 0 is the least preferred.
  std::size_t position(std::size_t agent, std::size_t item) const {
    return positions_[agent][item];
  }

  // Copy with one agent's ranking replaced; used for misreports.
  OrdinalProfile with_ranking(std::size_t agent,
                              std::vector<std::size_t> ranking) const;

  friend bool operator==(const OrdinalProfile& a, const OrdinalProfile& b) {
    return a.rankings_ == b.rankings_;
  }

 private:
  OrdinalProfile() = default;

  std::size_t items_ = 0;
  std::vector<std::vector<std::size_t>> rankings_;
  std::vector<std::vector<std::size_t>> positions_;
};

// Sorts each agent's items by descending cost, ties by ascending item index.
OrdinalProfile ordinal_of(const Instance& inst);

// True when the row, read in ranking order, is non-increasing.
bool consistent_with(std::span<const Cost> row,
                     std::span<const std::size_t> ranking);

// A partition of {0..m-1} into one bundle per agent.
class Allocation {
 public:
  // Throws Error(kInfeasibleAllocation) unless the bundles partition
  // {0..items-1}.
  static Allocation from_bundles(std::vector<ItemSet> bundles, std::size_t items);
  // owner[j] is the agent receiving item j.
  static Allocation from_owners(std::span<const std::size_t> owner,
                                std::size_t agents);

  std::size_t agents() const { return bundles_.size(); }
  std::size_t items() const { return owner_.size(); }
  const ItemSet& bundle(std::size_t agent) const { return bundles_[agent]; }
  const std::vector<ItemSet>& bundles() const { return bundles_; }
  std::size_t owner(std::size_t item) const { return owner_[item]; }
  const std::vector<std::size_t>& owners() const { return owner_; }

  friend bool operator==(const Allocation& a, const Allocation& b) {
    return a.bundles_ == b.bundles_;
  }

 private:
  Allocation() = default;

  std::vector<ItemSet> bundles_;
  std::vector<std::size_t> owner_;
};

// Additive cost c_i(S). Throws std::out_of_range for an item index >= m.
Cost bundle_cost(const Instance& inst, std::size_t agent,
                 std::span<const std::size_t> bundle);

// Every row non-increasing in item index.
bool is_ido(const Instance& inst);

// An instance whose rows are all non-increasing: item 0 is the most costly
// item for everyone.
class IdoInstance {
 public:
  // Throws Error(kValidation) when some row increases.
  explicit IdoInstance(Instance inst);

  const Instance& instance() const { return inst_; }
  std::size_t agents() const { return inst_.agents(); }
  std::size_t items() const { return inst_.items(); }

 private:
  Instance inst_;
};

}  // namespace chorefair
