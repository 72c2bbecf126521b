#pragma once

// Harnesses that check the guarantees: manipulation search, worst-case ratio
// search over consistent cardinal costs, and lower-bound certificates for the
// two- and three-agent hard families.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chorefair/core.hpp"
#include "chorefair/fraction.hpp"
#include "chorefair/mms.hpp"

namespace chorefair {

using DeterministicMechanism = std::function<Allocation(const OrdinalProfile&)>;
using ExpectedCostEvaluator = std::function<Fraction(
    const Instance& truth, const OrdinalProfile& reported, std::size_t agent)>;

// A mechanism whose per-agent true cost can be evaluated exactly: either a
// deterministic ordinal rule, or a randomized one with a closed-form
// expected-cost evaluator.
class Mechanism {
 public:
  static Mechanism deterministic(std::string name, DeterministicMechanism rule);
  static Mechanism in_expectation(std::string name, ExpectedCostEvaluator evaluator);

  const std::string& name() const { return name_; }
  bool is_deterministic() const { return static_cast<bool>(rule_); }

  // True (expected) cost of `agent` when `reported` is submitted.
  Fraction agent_cost(const Instance& truth, const OrdinalProfile& reported,
                      std::size_t agent) const;

 private:
  std::string name_;
  DeterministicMechanism rule_;
  ExpectedCostEvaluator evaluator_;
};

// Named mechanisms:
//   round-robin       agents pick their favourite remaining item in turn 1,2,..,n,1,..
//   sesqui-rr         the SesquiRR ordinal pipeline
//   consecutive-pick  ConsecutivePick with the given schedule string
//   random-decline    RandomDecline, evaluated in expectation
//   dictatorship      agent 1 takes everything regardless of reports
// Throws Error(kUnknownAlgorithm) for any other name.
Mechanism make_mechanism(std::string_view name, std::size_t agents, std::size_t items,
                         std::string_view schedule_text = "log");

struct Manipulation {
  std::vector<std::size_t> ranking;  // the profitable misreport
  Fraction truthful_cost;
  Fraction manipulated_cost;
};

struct ManipulationSearch {
  std::optional<Manipulation> best;
  std::uint64_t evaluated = 0;
  bool exhaustive = false;
};

// Looks for a report that strictly lowers `agent`'s true cost below the
// truthful outcome (truthful ranking = ordinal_of(truth)). Exhaustive over all
// m! rankings when that fits in `budget`; otherwise samples `budget` random
// rankings from `seed`. Returns the cheapest misreport found, first in
// lexicographic order among equals.
ManipulationSearch manipulation_search(const Instance& truth, const Mechanism& mechanism,
                                       std::size_t agent, std::uint64_t budget,
                                       std::uint64_t seed = 0);

struct WorstRatio {
  Fraction ratio;
  std::size_t agent = 0;
  // Instance on the grid, consistent with the profile, attaining `ratio`.
  Instance witness;
  std::uint64_t rows_examined = 0;
};

// Maximizes the MMS ratio of a fixed allocation over all cost matrices with
// entries from `grid` whose rows agree with the profile's rankings. An
// agent's ratio only depends on her own row, so the maximum is taken row by
// row. Throws Error(kBudgetExceeded) when the number of rows exceeds budget.
WorstRatio worst_ratio_search(const OrdinalProfile& profile, const Allocation& alloc,
                              std::span<const Cost> grid,
                              std::uint64_t budget = 10'000'000,
                              const MmsOptions& options = {});

// Adversarial cost rows for an identical-ranking instance, with their exact
// maximin shares for a fixed agent count.
struct AdversarialFamily {
  std::size_t agents = 0;
  std::vector<std::vector<Cost>> rows;
  std::vector<Cost> shares;
};

AdversarialFamily theorem2_family_n2();
// Rows (2,2,1,1,0..), (m-1,2,..,2), (m-2,m-2,1,..,1), ((m-3)/2 x4, 1,..,1).
AdversarialFamily theorem2_family_n3(std::size_t items);

// max over agents and family rows of c(X_i)/MMS when item j goes to owner[j].
Fraction family_max_ratio(const AdversarialFamily& family,
                          std::span<const std::size_t> owner);

struct Certificate {
  // min over all allocations of the family's max ratio.
  Fraction bound;
  // An allocation attaining the bound and the family instance that realizes it.
  Allocation best_allocation;
  Instance witness;
  std::uint64_t enumerated = 0;
  double wall_seconds = 0.0;

  // Timing is the only field that varies between runs.
  nlohmann::json to_json(bool include_timing = true) const;
};

// Enumerates every owner vector of `family` over agents^m allocations.
Certificate certify_family(const AdversarialFamily& family, std::uint64_t budget);

Certificate lower_bound_certify_n2();
// m odd, m >= 9 (smaller odd m are accepted for experiments but not certified
// to exceed 4/3). Throws Error(kBudgetExceeded) when 3^m > budget.
Certificate lower_bound_certify_n3(std::size_t items, std::uint64_t budget = 14'348'907);

// For a block of k costs sorted non-increasingly, receiving the items at
// one-based positions `position` and k with position >= k/2 costs at most
// (2/k) of the block. Throws std::invalid_argument on invalid input.
bool lemma3_check(std::span<const Cost> block, std::size_t position);

}  // namespace chorefair
