#pragma once

// Strategyproof mechanisms: ConsecutivePick (serial dictatorship with quotas)
// and the randomized RandomDecline.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "chorefair/core.hpp"
#include "chorefair/fraction.hpp"

namespace chorefair {

// Quotas a_1..a_n summing to m. Agent n picks first, agent 1 last. Quotas
// may be zero when truncation exhausts the items early.
class PickSchedule {
 public:
  // Throws Error(kValidation) when the quotas do not sum to `items` or the
  // list is empty.
  static PickSchedule from_quotas(std::vector<std::size_t> quotas, std::size_t items);

  std::size_t agents() const { return quotas_.size(); }
  std::size_t items() const { return items_; }
  const std::vector<std::size_t>& quotas() const { return quotas_; }

  friend bool operator==(const PickSchedule&, const PickSchedule&) = default;

 private:
  PickSchedule() = default;

  std::vector<std::size_t> quotas_;
  std::size_t items_ = 0;
};

// Everything computed while building the logarithmic schedule.
struct LogScheduleTerms {
  // K = 2 log2(m/n).
  double k = 0.0;
  // Quota before truncation: 2 for i <= floor(n/2), else ceil(K (1+K/n)^(i - floor(n/2) - 1)).
  std::vector<std::size_t> untruncated;
  // Whether the remaining-items term of the min was binding.
  std::vector<bool> truncated;
  // Items the formula failed to cover. Nonzero only when K/n is large
  // (few agents, many items per agent); agent n absorbs the shortfall.
  std::size_t shortfall = 0;
  PickSchedule schedule;
};

// Throws Error(kValidation) unless n >= 2 and m > n.
LogScheduleTerms log_schedule_terms(std::size_t agents, std::size_t items);
PickSchedule log_schedule(std::size_t agents, std::size_t items);

// Quotas a_i = r (floor(prefix/n) + 1) for target ratio r, truncated to sum
// m; std::nullopt when their total cannot reach m. Throws for r < 1.
std::optional<PickSchedule> constant_ratio_schedule(std::size_t agents,
                                                    std::size_t items,
                                                    std::size_t ratio);
// Total of the untruncated constant-ratio quotas. Computed level by level, so
// it is cheap for very large n.
std::uint64_t constant_ratio_capacity(std::uint64_t agents, std::uint64_t ratio);

// Upper bound on ConsecutivePick's MMS ratio implied by the quotas alone:
// max_i a_i / max(1, ceil(prefix_i / n)) where prefix_i = a_1 + ... + a_{i-1}.
Fraction schedule_ratio_bound(const PickSchedule& schedule);

// "log", "const:<r>" or "explicit:<a1,...,an>".
PickSchedule parse_schedule(std::string_view text, std::size_t agents, std::size_t items);

// For i = n down to 1, agent i takes her a_i most preferred remaining items.
Allocation consecutive_pick(const OrdinalProfile& profile, const PickSchedule& schedule);

// floor(n sqrt(log2 n)) capped at m; 0 for a single agent.
std::size_t decline_set_size(std::size_t agents, std::size_t items);

// M_i: the top decline_set_size items of each agent's reported ranking.
std::vector<ItemSet> decline_sets(const OrdinalProfile& profile);

struct RandomOutcome {
  Allocation allocation;
  // M_b: every item its phase-one receiver had labelled large.
  ItemSet reclaimed;
  std::uint64_t seed = 0;
};

// Phase 1 gives every item to a uniformly random agent; each agent returns the
// items she labelled large. Phase 2 shuffles the returned pool and deals it in
// n parts whose sizes differ by at most one, the larger parts going to a
// uniformly random subset of agents. Requires n >= 2.
RandomOutcome random_decline(const OrdinalProfile& profile, std::uint64_t seed);

// Exact expected true cost of `agent` under random_decline when the profile
// `reported` is submitted:
//   (1/n) sum_{j not in M_i} c_j + (1/n^2) sum_j c_j b_j
// where b_j counts the agents (including i) whose decline set contains j.
Fraction random_decline_expected_cost(const Instance& truth,
                                      const OrdinalProfile& reported,
                                      std::size_t agent);

}  // namespace chorefair
