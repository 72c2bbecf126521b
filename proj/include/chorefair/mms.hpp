#pragma once

// Exact maximin shares for chores.
//
// For additive costs, agent i's maximin share is the optimal makespan of
// scheduling her item costs on n identical machines. The exact routine does a
// binary search over the distinct achievable subset sums between the
// max(average, largest item) lower bound and the LPT upper bound, deciding each
// threshold with a memoized depth-first bin-packing search.

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "chorefair/core.hpp"
#include "chorefair/fraction.hpp"

namespace chorefair {

inline constexpr std::size_t kDefaultExactItemLimit = 20;

struct MmsOptions {
  // Largest item count the exact search accepts.
  std::size_t max_exact_items = kDefaultExactItemLimit;
};

// Optimal makespan of the given costs on `bins` identical machines.
// Throws Error(kInstanceTooLarge) when costs.size() exceeds the limit.
Cost minimum_makespan(std::span<const Cost> costs, std::size_t bins,
                      const MmsOptions& options = {});

// Whether the costs pack into `bins` bins of the given capacity.
bool fits_in_bins(std::span<const Cost> costs, std::size_t bins, Cost capacity);

Cost mms_exact(const Instance& inst, std::size_t agent,
               const MmsOptions& options = {});

struct MmsValues {
  std::vector<Cost> values;
};

MmsValues mms_all(const Instance& inst, const MmsOptions& options = {});

// The two certified lower bounds on MMS_i: the average c_i(M)/n and the
// largest single cost.
struct MmsLowerBounds {
  Fraction average;
  Cost max_item = 0;

  // Best integer lower bound implied by both (costs are integral, so the
  // average may be rounded up).
  Cost combined() const;
};

MmsLowerBounds lemma1_bounds(const Instance& inst, std::size_t agent);

// c/mms with the zero-share conventions: 0/0 reads as 1, positive/0 as +inf.
Fraction cost_ratio(Cost cost, Cost mms);

struct RatioReport {
  std::vector<Fraction> per_agent;
  Fraction worst;
};

RatioReport ratio_of(const Instance& inst, const Allocation& alloc,
                     const MmsOptions& options = {});
// Same, against precomputed (or bounding) shares.
RatioReport ratio_against(const Instance& inst, const Allocation& alloc,
                          std::span<const Cost> shares);

nlohmann::json to_json(const Fraction& f);
nlohmann::json to_json(const RatioReport& report);

}  // namespace chorefair
