#include "chorefair/mms.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_set>

namespace chorefair {

namespace {

// Depth-first bin packing with items in descending order. Failed states are
// memoized on (next item, multiset of bin loads).
class BinPacker {
 public:
  BinPacker(std::span<const Cost> sorted_desc, std::size_t bins, Cost capacity)
      : items_(sorted_desc), capacity_(capacity), loads_(bins, 0) {
    suffix_.assign(items_.size() + 1, 0);
    for (std::size_t k = items_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] + items_[k];
  }

  bool solve() { return place(0); }

 private:
  std::string key(std::size_t index) const {
    std::vector<Cost> sorted = loads_;
    std::sort(sorted.begin(), sorted.end());
    std::string out(reinterpret_cast<const char*>(&index), sizeof(index));
    out.append(reinterpret_cast<const char*>(sorted.data()), sorted.size() * sizeof(Cost));
    return out;
  }

  bool place(std::size_t index) {
    if (index == items_.size()) return true;
    // Capacity left in bins that can still take the smallest remaining item.
    const Cost smallest = items_.back();
    Cost usable = 0;
    for (Cost load : loads_) {
      if (capacity_ - load >= smallest) usable += capacity_ - load;
    }
    if (usable < suffix_[index]) return false;

    std::string state = key(index);
    if (failed_.count(state) != 0) return false;

    const Cost c = items_[index];
    std::vector<Cost> tried;
    for (std::size_t b = 0; b < loads_.size(); ++b) {
      const Cost load = loads_[b];
      if (load + c > capacity_) continue;
      if (std::find(tried.begin(), tried.end(), load) != tried.end()) continue;
      tried.push_back(load);
      loads_[b] += c;
      const bool ok = place(index + 1);
      loads_[b] -= c;
      if (ok) return true;
      // An exact fit dominates every other placement of this item.
      if (load + c == capacity_) break;
    }
    failed_.insert(std::move(state));
    return false;
  }

  std::span<const Cost> items_;
  Cost capacity_;
  std::vector<Cost> loads_;
  std::vector<Cost> suffix_;
  std::unordered_set<std::string> failed_;
};

Cost lpt_makespan(std::span<const Cost> sorted_desc, std::size_t bins) {
  std::vector<Cost> loads(bins, 0);
  for (Cost c : sorted_desc) *std::min_element(loads.begin(), loads.end()) += c;
  return *std::max_element(loads.begin(), loads.end());
}

// Sorted distinct subset sums lying in [lo, hi].
std::vector<Cost> subset_sums_between(std::span<const Cost> costs, Cost lo, Cost hi) {
  std::vector<Cost> sums{0};
  std::vector<Cost> shifted;
  std::vector<Cost> merged;
  for (Cost c : costs) {
    if (c == 0) continue;
    shifted.clear();
    for (Cost s : sums) {
      if (s + c > hi) break;
      shifted.push_back(s + c);
    }
    merged.clear();
    std::set_union(sums.begin(), sums.end(), shifted.begin(), shifted.end(),
                   std::back_inserter(merged));
    sums.swap(merged);
  }
  auto first = std::lower_bound(sums.begin(), sums.end(), lo);
  return {first, sums.end()};
}

}  // namespace

bool fits_in_bins(std::span<const Cost> costs, std::size_t bins, Cost capacity) {
  if (costs.empty()) return true;
  std::vector<Cost> sorted(costs.begin(), costs.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (sorted.front() > capacity) return false;
  const Cost total = std::accumulate(sorted.begin(), sorted.end(), Cost{0});
  if (total > capacity * static_cast<Cost>(bins)) return false;
  return BinPacker(sorted, bins, capacity).solve();
}

Cost minimum_makespan(std::span<const Cost> costs, std::size_t bins, const MmsOptions& options) {
  if (bins == 0) throw Error(ErrorKind::kValidation, "minimum_makespan: no bins");
  if (costs.size() > options.max_exact_items) {
    throw Error(ErrorKind::kInstanceTooLarge,
                "exact maximin share limited to " + std::to_string(options.max_exact_items) +
                    " items, got " + std::to_string(costs.size()));
  }
  if (costs.empty()) return 0;
  std::vector<Cost> sorted(costs.begin(), costs.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  const Cost total = std::accumulate(sorted.begin(), sorted.end(), Cost{0});
  const auto n = static_cast<Cost>(bins);
  const Cost lower = std::max(sorted.front(), (total + n - 1) / n);
  const Cost upper = lpt_makespan(sorted, bins);
  if (lower >= upper) return upper;

  // The optimum is the load of some bundle, hence a subset sum in [lower, upper].
  const std::vector<Cost> candidates = subset_sums_between(sorted, lower, upper);
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;  // upper itself is achievable
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (BinPacker(sorted, bins, candidates[mid]).solve()) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

Cost mms_exact(const Instance& inst, std::size_t agent, const MmsOptions& options) {
  return minimum_makespan(inst.row(agent), inst.agents(), options);
}

MmsValues mms_all(const Instance& inst, const MmsOptions& options) {
  MmsValues out;
  out.values.reserve(inst.agents());
  for (std::size_t i = 0; i < inst.agents(); ++i) out.values.push_back(mms_exact(inst, i, options));
  return out;
}

Cost MmsLowerBounds::combined() const {
  // ceil(average) for a nonnegative fraction.
  const Cost avg_ceil = (average.num() + average.den() - 1) / average.den();
  return std::max(avg_ceil, max_item);
}

MmsLowerBounds lemma1_bounds(const Instance& inst, std::size_t agent) {
  auto row = inst.row(agent);
  MmsLowerBounds bounds;
  bounds.average = Fraction(inst.total(agent), static_cast<std::int64_t>(inst.agents()));
  bounds.max_item = *std::max_element(row.begin(), row.end());
  return bounds;
}

Fraction cost_ratio(Cost cost, Cost mms) {
  if (mms == 0) return cost == 0 ? Fraction(1) : Fraction::infinity();
  return Fraction(cost, mms);
}

RatioReport ratio_against(const Instance& inst, const Allocation& alloc,
                          std::span<const Cost> shares) {
  if (alloc.agents() != inst.agents() || alloc.items() != inst.items() ||
      shares.size() != inst.agents()) {
    throw Error(ErrorKind::kDimensionMismatch, "allocation does not match instance");
  }
  RatioReport report;
  report.per_agent.reserve(inst.agents());
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    report.per_agent.push_back(cost_ratio(bundle_cost(inst, i, alloc.bundle(i)), shares[i]));
  }
  report.worst = *std::max_element(report.per_agent.begin(), report.per_agent.end());
  return report;
}

RatioReport ratio_of(const Instance& inst, const Allocation& alloc, const MmsOptions& options) {
  const MmsValues shares = mms_all(inst, options);
  return ratio_against(inst, alloc, shares.values);
}

nlohmann::json to_json(const Fraction& f) {
  return nlohmann::json{{"num", f.is_infinite() ? 1 : f.num()}, {"den", f.den()}};
}

nlohmann::json to_json(const RatioReport& report) {
  nlohmann::json per_agent = nlohmann::json::array();
  for (const auto& f : report.per_agent) per_agent.push_back(to_json(f));
  return nlohmann::json{{"per_agent", per_agent}, {"worst", to_json(report.worst)}};
}

}  // namespace chorefair
