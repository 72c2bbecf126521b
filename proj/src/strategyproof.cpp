#include "chorefair/strategyproof.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "chorefair/rng.hpp"

namespace chorefair {

namespace {

// Doubles beyond this are clamped before conversion to an integer quota.
constexpr double kQuotaCap = 4.0e18;

std::size_t parse_count(std::string_view token, std::string_view what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorKind::kValidation,
                "bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

// One item for each of the last m agents (agent n picks first).
PickSchedule trivial_schedule(std::size_t agents, std::size_t items) {
  std::vector<std::size_t> quotas(agents, 0);
  for (std::size_t k = 0; k < items; ++k) quotas[agents - 1 - k] = 1;
  return PickSchedule::from_quotas(std::move(quotas), items);
}

}  // namespace

PickSchedule PickSchedule::from_quotas(std::vector<std::size_t> quotas, std::size_t items) {
  if (quotas.empty()) throw Error(ErrorKind::kValidation, "schedule needs at least one agent");
  const std::size_t total = std::accumulate(quotas.begin(), quotas.end(), std::size_t{0});
  if (total != items) {
    throw Error(ErrorKind::kValidation, "quotas sum to " + std::to_string(total) +
                                            " but there are " + std::to_string(items) + " items");
  }
  PickSchedule s;
  s.quotas_ = std::move(quotas);
  s.items_ = items;
  return s;
}

LogScheduleTerms log_schedule_terms(std::size_t agents, std::size_t items) {
  if (agents < 2) throw Error(ErrorKind::kValidation, "log schedule needs at least two agents");
  if (items <= agents) {
    throw Error(ErrorKind::kValidation, "log schedule needs more items than agents");
  }
  const double n = static_cast<double>(agents);
  const double k = 2.0 * std::log2(static_cast<double>(items) / n);
  const std::size_t half = agents / 2;

  std::vector<std::size_t> quotas(agents, 0);
  std::vector<std::size_t> untruncated(agents, 0);
  std::vector<bool> truncated(agents, false);
  std::size_t remaining = items;
  for (std::size_t i = 0; i < agents; ++i) {
    std::size_t formula = 2;
    if (i >= half) {
      const double raw = std::ceil(k * std::pow(1.0 + k / n, static_cast<double>(i - half)));
      formula = static_cast<std::size_t>(std::min(raw, kQuotaCap));
    }
    untruncated[i] = formula;
    truncated[i] = remaining < formula;
    quotas[i] = std::min(remaining, formula);
    remaining -= quotas[i];
  }
  // The formula undershoots m when K/n is large; agent n, who picks first,
  // takes what is left.
  quotas.back() += remaining;

  LogScheduleTerms terms{k, std::move(untruncated), std::move(truncated), remaining,
                         PickSchedule::from_quotas(std::move(quotas), items)};
  return terms;
}

PickSchedule log_schedule(std::size_t agents, std::size_t items) {
  return log_schedule_terms(agents, items).schedule;
}

std::optional<PickSchedule> constant_ratio_schedule(std::size_t agents, std::size_t items,
                                                    std::size_t ratio) {
  if (ratio < 1) throw Error(ErrorKind::kValidation, "target ratio must be at least 1");
  if (agents == 0) throw Error(ErrorKind::kValidation, "schedule needs at least one agent");
  if (constant_ratio_capacity(agents, ratio) < items) return std::nullopt;
  std::vector<std::size_t> quotas(agents, 0);
  std::size_t prefix = 0;
  for (std::size_t i = 0; i < agents; ++i) {
    const std::size_t formula = ratio * (prefix / agents + 1);
    quotas[i] = std::min(items - prefix, formula);
    prefix += quotas[i];
  }
  return PickSchedule::from_quotas(std::move(quotas), items);
}

std::uint64_t constant_ratio_capacity(std::uint64_t agents, std::uint64_t ratio) {
  if (ratio < 1) throw Error(ErrorKind::kValidation, "target ratio must be at least 1");
  if (agents == 0) return 0;
  // Within level L (prefix in [L n, (L+1) n)) every quota equals r (L+1).
  std::uint64_t prefix = 0;
  std::uint64_t left = agents;
  while (left > 0) {
    const std::uint64_t level = prefix / agents;
    const std::uint64_t quota = ratio * (level + 1);
    const std::uint64_t span = (level + 1) * agents - prefix;
    const std::uint64_t count = std::min(left, (span + quota - 1) / quota);
    prefix += count * quota;
    left -= count;
  }
  return prefix;
}

Fraction schedule_ratio_bound(const PickSchedule& schedule) {
  const auto n = static_cast<std::int64_t>(schedule.agents());
  Fraction best(0);
  std::int64_t prefix = 0;
  for (std::size_t a : schedule.quotas()) {
    const std::int64_t blocks = std::max<std::int64_t>(1, (prefix + n - 1) / n);
    best = std::max(best, Fraction(static_cast<std::int64_t>(a), blocks));
    prefix += static_cast<std::int64_t>(a);
  }
  return best;
}

PickSchedule parse_schedule(std::string_view text, std::size_t agents, std::size_t items) {
  if (agents == 0) throw Error(ErrorKind::kValidation, "schedule needs at least one agent");
  if (text == "log") {
    if (items <= agents || agents < 2) return trivial_schedule(agents, items);
    return log_schedule(agents, items);
  }
  if (text.starts_with("const:")) {
    const std::size_t r = parse_count(text.substr(6), "target ratio");
    auto schedule = constant_ratio_schedule(agents, items, r);
    if (!schedule) {
      throw Error(ErrorKind::kValidation, "constant-ratio schedule with r=" + std::to_string(r) +
                                              " cannot cover " + std::to_string(items) + " items");
    }
    return *schedule;
  }
  if (text.starts_with("explicit:")) {
    std::vector<std::size_t> quotas;
    std::string_view rest = text.substr(9);
    while (true) {
      const std::size_t comma = rest.find(',');
      quotas.push_back(parse_count(rest.substr(0, comma), "quota"));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (quotas.size() != agents) {
      throw Error(ErrorKind::kDimensionMismatch, "explicit schedule needs one quota per agent");
    }
    return PickSchedule::from_quotas(std::move(quotas), items);
  }
  throw Error(ErrorKind::kUnknownAlgorithm, "unknown schedule '" + std::string(text) + "'");
}

Allocation consecutive_pick(const OrdinalProfile& profile, const PickSchedule& schedule) {
  if (schedule.agents() != profile.agents() || schedule.items() != profile.items()) {
    throw Error(ErrorKind::kDimensionMismatch, "schedule does not match the profile");
  }
  const std::size_t m = profile.items();
  std::vector<bool> taken(m, false);
  std::vector<std::size_t> owner(m, 0);
  for (std::size_t i = profile.agents(); i-- > 0;) {
    const auto& ranking = profile.ranking(i);
    std::size_t k = m;
    for (std::size_t picks = schedule.quotas()[i]; picks > 0; --picks) {
      while (taken[ranking[k - 1]]) --k;
      taken[ranking[k - 1]] = true;
      owner[ranking[k - 1]] = i;
    }
  }
  return Allocation::from_owners(owner, profile.agents());
}

std::size_t decline_set_size(std::size_t agents, std::size_t items) {
  if (agents <= 1) return 0;
  const double n = static_cast<double>(agents);
  const auto k = static_cast<std::size_t>(std::floor(n * std::sqrt(std::log2(n))));
  return std::min(k, items);
}

std::vector<ItemSet> decline_sets(const OrdinalProfile& profile) {
  const std::size_t k = decline_set_size(profile.agents(), profile.items());
  std::vector<ItemSet> sets(profile.agents());
  for (std::size_t i = 0; i < profile.agents(); ++i) {
    const auto& ranking = profile.ranking(i);
    sets[i].assign(ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(sets[i].begin(), sets[i].end());
  }
  return sets;
}

RandomOutcome random_decline(const OrdinalProfile& profile, std::uint64_t seed) {
  const std::size_t n = profile.agents();
  const std::size_t m = profile.items();
  if (n < 2) throw Error(ErrorKind::kValidation, "random decline needs at least two agents");
  const std::size_t k = decline_set_size(n, m);
  Rng rng(seed);

  std::vector<std::size_t> owner(m);
  for (std::size_t j = 0; j < m; ++j) owner[j] = rng.uniform(n);

  ItemSet reclaimed;
  for (std::size_t j = 0; j < m; ++j) {
    if (profile.position(owner[j], j) < k) reclaimed.push_back(j);
  }

  std::vector<std::size_t> pool = reclaimed;
  rng.shuffle(pool);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  std::vector<std::size_t> part(n, pool.size() / n);
  for (std::size_t r = 0; r < pool.size() % n; ++r) ++part[order[r]];
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < part[i]; ++c) owner[pool[next++]] = i;
  }
  return RandomOutcome{Allocation::from_owners(owner, n), std::move(reclaimed), seed};
}

Fraction random_decline_expected_cost(const Instance& truth, const OrdinalProfile& reported,
                                      std::size_t agent) {
  if (truth.agents() != reported.agents() || truth.items() != reported.items()) {
    throw Error(ErrorKind::kDimensionMismatch, "reported profile does not match the instance");
  }
  const std::size_t n = truth.agents();
  const std::size_t m = truth.items();
  const std::size_t k = decline_set_size(n, m);
  auto row = truth.row(agent);
  // Numerator over n^2: n * (kept in phase one) + sum_j c_j b_j.
  std::int64_t kept = 0;
  std::int64_t redealt = 0;
  for (std::size_t j = 0; j < m; ++j) {
    std::int64_t labels = 0;
    for (std::size_t i = 0; i < n; ++i) labels += reported.position(i, j) < k ? 1 : 0;
    if (reported.position(agent, j) >= k) kept += row[j];
    redealt += row[j] * labels;
  }
  const auto nn = static_cast<std::int64_t>(n);
  return Fraction(nn * kept + redealt, nn * nn);
}

}  // namespace chorefair
