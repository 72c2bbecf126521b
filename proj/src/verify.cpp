#include "chorefair/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "chorefair/ido.hpp"
#include "chorefair/instances.hpp"
#include "chorefair/rng.hpp"
#include "chorefair/strategyproof.hpp"

namespace chorefair {

namespace {

// a^b, saturating at limit + 1.
std::uint64_t capped_power(std::uint64_t base, std::size_t exp, std::uint64_t limit) {
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (out > limit / std::max<std::uint64_t>(base, 1)) return limit + 1;
    out *= base;
  }
  return out;
}

std::uint64_t capped_factorial(std::size_t m, std::uint64_t limit) {
  std::uint64_t out = 1;
  for (std::size_t k = 2; k <= m; ++k) {
    if (out > limit / k) return limit + 1;
    out *= k;
  }
  return out;
}

// Number of non-increasing length-m sequences over g levels, C(g+m-1, m),
// saturating at limit + 1.
std::uint64_t capped_multisets(std::size_t g, std::size_t m, std::uint64_t limit) {
  unsigned __int128 out = 1;
  for (std::size_t k = 1; k <= m; ++k) {
    out = out * (g - 1 + k) / k;
    if (out > limit) return limit + 1;
  }
  return static_cast<std::uint64_t>(out);
}

}  // namespace

Mechanism Mechanism::deterministic(std::string name, DeterministicMechanism rule) {
  Mechanism m;
  m.name_ = std::move(name);
  m.rule_ = std::move(rule);
  return m;
}

Mechanism Mechanism::in_expectation(std::string name, ExpectedCostEvaluator evaluator) {
  Mechanism m;
  m.name_ = std::move(name);
  m.evaluator_ = std::move(evaluator);
  return m;
}

Fraction Mechanism::agent_cost(const Instance& truth, const OrdinalProfile& reported,
                               std::size_t agent) const {
  if (rule_) {
    const Allocation alloc = rule_(reported);
    return Fraction(bundle_cost(truth, agent, alloc.bundle(agent)));
  }
  return evaluator_(truth, reported, agent);
}

Mechanism make_mechanism(std::string_view name, std::size_t agents, std::size_t items,
                         std::string_view schedule_text) {
  if (name == "round-robin") {
    return Mechanism::deterministic("round-robin", [](const OrdinalProfile& p) {
      std::vector<std::size_t> turns(p.items());
      for (std::size_t t = 0; t < turns.size(); ++t) turns[t] = t % p.agents();
      return pick_in_turns(p, turns);
    });
  }
  if (name == "sesqui-rr") {
    return Mechanism::deterministic("sesqui-rr", [](const OrdinalProfile& p) {
      return run_ordinal(p, Sequencer::sesqui_round_robin());
    });
  }
  if (name == "consecutive-pick") {
    PickSchedule schedule = parse_schedule(schedule_text, agents, items);
    return Mechanism::deterministic("consecutive-pick", [schedule](const OrdinalProfile& p) {
      return consecutive_pick(p, schedule);
    });
  }
  if (name == "random-decline") {
    return Mechanism::in_expectation("random-decline", random_decline_expected_cost);
  }
  if (name == "dictatorship") {
    return Mechanism::deterministic("dictatorship", [](const OrdinalProfile& p) {
      std::vector<std::size_t> owner(p.items(), 0);
      return Allocation::from_owners(owner, p.agents());
    });
  }
  throw Error(ErrorKind::kUnknownAlgorithm, "unknown mechanism '" + std::string(name) + "'");
}

ManipulationSearch manipulation_search(const Instance& truth, const Mechanism& mechanism,
                                       std::size_t agent, std::uint64_t budget,
                                       std::uint64_t seed) {
  const OrdinalProfile truthful = ordinal_of(truth);
  const Fraction honest = mechanism.agent_cost(truth, truthful, agent);
  const std::size_t m = truth.items();

  ManipulationSearch out;
  auto consider = [&](const std::vector<std::size_t>& ranking) {
    ++out.evaluated;
    const Fraction cost = mechanism.agent_cost(truth, truthful.with_ranking(agent, ranking), agent);
    if (cost >= honest) return;
    if (!out.best || cost < out.best->manipulated_cost ||
        (cost == out.best->manipulated_cost && ranking < out.best->ranking)) {
      out.best = Manipulation{ranking, honest, cost};
    }
  };

  std::vector<std::size_t> ranking(m);
  std::iota(ranking.begin(), ranking.end(), std::size_t{0});
  if (capped_factorial(m, budget) <= budget) {
    out.exhaustive = true;
    do {
      consider(ranking);
    } while (std::next_permutation(ranking.begin(), ranking.end()));
  } else {
    Rng rng(seed);
    for (std::uint64_t t = 0; t < budget; ++t) {
      rng.shuffle(ranking);
      consider(ranking);
    }
  }
  return out;
}

WorstRatio worst_ratio_search(const OrdinalProfile& profile, const Allocation& alloc,
                              std::span<const Cost> grid, std::uint64_t budget,
                              const MmsOptions& options) {
  const std::size_t n = profile.agents();
  const std::size_t m = profile.items();
  if (alloc.agents() != n || alloc.items() != m) {
    throw Error(ErrorKind::kDimensionMismatch, "allocation does not match the profile");
  }
  std::vector<Cost> levels(grid.begin(), grid.end());
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.empty() || levels.back() < 0) {
    throw Error(ErrorKind::kValidation, "grid must be a nonempty set of nonnegative costs");
  }
  const std::uint64_t per_agent = capped_multisets(levels.size(), m, budget);
  if (per_agent > budget || per_agent * n > budget) {
    throw Error(ErrorKind::kBudgetExceeded, "grid search exceeds budget of " +
                                                std::to_string(budget) + " rows");
  }

  // Every descending row over the grid, in lexicographic order of level
  // indices; shared by all agents since only the ranking differs.
  std::vector<std::vector<Cost>> rows;
  rows.reserve(per_agent);
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    std::vector<Cost> row(m);
    for (std::size_t k = 0; k < m; ++k) row[k] = levels[idx[k]];
    rows.push_back(std::move(row));
    std::size_t k = m;
    while (k > 0 && idx[k - 1] + 1 == levels.size()) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t l = k; l < m; ++l) idx[l] = idx[k - 1];
  }
  std::vector<Cost> shares(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) shares[r] = minimum_makespan(rows[r], n, options);

  Fraction best(-1);
  std::size_t best_agent = 0;
  std::size_t best_row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    // Positions in i's ranking that she holds.
    std::vector<std::size_t> held;
    for (std::size_t k = 0; k < m; ++k) {
      if (alloc.owner(profile.ranking(i)[k]) == i) held.push_back(k);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Cost cost = 0;
      for (std::size_t k : held) cost += rows[r][k];
      const Fraction ratio = cost_ratio(cost, shares[r]);
      if (ratio > best) {
        best = ratio;
        best_agent = i;
        best_row = r;
      }
    }
  }

  // Every agent gets the witness multiset laid out along her own ranking.
  CostMatrix witness(n, std::vector<Cost>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) witness[i][profile.ranking(i)[k]] = rows[best_row][k];
  }
  return WorstRatio{best, best_agent, Instance::from_matrix(std::move(witness)),
                    static_cast<std::uint64_t>(rows.size() * n)};
}

AdversarialFamily theorem2_family_n2() {
  return AdversarialFamily{2, {{3, 1, 1, 1}, {1, 1, 1, 1}}, {3, 2}};
}

AdversarialFamily theorem2_family_n3(std::size_t items) {
  if (items < 5 || items % 2 == 0) {
    throw Error(ErrorKind::kValidation, "three-agent family needs odd m >= 5");
  }
  const auto m = static_cast<Cost>(items);
  AdversarialFamily family;
  family.agents = 3;

  std::vector<Cost> base(items, 0);
  base[0] = base[1] = 2;
  base[2] = base[3] = 1;
  std::vector<Cost> c1(items, 2);
  c1[0] = m - 1;
  std::vector<Cost> c2(items, 1);
  c2[0] = c2[1] = m - 2;
  std::vector<Cost> c3(items, 1);
  for (std::size_t j = 0; j < 4; ++j) c3[j] = (m - 3) / 2;

  family.rows = {base, c1, c2, c3};
  family.shares = {2, m - 1, m - 2, m - 3};
  return family;
}

Fraction family_max_ratio(const AdversarialFamily& family, std::span<const std::size_t> owner) {
  Fraction worst(0);
  std::vector<Cost> load(family.agents);
  for (std::size_t r = 0; r < family.rows.size(); ++r) {
    std::fill(load.begin(), load.end(), 0);
    for (std::size_t j = 0; j < owner.size(); ++j) load[owner[j]] += family.rows[r][j];
    for (Cost c : load) worst = std::max(worst, cost_ratio(c, family.shares[r]));
  }
  return worst;
}

nlohmann::json Certificate::to_json(bool include_timing) const {
  nlohmann::json doc{{"bound", chorefair::to_json(bound)},
                     {"bound_str", bound.str()},
                     {"bound_decimal", bound.decimal()},
                     {"best_allocation", allocation_to_json(best_allocation)},
                     {"witness", instance_to_json(witness)},
                     {"enumerated", enumerated}};
  if (include_timing) doc["wall_seconds"] = wall_seconds;
  return doc;
}

Certificate certify_family(const AdversarialFamily& family, std::uint64_t budget) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = family.agents;
  const std::size_t m = family.rows.front().size();
  const std::uint64_t total = capped_power(n, m, budget);
  if (total > budget) {
    throw Error(ErrorKind::kBudgetExceeded, std::to_string(n) + "^" + std::to_string(m) +
                                                " allocations exceed budget " +
                                                std::to_string(budget));
  }

  // Odometer over owner vectors, item 0 least significant.
  std::vector<std::size_t> owner(m, 0);
  std::vector<std::size_t> best_owner;
  Fraction best = Fraction::infinity();
  std::uint64_t count = 0;
  while (true) {
    ++count;
    const Fraction ratio = family_max_ratio(family, owner);
    if (ratio < best) {
      best = ratio;
      best_owner = owner;
    }
    std::size_t j = 0;
    while (j < m && owner[j] + 1 == n) owner[j++] = 0;
    if (j == m) break;
    ++owner[j];
  }

  // The family row realizing the bound on the best allocation.
  std::size_t witness_row = 0;
  std::vector<Cost> load(n);
  for (std::size_t r = 0; r < family.rows.size(); ++r) {
    std::fill(load.begin(), load.end(), 0);
    for (std::size_t j = 0; j < m; ++j) load[best_owner[j]] += family.rows[r][j];
    const Cost top = *std::max_element(load.begin(), load.end());
    if (cost_ratio(top, family.shares[r]) == best) {
      witness_row = r;
      break;
    }
  }
  CostMatrix witness(n, family.rows[witness_row]);

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return Certificate{best, Allocation::from_owners(best_owner, n),
                     Instance::from_matrix(std::move(witness)), count, seconds};
}

Certificate lower_bound_certify_n2() {
  return certify_family(theorem2_family_n2(), 16);
}

Certificate lower_bound_certify_n3(std::size_t items, std::uint64_t budget) {
  return certify_family(theorem2_family_n3(items), budget);
}

bool lemma3_check(std::span<const Cost> block, std::size_t position) {
  const std::size_t k = block.size();
  if (k == 0) throw std::invalid_argument("lemma3_check: empty block");
  if (position < 1 || position > k || 2 * position < k) {
    throw std::invalid_argument("lemma3_check: position must satisfy k/2 <= x <= k");
  }
  if (!std::is_sorted(block.begin(), block.end(), std::greater<>())) {
    throw std::invalid_argument("lemma3_check: block must be non-increasing");
  }
  __int128 sum = 0;
  for (Cost c : block) {
    if (c < 0) throw std::invalid_argument("lemma3_check: negative cost");
    sum += c;
  }
  const __int128 pair = static_cast<__int128>(block[position - 1]) + block[k - 1];
  return static_cast<__int128>(k) * pair <= 2 * sum;
}

}  // namespace chorefair
