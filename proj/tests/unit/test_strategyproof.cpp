#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chorefair/instances.hpp"
#include "chorefair/mms.hpp"
#include "chorefair/rng.hpp"
#include "chorefair/strategyproof.hpp"

using namespace chorefair;

namespace {

using Quotas = std::vector<std::size_t>;

OrdinalProfile identical(std::size_t n, std::size_t m) {
  std::vector<std::size_t> r(m);
  std::iota(r.begin(), r.end(), std::size_t{0});
  return OrdinalProfile::from_rankings(std::vector<std::vector<std::size_t>>(n, r));
}

// Direct simulation of the constant-ratio quotas, agent by agent.
std::uint64_t capacity_by_simulation(std::uint64_t n, std::uint64_t r) {
  std::uint64_t prefix = 0;
  for (std::uint64_t i = 0; i < n; ++i) prefix += r * (prefix / n + 1);
  return prefix;
}

}  // namespace

TEST_CASE("log schedule on a worked example") {
  const LogScheduleTerms t = log_schedule_terms(4, 20);
  CHECK(t.k == doctest::Approx(2.0 * std::log2(5.0)));
  CHECK(t.schedule.quotas() == Quotas{2, 2, 5, 11});
  CHECK(t.untruncated[2] == 5);
  CHECK(t.untruncated[3] == 11);
  CHECK(t.shortfall == 0);
}

TEST_CASE("log schedule with m = 2n") {
  // K = 2, so the first growing quota is 2 and the next is ceil(2 (1 + 2/n)) = 3
  // unless truncation caps it; only n <= 4 ends up all twos.
  for (std::size_t n = 2; n <= 4; ++n) CHECK(log_schedule(n, 2 * n).quotas() == Quotas(n, 2));
  CHECK(log_schedule(5, 10).quotas() == Quotas{2, 2, 2, 3, 1});
  CHECK(log_schedule(8, 16).quotas() == Quotas{2, 2, 2, 2, 2, 3, 3, 0});
  for (std::size_t n = 2; n <= 20; ++n) {
    const Quotas q = log_schedule(n, 2 * n).quotas();
    for (std::size_t i = 0; i <= n / 2 && i < n; ++i) CHECK(q[i] == 2);
  }
}

TEST_CASE("log schedule always sums to m") {
  for (std::size_t n = 2; n <= 12; ++n) {
    for (std::size_t m = n + 1; m <= 60 * n; ++m) {
      const LogScheduleTerms t = log_schedule_terms(n, m);
      const auto& q = t.schedule.quotas();
      REQUIRE(std::accumulate(q.begin(), q.end(), std::size_t{0}) == m);
      for (std::size_t i = 0; i < n / 2; ++i) CHECK(q[i] == 2);
    }
  }
}

TEST_CASE("log schedule argument checks") {
  CHECK_THROWS_AS(log_schedule(1, 5), Error);
  CHECK_THROWS_AS(log_schedule(4, 4), Error);
  CHECK_THROWS_AS(log_schedule(4, 3), Error);
}

TEST_CASE("log schedule quotas grow at least like a quarter log") {
  for (std::size_t n : {4, 8, 16, 32}) {
    for (std::size_t m = n + 1; m <= 512 * n; m += 7) {
      const auto& q = log_schedule(n, m).quotas();
      const double largest = static_cast<double>(*std::max_element(q.begin(), q.end()));
      CHECK(largest >= 0.25 * std::log2(static_cast<double>(m) / n));
    }
  }
}

TEST_CASE("slow quota growth cannot cover many items") {
  // Quotas bounded by r * max(1, ceil(prefix/n)) with r below a quarter of
  // log2(m/n) run out before m items.
  for (std::uint64_t r = 1; r <= 4; ++r) {
    for (std::uint64_t n : {4u, 12u, 60u, 840u}) {
      const std::uint64_t m = n << (4 * (r + 1));
      CHECK(constant_ratio_capacity(n, r) < m);
    }
  }
}

TEST_CASE("constant-ratio schedule for r = 2") {
  for (std::uint64_t n = 12; n <= 1200; n += 12) {
    CHECK(constant_ratio_capacity(n, 2) * 3 == 11 * n);
  }
  const auto s = constant_ratio_schedule(12, 44, 2);
  REQUIRE(s.has_value());
  CHECK(s->quotas() == Quotas{2, 2, 2, 2, 2, 2, 4, 4, 4, 6, 6, 8});
  CHECK_FALSE(constant_ratio_schedule(12, 45, 2).has_value());
  const auto t = constant_ratio_schedule(12, 20, 2);
  REQUIRE(t.has_value());
  CHECK(t->quotas() == Quotas{2, 2, 2, 2, 2, 2, 4, 4, 0, 0, 0, 0});
  CHECK_THROWS_AS(constant_ratio_schedule(12, 20, 0), Error);
}

TEST_CASE("level-wise capacity matches direct simulation") {
  for (std::uint64_t r = 1; r <= 5; ++r) {
    for (std::uint64_t n = 1; n <= 300; ++n) {
      CHECK(constant_ratio_capacity(n, r) == capacity_by_simulation(n, r));
    }
  }
  CHECK(constant_ratio_capacity(7560, 3) == capacity_by_simulation(7560, 3));
}

TEST_CASE("schedule ratio bound") {
  const PickSchedule s = PickSchedule::from_quotas({2, 2, 5, 11}, 20);
  // prefixes 0, 2, 4, 9 -> blocks 1, 1, 1, 3
  CHECK(schedule_ratio_bound(s) == Fraction(5));
  CHECK(schedule_ratio_bound(PickSchedule::from_quotas({1, 1, 1}, 3)) == Fraction(1));
}

TEST_CASE("parse_schedule") {
  CHECK(parse_schedule("log", 4, 20).quotas() == Quotas{2, 2, 5, 11});
  CHECK(parse_schedule("log", 4, 3).quotas() == Quotas{0, 1, 1, 1});
  CHECK(parse_schedule("const:2", 12, 44).quotas().back() == 8);
  CHECK(parse_schedule("explicit:1,2,3", 3, 6).quotas() == Quotas{1, 2, 3});
  CHECK_THROWS_AS(parse_schedule("explicit:1,2", 3, 3), Error);
  CHECK_THROWS_AS(parse_schedule("explicit:1,2,4", 3, 6), Error);
  CHECK_THROWS_AS(parse_schedule("const:2", 12, 45), Error);
  CHECK_THROWS_AS(parse_schedule("const:x", 12, 5), Error);
  CHECK_THROWS_AS(parse_schedule("fast", 3, 6), Error);
}

TEST_CASE("consecutive_pick hand traces") {
  const PickSchedule two = PickSchedule::from_quotas({2, 2}, 4);
  const Allocation a = consecutive_pick(identical(2, 4), two);
  CHECK(a.bundle(1) == ItemSet{2, 3});
  CHECK(a.bundle(0) == ItemSet{0, 1});

  const auto p = OrdinalProfile::from_rankings({{0, 1, 2, 3}, {2, 0, 1, 3}});
  const Allocation b = consecutive_pick(p, two);
  CHECK(b.bundle(1) == ItemSet{1, 3});
  CHECK(b.bundle(0) == ItemSet{0, 2});

  const Allocation c = consecutive_pick(identical(3, 3), PickSchedule::from_quotas({1, 1, 1}, 3));
  for (std::size_t i = 0; i < 3; ++i) CHECK(c.bundle(i).size() == 1);
}

TEST_CASE("consecutive_pick ratio stays within the schedule bound") {
  Rng rng(88);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng.uniform(3);
    const std::size_t m = n + 1 + rng.uniform(12 - n);
    const Instance inst = gen_random(n, m, 9, rng.next());
    const PickSchedule s = log_schedule(n, m);
    const RatioReport r = ratio_of(inst, consecutive_pick(ordinal_of(inst), s));
    CHECK(r.worst <= schedule_ratio_bound(s));
  }
}

TEST_CASE("consecutive_pick cannot be manipulated under any quotas") {
  Rng rng(6);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng.uniform(2);
    const std::size_t m = 4 + rng.uniform(2);
    Quotas q(n, 0);
    for (std::size_t j = 0; j < m; ++j) ++q[rng.uniform(n)];
    const PickSchedule s = PickSchedule::from_quotas(q, m);
    const Instance inst = gen_random(n, m, 9, rng.next());
    const OrdinalProfile truth = ordinal_of(inst);
    for (std::size_t i = 0; i < n; ++i) {
      const Cost honest = bundle_cost(inst, i, consecutive_pick(truth, s).bundle(i));
      std::vector<std::size_t> lie(m);
      std::iota(lie.begin(), lie.end(), std::size_t{0});
      do {
        const Allocation a = consecutive_pick(truth.with_ranking(i, lie), s);
        CHECK(bundle_cost(inst, i, a.bundle(i)) >= honest);
      } while (std::next_permutation(lie.begin(), lie.end()));
    }
  }
}

TEST_CASE("decline set size") {
  CHECK(decline_set_size(1, 10) == 0);
  CHECK(decline_set_size(2, 10) == 2);
  CHECK(decline_set_size(4, 100) == 5);
  CHECK(decline_set_size(16, 1024) == 32);
  CHECK(decline_set_size(16, 20) == 20);
  const auto sets = decline_sets(OrdinalProfile::from_rankings({{3, 1, 0, 2}, {0, 1, 2, 3}}));
  CHECK(sets[0] == ItemSet{1, 3});
  CHECK(sets[1] == ItemSet{0, 1});
}

TEST_CASE("random_decline is reproducible and feasible") {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.uniform(6);
    const std::size_t m = 1 + rng.uniform(40);
    const Instance inst = gen_random(n, m, 9, rng.next());
    const OrdinalProfile p = ordinal_of(inst);
    const std::uint64_t seed = rng.next();
    const RandomOutcome a = random_decline(p, seed);
    const RandomOutcome b = random_decline(p, seed);
    CHECK(a.allocation == b.allocation);
    CHECK(a.reclaimed == b.reclaimed);
    CHECK(a.seed == seed);
    CHECK(a.allocation.items() == m);
    CHECK(a.reclaimed.size() <= n * decline_set_size(n, m));
    // Re-dealt parts differ in size by at most one.
    std::vector<std::size_t> got(n, 0);
    for (std::size_t j : a.reclaimed) ++got[a.allocation.owner(j)];
    const auto [lo, hi] = std::minmax_element(got.begin(), got.end());
    CHECK(*hi - *lo <= 1);
  }
  CHECK_THROWS_AS(random_decline(identical(1, 3), 0), Error);
}

TEST_CASE("random_decline smallest case") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const RandomOutcome o = random_decline(identical(2, 1), seed);
    CHECK(o.allocation.items() == 1);
    CHECK(o.reclaimed == ItemSet{0});
  }
}

TEST_CASE("random_decline first phase is uniform") {
  // Item 0 is everyone's cheapest, so it is never declined and its final
  // owner is its first-phase owner.
  const std::size_t n = 4;
  const std::size_t m = 12;
  std::vector<std::size_t> ranking(m);
  std::iota(ranking.begin(), ranking.end() - 1, std::size_t{1});
  ranking.back() = 0;
  const auto p = OrdinalProfile::from_rankings(std::vector<std::vector<std::size_t>>(n, ranking));
  const int trials = 100000;
  std::vector<int> hits(n, 0);
  for (int t = 0; t < trials; ++t) ++hits[random_decline(p, derive_seed(99, t)).allocation.owner(0)];
  const double mean = static_cast<double>(trials) / n;
  const double sigma = std::sqrt(trials * (1.0 / n) * (1.0 - 1.0 / n));
  for (int h : hits) CHECK(std::abs(h - mean) <= 3 * sigma);
}

TEST_CASE("random_decline expected cost closed form") {
  const Instance zero = Instance::from_matrix({{0, 0, 0, 0}, {1, 2, 3, 4}});
  CHECK(random_decline_expected_cost(zero, ordinal_of(zero), 0) == Fraction(0));
  CHECK(random_decline_expected_cost(zero, identical(2, 4), 0) == Fraction(0));

  // n = 2, K = 2: agent 1 declines {0,1}, agent 2 declines {2,3}.
  const Instance inst = Instance::from_matrix({{4, 3, 2, 1}, {1, 2, 3, 4}});
  // kept: (2+1)/2; re-dealt: each item labelled by one agent -> 10/4.
  CHECK(random_decline_expected_cost(inst, ordinal_of(inst), 0) == Fraction(4));
}

TEST_CASE("truthful report minimizes expected cost") {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const Instance inst = gen_random(2, 4, 9, rng.next());
    const OrdinalProfile truth = ordinal_of(inst);
    for (std::size_t i = 0; i < 2; ++i) {
      const Fraction honest = random_decline_expected_cost(inst, truth, i);
      std::vector<std::size_t> lie{0, 1, 2, 3};
      do {
        CHECK(random_decline_expected_cost(inst, truth.with_ranking(i, lie), i) >= honest);
      } while (std::next_permutation(lie.begin(), lie.end()));
    }
  }
}

TEST_CASE("expected cost matches Monte Carlo") {
  const Instance inst = Instance::from_matrix({{5, 3, 1, 0}, {2, 7, 1, 4}});
  const OrdinalProfile p = ordinal_of(inst);
  for (std::size_t agent = 0; agent < 2; ++agent) {
    const int runs = 1000000;
    double sum = 0;
    double sum_sq = 0;
    for (int t = 0; t < runs; ++t) {
      const RandomOutcome o = random_decline(p, derive_seed(2718, static_cast<std::uint64_t>(t)));
      const double c = static_cast<double>(bundle_cost(inst, agent, o.allocation.bundle(agent)));
      sum += c;
      sum_sq += c * c;
    }
    const double mean = sum / runs;
    const double sd = std::sqrt(sum_sq / runs - mean * mean);
    const double exact = random_decline_expected_cost(inst, p, agent).to_double();
    CHECK(std::abs(mean - exact) <= 3 * sd / std::sqrt(static_cast<double>(runs)));
  }
}

TEST_CASE("pick schedule validation") {
  CHECK_THROWS_AS(PickSchedule::from_quotas({}, 0), Error);
  CHECK_THROWS_AS(PickSchedule::from_quotas({1, 1}, 3), Error);
  CHECK_THROWS_AS(consecutive_pick(identical(2, 4), PickSchedule::from_quotas({1, 2}, 3)), Error);
}
