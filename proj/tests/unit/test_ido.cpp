#include <doctest.h>

#include <numeric>

#include "chorefair/ido.hpp"
#include "chorefair/instances.hpp"
#include "chorefair/mms.hpp"
#include "chorefair/rng.hpp"

using namespace chorefair;

namespace {

OrdinalProfile identical(std::size_t n, std::size_t m) {
  std::vector<std::size_t> r(m);
  std::iota(r.begin(), r.end(), std::size_t{0});
  return OrdinalProfile::from_rankings(std::vector<std::vector<std::size_t>>(n, r));
}

Instance random_non_ido(Rng& rng, std::size_t n, std::size_t m) {
  while (true) {
    Instance inst = gen_random(n, m, 9, rng.next());
    if (!is_ido(inst)) return inst;
  }
}

}  // namespace

TEST_CASE("to_ido sorts every row") {
  CHECK(to_ido(Instance::from_matrix({{1, 3, 2}})).instance().matrix() ==
        CostMatrix{{3, 2, 1}});
  const Instance ido = Instance::from_matrix({{5, 4, 4, 0}, {2, 2, 1, 1}});
  CHECK(to_ido(ido).instance() == ido);
}

TEST_CASE("to_ido preserves maximin shares") {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const Instance inst = gen_random(2, 6, 9, rng.next());
    CHECK(mms_all(to_ido(inst).instance()).values == mms_all(inst).values);
  }
}

TEST_CASE("lift_allocation hand trace") {
  const Instance inst = Instance::from_matrix({{1, 2}, {2, 1}});
  const Allocation ido_alloc = Allocation::from_bundles({{0}, {1}}, 2);
  const Allocation lifted = lift_allocation(inst, ido_alloc);
  // Agent 2 picks first and takes item 2; agent 1 is left with item 1.
  CHECK(lifted.bundle(0) == ItemSet{0});
  CHECK(lifted.bundle(1) == ItemSet{1});
  CHECK(bundle_cost(inst, 0, lifted.bundle(0)) == 1);
  CHECK(bundle_cost(inst, 1, lifted.bundle(1)) == 1);
}

TEST_CASE("lift_allocation rejects mismatched allocations") {
  const Instance inst = Instance::from_matrix({{1, 2}, {2, 1}});
  CHECK_THROWS_AS(lift_allocation(inst, Allocation::from_bundles({{0, 1, 2}, {}}, 3)), Error);
}

TEST_CASE("lifted costs never exceed the IDO schedule costs") {
  Rng rng(404);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng.uniform(3);
    const std::size_t m = 2 + rng.uniform(9);
    const Instance inst = random_non_ido(rng, n, m);
    const Instance ido = to_ido(inst).instance();
    for (const Pattern& p : {sesqui_pattern(n), round_robin_pattern(n)}) {
      const Allocation ido_alloc = allocate_by_sequence(expand(p, m));
      const Allocation lifted = lift_allocation(inst, ido_alloc);
      const Allocation ordinal = run_ordinal(ordinal_of(inst), Sequencer::custom([&] {
        std::vector<std::size_t> e;
        for (std::size_t a : p.entries()) e.push_back(a + 1);
        return e;
      }()));
      for (std::size_t i = 0; i < n; ++i) {
        const Cost scheduled = bundle_cost(ido, i, ido_alloc.bundle(i));
        CHECK(bundle_cost(inst, i, lifted.bundle(i)) <= scheduled);
        CHECK(bundle_cost(inst, i, ordinal.bundle(i)) <= scheduled);
      }
    }
  }
}

TEST_CASE("lifted ratio is no worse than the IDO ratio") {
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const Instance inst = random_non_ido(rng, 3, 7);
    const Instance ido = to_ido(inst).instance();
    const Allocation ido_alloc = allocate_by_sequence(expand(sesqui_pattern(3), 7));
    const RatioReport lifted = ratio_of(inst, lift_allocation(inst, ido_alloc));
    const RatioReport base = ratio_of(ido, ido_alloc);
    for (std::size_t i = 0; i < 3; ++i) CHECK(lifted.per_agent[i] <= base.per_agent[i]);
  }
}

TEST_CASE("run_ordinal on identical rankings") {
  const Allocation a = run_ordinal(identical(2, 4), Sequencer::sesqui_round_robin());
  CHECK(a.bundle(0) == ItemSet{0, 3});
  CHECK(a.bundle(1) == ItemSet{1, 2});

  const Allocation b = run_ordinal(identical(3, 5), Sequencer::sesqui_round_robin());
  CHECK(b.bundle(0) == ItemSet{0});
  CHECK(b.bundle(1) == ItemSet{1, 4});
  CHECK(b.bundle(2) == ItemSet{2, 3});
}

TEST_CASE("run_ordinal with m = n gives one item each") {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.uniform(6);
    const Instance inst = gen_random(n, n, 9, rng.next());
    for (const auto& s : {Sequencer::sesqui_round_robin(), Sequencer::round_robin()}) {
      const Allocation a = run_ordinal(ordinal_of(inst), s);
      for (std::size_t i = 0; i < n; ++i) CHECK(a.bundle(i).size() == 1);
    }
  }
}

TEST_CASE("run_ordinal ignores cost perturbations that keep rankings") {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.uniform(3);
    const std::size_t m = 1 + rng.uniform(9);
    const Instance inst = gen_random(n, m, 9, rng.next());
    const OrdinalProfile p = ordinal_of(inst);
    // Fresh costs, strictly decreasing along each ranking.
    CostMatrix other(n, std::vector<Cost>(m));
    for (std::size_t i = 0; i < n; ++i) {
      Cost level = 1000;
      for (std::size_t k = 0; k < m; ++k) {
        level -= 1 + static_cast<Cost>(rng.uniform(50));
        other[i][p.ranking(i)[k]] = level;
      }
    }
    const Instance moved = Instance::from_matrix(other);
    CHECK(ordinal_of(moved) == p);
    CHECK(run_ordinal(ordinal_of(moved), Sequencer::sesqui_round_robin()) ==
          run_ordinal(p, Sequencer::sesqui_round_robin()));
  }
}

TEST_CASE("sequencer names") {
  CHECK(Sequencer::parse("sesqui-rr").kind() == SequencerKind::kSesquiRoundRobin);
  CHECK(Sequencer::parse("round-robin").kind() == SequencerKind::kRoundRobin);
  const Sequencer custom = Sequencer::parse("pattern:1,2,2");
  CHECK(custom.kind() == SequencerKind::kCustomPattern);
  CHECK(custom.name() == "pattern:1,2,2");
  CHECK(custom.pattern(2).entries() == std::vector<std::size_t>{0, 1, 1});
  CHECK_THROWS_AS(custom.pattern(1), Error);
  try {
    Sequencer::parse("greedy");
    FAIL("expected UnknownAlgorithm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnknownAlgorithm);
  }
  CHECK_THROWS_AS(Sequencer::parse("pattern:1,x"), Error);
}

TEST_CASE("pick_in_turns takes the latest-ranked remaining item") {
  const auto p = OrdinalProfile::from_rankings({{0, 1, 2}, {2, 1, 0}});
  const std::vector<std::size_t> turns{0, 1, 0};
  const Allocation a = pick_in_turns(p, turns);
  CHECK(a.bundle(0) == ItemSet{1, 2});
  CHECK(a.bundle(1) == ItemSet{0});
  CHECK_THROWS_AS(pick_in_turns(p, std::vector<std::size_t>{0, 1}), Error);
}
