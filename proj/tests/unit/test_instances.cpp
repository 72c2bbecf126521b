#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "chorefair/instances.hpp"
#include "chorefair/mms.hpp"
#include "chorefair/rng.hpp"

using namespace chorefair;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("chorefair_test_" + name);
}

ErrorKind read_error(const std::string& text) {
  const auto path = temp_file("bad.json");
  std::ofstream(path) << text;
  try {
    read_instance(path);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kValidation;
}

}  // namespace

TEST_CASE("two-agent hard instances") {
  const auto [first, second] = gen_theorem2_n2();
  CHECK(first.matrix() == CostMatrix{{3, 1, 1, 1}, {1, 1, 1, 1}});
  CHECK(second.matrix() == CostMatrix{{1, 1, 1, 1}, {1, 1, 1, 1}});
  CHECK(mms_all(first).values == std::vector<Cost>{3, 2});
  CHECK(mms_all(second).values == std::vector<Cost>{2, 2});
  const std::vector<std::size_t> order{0, 1, 2, 3};
  for (const Instance* inst : {&first, &second}) {
    const OrdinalProfile p = ordinal_of(*inst);
    CHECK(p.ranking(0) == order);
    CHECK(p.ranking(1) == order);
  }
}

TEST_CASE("three-agent hard instances") {
  const auto five = gen_theorem2_n3(5);
  REQUIRE(five.size() == 4);
  CHECK(five[2].matrix()[0] == std::vector<Cost>{3, 3, 1, 1, 1});
  CHECK(mms_exact(five[2], 0) == 3);
  CHECK(five[1].matrix()[0] == std::vector<Cost>{4, 2, 2, 2, 2});
  CHECK(mms_exact(five[1], 0) == 4);
  CHECK(five[0].matrix()[0] == std::vector<Cost>{2, 2, 1, 1, 0});

  for (std::size_t m = 5; m <= 19; m += 2) {
    const auto family = gen_theorem2_n3(m);
    CHECK(mms_exact(family[0], 0) == 2);
    for (const Instance& inst : family) {
      CHECK(inst.agents() == 3);
      CHECK(inst.items() == m);
      CHECK(is_ido(inst));
      // Each row, divided by its scale, has share 1 (2 for the base row).
      const Cost scale = inst.meta().row_scale.at(0);
      const Cost expect = inst.meta().label == "hard-n3-base" ? 2 : scale;
      CHECK(mms_all(inst).values == std::vector<Cost>(3, expect));
    }
  }
  CHECK_THROWS_AS(gen_theorem2_n3(6), Error);
  CHECK_THROWS_AS(gen_theorem2_n3(3), Error);
}

TEST_CASE("random generator") {
  CHECK(gen_random(3, 8, 9, 42) == gen_random(3, 8, 9, 42));
  CHECK_FALSE(gen_random(3, 8, 9, 42) == gen_random(3, 8, 9, 43));
  const Instance r = gen_random(3, 8, 9, 7);
  for (std::size_t i = 0; i < 3; ++i) {
    for (Cost c : r.row(i)) {
      CHECK(c >= 0);
      CHECK(c <= 9);
    }
  }
  CHECK(is_ido(gen_random(4, 10, 9, 5, true)));
  CHECK_THROWS_AS(gen_random(0, 3, 9, 1), Error);
}

TEST_CASE("instance json round trip") {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const Instance inst = gen_random(1 + rng.uniform(4), 1 + rng.uniform(9), 9, rng.next());
    CHECK(instance_from_json(instance_to_json(inst)) == inst);
  }
  const auto family = gen_theorem2_n3(7);
  const auto path = temp_file("inst.json");
  write_instance(path, family[3]);
  const Instance back = read_instance(path);
  CHECK(back == family[3]);
  CHECK(back.meta().label == "hard-n3-c3");
  CHECK(back.meta().row_scale == std::vector<Cost>{4, 4, 4});
  std::filesystem::remove(path);
}

TEST_CASE("instance files are validated") {
  CHECK(read_error(R"({"n":2,"m":2,"costs":[[1,2],[3]]})") == ErrorKind::kDimensionMismatch);
  CHECK(read_error(R"({"n":3,"m":2,"costs":[[1,2],[3,4]]})") == ErrorKind::kDimensionMismatch);
  CHECK(read_error(R"({"n":1,"m":2,"costs":[[1,-2]]})") == ErrorKind::kNegativeCost);
  CHECK(read_error(R"({"n":1,"m":2,"costs":[[1,"x"]]})") == ErrorKind::kMalformedInput);
  CHECK(read_error(R"({"n":1,"m":2})") == ErrorKind::kMalformedInput);
  CHECK(read_error("{not json") == ErrorKind::kMalformedInput);
  CHECK_THROWS_AS(read_instance(temp_file("missing.json")), Error);
}

TEST_CASE("allocation json round trip and validation") {
  const Allocation a = Allocation::from_bundles({{0, 3}, {1, 2}}, 4);
  const nlohmann::json doc = allocation_to_json(a);
  CHECK(doc == nlohmann::json::parse(R"({"bundles":[[1,4],[2,3]]})"));
  CHECK(allocation_from_json(doc) == a);
  CHECK(allocation_from_json(doc, 4) == a);

  const auto path = temp_file("alloc.json");
  write_allocation(path, a);
  CHECK(read_allocation(path, 4) == a);
  std::filesystem::remove(path);

  auto kind = [](const char* text, std::optional<std::size_t> m) {
    try {
      allocation_from_json(nlohmann::json::parse(text), m);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kValidation;
  };
  CHECK(kind(R"({"bundles":[[1,2],[2,3]]})", 3) == ErrorKind::kInfeasibleAllocation);
  CHECK(kind(R"({"bundles":[[1],[3]]})", 3) == ErrorKind::kInfeasibleAllocation);
  CHECK(kind(R"({"bundles":[[0],[1]]})", std::nullopt) == ErrorKind::kInfeasibleAllocation);
  CHECK(kind(R"({"bundles":[[1],[2]]})", 3) == ErrorKind::kInfeasibleAllocation);
  CHECK(kind(R"({"bundles":"x"})", 3) == ErrorKind::kMalformedInput);
}

TEST_CASE("csv export") {
  const Instance inst = Instance::from_matrix({{3, 1, 1}, {0, 2, 5}});
  CHECK(instance_to_csv(inst) == "item_1,item_2,item_3\n3,1,1\n0,2,5\n");
}
