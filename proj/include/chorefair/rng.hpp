#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace chorefair {

// Seedable generator with a portable bounded-integer draw. std::mt19937_64's
// output sequence is fixed by the standard; the std distributions are not, so
// uniform draws are done here by rejection sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be positive.
  std::size_t uniform(std::size_t bound);

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[uniform(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

// splitmix64 mix of (seed, index): per-trial seeds that do not depend on the
// order trials are executed in.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace chorefair
