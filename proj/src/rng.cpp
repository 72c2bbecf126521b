#include "chorefair/rng.hpp"

#include <limits>
#include <stdexcept>

namespace chorefair {

std::size_t Rng::uniform(std::size_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::uniform: zero bound");
  const std::uint64_t range = bound;
  // Largest multiple of range representable; draws above it are rejected.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = 0;
  do {
    draw = engine_();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % range);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace chorefair
