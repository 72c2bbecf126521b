#pragma once

// Periodic allocation sequences for IDO instances: item j (in descending cost
// order) goes to agent pi_j, where pi repeats a fixed pattern.

#include <cstddef>
#include <string_view>
#include <vector>

#include "chorefair/core.hpp"

namespace chorefair {

inline constexpr std::size_t kMaxPatternLength = 1u << 16;

class Pattern {
 public:
  // Agents are zero-based here. Throws Error(kValidation) on an empty
  // pattern, an entry >= agents, or a pattern longer than kMaxPatternLength.
  static Pattern from_entries(std::vector<std::size_t> entries, std::size_t agents);

  std::size_t agents() const { return agents_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::size_t>& entries() const { return entries_; }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  Pattern() = default;

  std::size_t agents_ = 0;
  std::vector<std::size_t> entries_;
};

// Comma separated one-based agent indices, e.g. "1,2,2".
Pattern parse_pattern(std::string_view text, std::size_t agents);

// [1, 2, ..., n, n, n-1, ..., floor(n/2)+1] (one-based), length 2n - floor(n/2).
Pattern sesqui_pattern(std::size_t agents);
// [1, ..., n].
Pattern round_robin_pattern(std::size_t agents);

class PickingSequence {
 public:
  static PickingSequence from_entries(std::vector<std::size_t> entries,
                                      std::size_t agents);

  std::size_t agents() const { return agents_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::size_t>& entries() const { return entries_; }

  friend bool operator==(const PickingSequence&, const PickingSequence&) = default;

 private:
  PickingSequence() = default;

  std::size_t agents_ = 0;
  std::vector<std::size_t> entries_;
};

// Repeats the pattern to length m; the last period may be cut short.
PickingSequence expand(const Pattern& pattern, std::size_t items);

// X_i = { j : pi_j = i }.
Allocation allocate_by_sequence(const PickingSequence& sequence);

}  // namespace chorefair
