#include "chorefair/sequencers.hpp"

#include <charconv>
#include <string>

namespace chorefair {

Pattern Pattern::from_entries(std::vector<std::size_t> entries, std::size_t agents) {
  if (entries.empty()) throw Error(ErrorKind::kValidation, "pattern is empty");
  if (entries.size() > kMaxPatternLength) {
    throw Error(ErrorKind::kValidation, "pattern longer than " + std::to_string(kMaxPatternLength));
  }
  for (std::size_t agent : entries) {
    if (agent >= agents) {
      throw Error(ErrorKind::kValidation,
                  "pattern entry " + std::to_string(agent + 1) + " exceeds agent count " +
                      std::to_string(agents));
    }
  }
  Pattern p;
  p.agents_ = agents;
  p.entries_ = std::move(entries);
  return p;
}

Pattern parse_pattern(std::string_view text, std::size_t agents) {
  std::vector<std::size_t> entries;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view token = text.substr(start, comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || value == 0) {
      throw Error(ErrorKind::kValidation, "bad pattern entry '" + std::string(token) + "'");
    }
    entries.push_back(value - 1);
    start = comma + 1;
  }
  return Pattern::from_entries(std::move(entries), agents);
}

Pattern sesqui_pattern(std::size_t agents) {
  if (agents == 0) throw Error(ErrorKind::kValidation, "sesqui_pattern: no agents");
  std::vector<std::size_t> entries;
  entries.reserve(2 * agents - agents / 2);
  for (std::size_t i = 0; i < agents; ++i) entries.push_back(i);
  // Back down through the upper half: n, n-1, ..., floor(n/2)+1 (one-based).
  for (std::size_t i = agents; i > agents / 2; --i) entries.push_back(i - 1);
  return Pattern::from_entries(std::move(entries), agents);
}

Pattern round_robin_pattern(std::size_t agents) {
  if (agents == 0) throw Error(ErrorKind::kValidation, "round_robin_pattern: no agents");
  std::vector<std::size_t> entries(agents);
  for (std::size_t i = 0; i < agents; ++i) entries[i] = i;
  return Pattern::from_entries(std::move(entries), agents);
}

PickingSequence PickingSequence::from_entries(std::vector<std::size_t> entries,
                                              std::size_t agents) {
  if (entries.empty()) throw Error(ErrorKind::kValidation, "picking sequence is empty");
  for (std::size_t agent : entries) {
    if (agent >= agents) throw Error(ErrorKind::kValidation, "picking sequence entry out of range");
  }
  PickingSequence seq;
  seq.agents_ = agents;
  seq.entries_ = std::move(entries);
  return seq;
}

PickingSequence expand(const Pattern& pattern, std::size_t items) {
  if (items == 0) throw Error(ErrorKind::kValidation, "expand: need at least one item");
  std::vector<std::size_t> entries(items);
  const auto& p = pattern.entries();
  for (std::size_t j = 0; j < items; ++j) entries[j] = p[j % p.size()];
  return PickingSequence::from_entries(std::move(entries), pattern.agents());
}

Allocation allocate_by_sequence(const PickingSequence& sequence) {
  return Allocation::from_owners(sequence.entries(), sequence.agents());
}

}  // namespace chorefair
