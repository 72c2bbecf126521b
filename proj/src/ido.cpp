#include "chorefair/ido.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace chorefair {

IdoInstance to_ido(const Instance& inst) {
  CostMatrix rows = inst.matrix();
  for (auto& row : rows) std::sort(row.begin(), row.end(), std::greater<>());
  return IdoInstance(Instance::from_matrix(std::move(rows), inst.meta()));
}

Allocation lift_allocation(const Instance& inst, const Allocation& ido_alloc) {
  if (ido_alloc.agents() != inst.agents() || ido_alloc.items() != inst.items()) {
    throw Error(ErrorKind::kInfeasibleAllocation,
                "IDO allocation does not match the instance dimensions");
  }
  const std::size_t m = inst.items();
  std::vector<bool> taken(m, false);
  std::vector<std::size_t> owner(m, 0);
  for (std::size_t j = m; j-- > 0;) {
    const std::size_t picker = ido_alloc.owner(j);
    auto row = inst.row(picker);
    std::size_t best = m;
    for (std::size_t item = 0; item < m; ++item) {
      if (taken[item]) continue;
      if (best == m || row[item] < row[best]) best = item;
    }
    taken[best] = true;
    owner[best] = picker;
  }
  return Allocation::from_owners(owner, inst.agents());
}

Allocation pick_in_turns(const OrdinalProfile& profile, std::span<const std::size_t> turns) {
  const std::size_t m = profile.items();
  if (turns.size() != m) {
    throw Error(ErrorKind::kDimensionMismatch, "picking order must have one turn per item");
  }
  std::vector<bool> taken(m, false);
  std::vector<std::size_t> owner(m, 0);
  // Each agent scans her ranking from the favourite end; the cursor only
  // moves backwards, so the whole protocol is O(n m).
  std::vector<std::size_t> cursor(profile.agents(), m);
  for (std::size_t agent : turns) {
    if (agent >= profile.agents()) {
      throw Error(ErrorKind::kValidation, "picking order names an unknown agent");
    }
    const auto& ranking = profile.ranking(agent);
    std::size_t& k = cursor[agent];
    while (taken[ranking[k - 1]]) --k;
    const std::size_t item = ranking[k - 1];
    taken[item] = true;
    owner[item] = agent;
  }
  return Allocation::from_owners(owner, profile.agents());
}

Sequencer Sequencer::parse(std::string_view name) {
  if (name == "sesqui-rr") return sesqui_round_robin();
  if (name == "round-robin") return round_robin();
  constexpr std::string_view kPrefix = "pattern:";
  if (name.substr(0, kPrefix.size()) == kPrefix) {
    // Validate the syntax now; agent range is checked once n is known.
    Pattern p = parse_pattern(name.substr(kPrefix.size()), static_cast<std::size_t>(-1));
    std::vector<std::size_t> one_based;
    for (std::size_t agent : p.entries()) one_based.push_back(agent + 1);
    return custom(std::move(one_based));
  }
  throw Error(ErrorKind::kUnknownAlgorithm, "unknown sequencer '" + std::string(name) + "'");
}

Pattern Sequencer::pattern(std::size_t agents) const {
  switch (kind_) {
    case SequencerKind::kSesquiRoundRobin: return sesqui_pattern(agents);
    case SequencerKind::kRoundRobin: return round_robin_pattern(agents);
    case SequencerKind::kCustomPattern: {
      std::vector<std::size_t> entries;
      for (std::size_t agent : custom_) {
        if (agent == 0) throw Error(ErrorKind::kValidation, "pattern entries are one-based");
        entries.push_back(agent - 1);
      }
      return Pattern::from_entries(std::move(entries), agents);
    }
  }
  throw Error(ErrorKind::kUnknownAlgorithm, "unknown sequencer");
}

std::string Sequencer::name() const {
  switch (kind_) {
    case SequencerKind::kSesquiRoundRobin: return "sesqui-rr";
    case SequencerKind::kRoundRobin: return "round-robin";
    case SequencerKind::kCustomPattern: {
      std::string out = "pattern:";
      for (std::size_t k = 0; k < custom_.size(); ++k) {
        if (k > 0) out += ",";
        out += std::to_string(custom_[k]);
      }
      return out;
    }
  }
  return "unknown";
}

Allocation run_ordinal(const OrdinalProfile& profile, const Sequencer& sequencer) {
  const PickingSequence sequence = expand(sequencer.pattern(profile.agents()), profile.items());
  // The holder of the cheapest IDO item picks first.
  std::vector<std::size_t> turns(sequence.entries().rbegin(), sequence.entries().rend());
  return pick_in_turns(profile, turns);
}

}  // namespace chorefair
