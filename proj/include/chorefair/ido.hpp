#pragma once

// Reduction to identical-ordering (IDO) instances and back.
//
// Any allocation computed on the IDO counterpart of an instance is turned
// into a real allocation by a picking order: the holder of IDO item m picks
// first, then the holder of item m-1, and so on, each taking her cheapest
// remaining item. When agent pi_j picks, j items remain, so her pick costs at
// most the j-th largest of her costs, which is exactly her IDO cost for item j.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chorefair/core.hpp"
#include "chorefair/sequencers.hpp"

namespace chorefair {

// Sorts every row non-increasingly.
IdoInstance to_ido(const Instance& inst);

// Lifts an allocation of the IDO counterpart back to `inst`. Each picker
// takes her minimum true-cost remaining item, ties by ascending index.
// Throws Error(kInfeasibleAllocation) when ido_alloc does not match inst.
Allocation lift_allocation(const Instance& inst, const Allocation& ido_alloc);

// Runs a picking protocol on reported rankings only: on each turn the named
// agent takes the remaining item that comes latest in her ranking.
Allocation pick_in_turns(const OrdinalProfile& profile,
                         std::span<const std::size_t> turns);

enum class SequencerKind { kSesquiRoundRobin, kRoundRobin, kCustomPattern };

// Names the periodic sequence an ordinal pipeline is built from.
class Sequencer {
 public:
  static Sequencer sesqui_round_robin() { return Sequencer(SequencerKind::kSesquiRoundRobin, {}); }
  static Sequencer round_robin() { return Sequencer(SequencerKind::kRoundRobin, {}); }
  // One-based agent indices, as written on the command line.
  static Sequencer custom(std::vector<std::size_t> one_based_entries) {
    return Sequencer(SequencerKind::kCustomPattern, std::move(one_based_entries));
  }

  // "sesqui-rr", "round-robin" or "pattern:<p>" with p like "1,2,2".
  // Throws Error(kUnknownAlgorithm) otherwise.
  static Sequencer parse(std::string_view name);

  SequencerKind kind() const { return kind_; }
  Pattern pattern(std::size_t agents) const;
  std::string name() const;

 private:
  Sequencer(SequencerKind kind, std::vector<std::size_t> custom)
      : kind_(kind), custom_(std::move(custom)) {}

  SequencerKind kind_;
  std::vector<std::size_t> custom_;
};

// Full ordinal pipeline: expand the sequencer's pattern to an IDO sequence,
// then let agents pick in the reverse of that sequence against their reported
// rankings. Never reads cardinal costs.
Allocation run_ordinal(const OrdinalProfile& profile, const Sequencer& sequencer);

}  // namespace chorefair
