#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "control_forge/control.hpp"
#include "control_forge/hardness.hpp"

namespace control_forge::cli {

/// A parsed election file.
struct ElectionDocument {
  Election election;
  std::optional<std::string> distinguished;
  /// Source line of each vote group, 1-based.
  std::vector<std::size_t> vote_lines;
};

/// Throws Error(parse_error) with a "line N:" prefix on malformed input.
ElectionDocument parse_election(std::string_view text);

std::string serialize_election(
    const Election& election,
    const std::optional<std::string>& distinguished = std::nullopt);

std::string format_ballot(const Ballot& ballot, const Election& election);

/// "{a,c}" in candidate order.
std::string format_set(CandidateSet set, const Election& election);

/// `block1: a c | block2: b`, or voter indices for voter partitions.
/// Blocks must be disjoint and cover every candidate (voter).
Partition parse_partition(std::string_view text, PartitionKind kind,
                          const Election& election);

std::string serialize_partition(const Partition& partition,
                                const Election& election);

/// `elements: ...`, then `k: <int>`, then one `set: ...` line per set.
HittingSetInstance parse_hitting_set(std::string_view text);

std::string serialize_hitting_set(const HittingSetInstance& hs);

}  // namespace control_forge::cli
