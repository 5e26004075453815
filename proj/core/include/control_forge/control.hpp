#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "control_forge/candidate_set.hpp"
#include "control_forge/elections.hpp"

namespace control_forge {

enum class Direction { constructive, destructive };  // CC / DC
enum class Action { pc, rpc, pv };
enum class TieRule { te, tp };
enum class WinnerModel { uw, nuw };

/// One of the 24 partition control types, e.g. DC-RPC-TE-UW.
struct ControlType {
  Direction direction = Direction::constructive;
  Action action = Action::pc;
  TieRule tie_rule = TieRule::te;
  WinnerModel winner_model = WinnerModel::uw;

  std::string to_string() const;
  /// Parses the hyphenated tag, case-insensitively; throws parse_error.
  static ControlType parse(std::string_view text);
  /// Dense index in 0..23, matching all_control_types().
  std::size_t index() const;

  friend auto operator<=>(const ControlType&, const ControlType&) = default;
};

const std::array<ControlType, 24>& all_control_types();

enum class PartitionKind { candidate, voter };

constexpr PartitionKind partition_kind(Action action) {
  return action == Action::pv ? PartitionKind::voter
                              : PartitionKind::candidate;
}

/// A bipartition of candidate indices or of voter indices. Blocks are kept
/// as given so that malformed inputs can be represented and rejected.
struct Partition {
  PartitionKind kind = PartitionKind::candidate;
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;

  static Partition of_candidates(CandidateSet first, CandidateSet second) {
    return Partition{PartitionKind::candidate, first.to_vector(),
                     second.to_vector()};
  }
  static Partition of_voters(std::vector<std::size_t> first,
                             std::vector<std::size_t> second) {
    return Partition{PartitionKind::voter, std::move(first),
                     std::move(second)};
  }

  /// Candidate blocks as sets. Only meaningful for candidate partitions.
  CandidateSet first_set() const;
  CandidateSet second_set() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// (C, V, p): an election and the distinguished candidate.
class ControlInstance {
 public:
  ControlInstance(Election election, std::size_t distinguished);

  const Election& election() const { return election_; }
  System system() const { return election_.system(); }
  CandidateSet candidates() const { return election_.all_candidates(); }
  const VoteCollection& votes() const { return election_.votes(); }
  std::size_t distinguished() const { return distinguished_; }

  friend bool operator==(const ControlInstance&,
                         const ControlInstance&) = default;

 private:
  Election election_;
  std::size_t distinguished_;
};

struct FirstRound {
  CandidateSet candidates;
  /// Set for partition-of-voters rounds: the voters of this subelection.
  std::optional<std::vector<std::size_t>> voters;
  CandidateSet winners;
  CandidateSet survivors;
};

struct TwoStageTrace {
  ControlType type;
  std::vector<FirstRound> first_rounds;
  /// PC only: the second block, which enters the final round unfiltered.
  CandidateSet passed_through;
  CandidateSet final_candidates;
  CandidateSet final_winners;
};

CandidateSet survivors(System system, CandidateSet subset,
                       const VoteCollection& votes, TieRule tie_rule);

/// Structural problem with `partition` for `type` over `instance`, if any.
std::optional<std::string> partition_problem(ControlType type,
                                             const ControlInstance& instance,
                                             const Partition& partition);

/// Runs the two-stage election; throws invalid_partition on a malformed
/// partition or a kind that does not match the action.
TwoStageTrace run_two_stage(ControlType type, const ControlInstance& instance,
                            const Partition& partition);

bool goal_satisfied(Direction direction, WinnerModel model,
                    std::size_t distinguished, CandidateSet final_winners);

struct Verdict {
  bool success = false;
  std::string diagnostic;
  std::optional<TwoStageTrace> trace;
};

/// Never throws on malformed partitions: they yield success == false with
/// a diagnostic.
Verdict check_solution(ControlType type, const ControlInstance& instance,
                       const Partition& partition);

bool verify_solution(ControlType type, const ControlInstance& instance,
                     const Partition& partition);

/// Groups of control types known to coincide as sets for `system`, one
/// group per row of the summary table for plurality, veto and approval.
std::vector<std::vector<ControlType>> collapse_classes(System system);

bool is_collapsing_pair(System system, ControlType first, ControlType second);

}  // namespace control_forge
