#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "control_forge/candidate_set.hpp"

namespace control_forge {

enum class System { plurality, veto, approval };
enum class VoteKind { linear, approval };

const char* to_string(System system);
std::optional<System> parse_system(std::string_view text);
VoteKind vote_kind(System system);

/// One ballot. Linear ballots list candidate indices best-first in `order`;
/// approval ballots set the approved candidates in `approvals`.
struct Ballot {
  std::vector<std::size_t> order;
  CandidateSet approvals;

  static Ballot linear(std::vector<std::size_t> order) {
    return Ballot{std::move(order), {}};
  }
  static Ballot approval(CandidateSet approved) { return Ballot{{}, approved}; }

  friend bool operator==(const Ballot&, const Ballot&) = default;
};

struct BallotGroup {
  Ballot ballot;
  std::size_t multiplicity = 1;

  friend bool operator==(const BallotGroup&, const BallotGroup&) = default;
};

/// A multiset of ballots of one kind over a common candidate universe.
/// Voters are numbered 0..n-1 by expanding the groups in order, so two
/// identical ballots remain distinguishable as separate voters.
class VoteCollection {
 public:
  VoteCollection(VoteKind kind, CandidateSet universe,
                 std::vector<BallotGroup> groups);

  VoteKind kind() const { return kind_; }
  CandidateSet universe() const { return universe_; }
  const std::vector<BallotGroup>& groups() const { return groups_; }
  std::size_t voter_count() const { return voter_group_.size(); }
  const Ballot& ballot_of_voter(std::size_t voter) const {
    return groups_[voter_group_.at(voter)].ballot;
  }

  /// The sub-multiset made of the given voters, one group per voter.
  VoteCollection select_voters(std::span<const std::size_t> voters) const;

  friend bool operator==(const VoteCollection& a, const VoteCollection& b) {
    return a.kind_ == b.kind_ && a.universe_ == b.universe_ &&
           a.groups_ == b.groups_;
  }

 private:
  VoteKind kind_;
  CandidateSet universe_;
  std::vector<BallotGroup> groups_;
  std::vector<std::size_t> voter_group_;
};

/// Whether `name` is usable as a candidate name in elections and files.
bool is_valid_candidate_name(std::string_view name);

class Election {
 public:
  Election(System system, std::vector<std::string> candidates,
           VoteCollection votes);

  System system() const { return system_; }
  const std::vector<std::string>& candidates() const { return candidates_; }
  std::size_t candidate_count() const { return candidates_.size(); }
  CandidateSet all_candidates() const {
    return CandidateSet::first_n(candidates_.size());
  }
  const VoteCollection& votes() const { return votes_; }
  const std::string& name(std::size_t index) const {
    return candidates_.at(index);
  }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Resolves names to a set; throws invalid_candidate on unknown names.
  CandidateSet set_of(std::span<const std::string> names) const;
  std::vector<std::string> names_of(CandidateSet set) const;

  friend bool operator==(const Election&, const Election&) = default;

 private:
  System system_;
  std::vector<std::string> candidates_;
  VoteCollection votes_;
};

/// Per-candidate counts: first places (plurality), last places (veto) or
/// approvals (approval). Entries outside `candidates` are zero.
struct Scores {
  CandidateSet candidates;
  std::array<std::size_t, kMaxCandidates> count{};

  std::size_t operator[](std::size_t candidate) const {
    return count.at(candidate);
  }
};

/// Restricts every ballot to `subset`; linear ballots keep relative order,
/// approval ballots keep the bits of retained candidates.
VoteCollection mask_votes(const VoteCollection& votes, CandidateSet subset);

Scores scores(System system, CandidateSet candidates,
              const VoteCollection& votes);

CandidateSet winners(System system, CandidateSet candidates,
                     const VoteCollection& votes);

/// winners() when it has exactly one member, otherwise the empty set.
CandidateSet unique_winner_if_any(System system, CandidateSet candidates,
                                  const VoteCollection& votes);

}  // namespace control_forge
