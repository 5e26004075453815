#include "control_forge/elections.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "control_forge/error.hpp"

namespace control_forge {

const char* to_string(System system) {
  switch (system) {
    case System::plurality: return "plurality";
    case System::veto: return "veto";
    case System::approval: return "approval";
  }
  return "?";
}

std::optional<System> parse_system(std::string_view text) {
  if (text == "plurality") return System::plurality;
  if (text == "veto") return System::veto;
  if (text == "approval") return System::approval;
  return std::nullopt;
}

VoteKind vote_kind(System system) {
  return system == System::approval ? VoteKind::approval : VoteKind::linear;
}

namespace {

void check_ballot(VoteKind kind, CandidateSet universe, const Ballot& ballot) {
  if (kind == VoteKind::approval) {
    if (!ballot.order.empty()) {
      throw Error(ErrorCode::invalid_election,
                  "approval ballot carries a linear order");
    }
    if (!ballot.approvals.is_subset_of(universe)) {
      throw Error(ErrorCode::invalid_candidate,
                  "approval ballot approves a candidate outside the universe");
    }
    return;
  }
  if (!ballot.approvals.empty()) {
    throw Error(ErrorCode::invalid_election,
                "linear ballot carries approval bits");
  }
  CandidateSet seen;
  for (std::size_t c : ballot.order) {
    if (!universe.contains(c)) {
      throw Error(ErrorCode::invalid_candidate,
                  "linear ballot ranks a candidate outside the universe");
    }
    if (seen.contains(c)) {
      throw Error(ErrorCode::invalid_election,
                  "linear ballot ranks a candidate twice");
    }
    seen.insert(c);
  }
  if (seen != universe) {
    throw Error(ErrorCode::invalid_election,
                "linear ballot is not a complete ranking of the universe");
  }
}

}  // namespace

VoteCollection::VoteCollection(VoteKind kind, CandidateSet universe,
                               std::vector<BallotGroup> groups)
    : kind_(kind), universe_(universe), groups_(std::move(groups)) {
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (groups_[g].multiplicity == 0) {
      throw Error(ErrorCode::invalid_election,
                  "ballot multiplicity must be positive");
    }
    check_ballot(kind_, universe_, groups_[g].ballot);
    voter_group_.insert(voter_group_.end(), groups_[g].multiplicity, g);
  }
}

VoteCollection VoteCollection::select_voters(
    std::span<const std::size_t> voters) const {
  std::vector<BallotGroup> picked;
  picked.reserve(voters.size());
  for (std::size_t v : voters) {
    picked.push_back(BallotGroup{ballot_of_voter(v), 1});
  }
  return VoteCollection(kind_, universe_, std::move(picked));
}

bool is_valid_candidate_name(std::string_view name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](unsigned char ch) {
    return std::isspace(ch) || ch == '>' || ch == ',' || ch == '{' ||
           ch == '}' || ch == '|' || ch == ':' || ch == '#';
  });
}

Election::Election(System system, std::vector<std::string> candidates,
                   VoteCollection votes)
    : system_(system),
      candidates_(std::move(candidates)),
      votes_(std::move(votes)) {
  if (candidates_.size() > kMaxCandidates) {
    throw Error(ErrorCode::invalid_election,
                "at most 64 candidates are supported");
  }
  std::unordered_set<std::string_view> seen;
  for (const std::string& name : candidates_) {
    if (!is_valid_candidate_name(name)) {
      throw Error(ErrorCode::invalid_candidate,
                  "invalid candidate name '" + name + "'");
    }
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::invalid_candidate,
                  "duplicate candidate '" + name + "'");
    }
  }
  if (votes_.kind() != vote_kind(system_)) {
    throw Error(ErrorCode::invalid_election,
                std::string("vote kind does not match system ") +
                    to_string(system_));
  }
  if (votes_.universe() != all_candidates()) {
    throw Error(ErrorCode::invalid_election,
                "votes are not over the election's candidate set");
  }
}

std::optional<std::size_t> Election::index_of(std::string_view name) const {
  auto it = std::find(candidates_.begin(), candidates_.end(), name);
  if (it == candidates_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - candidates_.begin());
}

CandidateSet Election::set_of(std::span<const std::string> names) const {
  CandidateSet set;
  for (const std::string& name : names) {
    auto index = index_of(name);
    if (!index) {
      throw Error(ErrorCode::invalid_candidate,
                  "unknown candidate '" + name + "'");
    }
    set.insert(*index);
  }
  return set;
}

std::vector<std::string> Election::names_of(CandidateSet set) const {
  std::vector<std::string> names;
  for (std::size_t c : set) names.push_back(name(c));
  return names;
}

namespace {

void require_subset(CandidateSet subset, CandidateSet universe) {
  if (!subset.is_subset_of(universe)) {
    throw Error(ErrorCode::invalid_candidate,
                "candidate subset is not within the votes' universe");
  }
}

}  // namespace

VoteCollection mask_votes(const VoteCollection& votes, CandidateSet subset) {
  require_subset(subset, votes.universe());
  std::vector<BallotGroup> masked;
  masked.reserve(votes.groups().size());
  for (const BallotGroup& group : votes.groups()) {
    Ballot ballot;
    if (votes.kind() == VoteKind::linear) {
      for (std::size_t c : group.ballot.order) {
        if (subset.contains(c)) ballot.order.push_back(c);
      }
    } else {
      ballot.approvals = group.ballot.approvals & subset;
    }
    masked.push_back(BallotGroup{std::move(ballot), group.multiplicity});
  }
  return VoteCollection(votes.kind(), subset, std::move(masked));
}

// Counting directly against `candidates` gives the same result as counting
// on mask_votes(votes, candidates); the scan avoids building the copy.
Scores scores(System system, CandidateSet candidates,
              const VoteCollection& votes) {
  require_subset(candidates, votes.universe());
  Scores result;
  result.candidates = candidates;
  if (candidates.empty()) return result;
  for (const BallotGroup& group : votes.groups()) {
    const Ballot& ballot = group.ballot;
    switch (system) {
      case System::plurality: {
        auto it = std::find_if(
            ballot.order.begin(), ballot.order.end(),
            [&](std::size_t c) { return candidates.contains(c); });
        result.count[*it] += group.multiplicity;
        break;
      }
      case System::veto: {
        auto it = std::find_if(
            ballot.order.rbegin(), ballot.order.rend(),
            [&](std::size_t c) { return candidates.contains(c); });
        result.count[*it] += group.multiplicity;
        break;
      }
      case System::approval:
        for (std::size_t c : ballot.approvals & candidates) {
          result.count[c] += group.multiplicity;
        }
        break;
    }
  }
  return result;
}

CandidateSet winners(System system, CandidateSet candidates,
                     const VoteCollection& votes) {
  const Scores s = scores(system, candidates, votes);
  CandidateSet best;
  if (system == System::veto) {
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t c : candidates) fewest = std::min(fewest, s[c]);
    for (std::size_t c : candidates) {
      if (s[c] == fewest) best.insert(c);
    }
  } else {
    std::size_t most = 0;
    for (std::size_t c : candidates) most = std::max(most, s[c]);
    for (std::size_t c : candidates) {
      if (s[c] == most) best.insert(c);
    }
  }
  return best;
}

CandidateSet unique_winner_if_any(System system, CandidateSet candidates,
                                  const VoteCollection& votes) {
  CandidateSet w = winners(system, candidates, votes);
  return w.size() == 1 ? w : CandidateSet{};
}

}  // namespace control_forge
