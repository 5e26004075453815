#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "control_forge/candidate_set.hpp"
#include "control_forge/control.hpp"

namespace control_forge {

/// (B, S, k): is there B' of size at most k meeting every set in S?
/// Sets hold indices into `elements`.
struct HittingSetInstance {
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> sets;
  std::size_t k = 1;

  /// Throws invalid_instance: k outside 1..m, an empty or out-of-range
  /// set, repeated or unusable element names.
  void validate() const;

  friend bool operator==(const HittingSetInstance&,
                         const HittingSetInstance&) = default;
};

/// Which construction clause a vote group came from.
enum class VoteClause { c_over_w, w_over_c, set_over_c, element_over_w };

const char* to_string(VoteClause clause);

/// The plurality instance built from a hitting-set instance. Candidates are
/// the elements in input order followed by "c" and "w"; the distinguished
/// candidate is c.
struct EncodedInstance {
  HittingSetInstance source;
  ControlInstance instance;
  /// One entry per vote group of instance.votes().
  std::vector<VoteClause> clauses;
  std::size_t c = 0;
  std::size_t w = 0;
};

inline const ControlType kHardnessType = {
    Direction::destructive, Action::pc, TieRule::tp, WinnerModel::nuw};

EncodedInstance encode_hitting_set(const HittingSetInstance& hs);

/// Element indices as a candidate set of the encoded election (element i is
/// candidate i).
CandidateSet element_set(const std::vector<std::size_t>& elements);

bool is_hitting_set(const HittingSetInstance& hs, CandidateSet chosen);

/// (B' + {c, w}, the rest). Throws invalid_witness unless `chosen` is a
/// hitting set of size at most k.
Partition forward_partition(const HittingSetInstance& hs, CandidateSet chosen);

/// The elements present in the round c loses, or std::nullopt when the
/// partition does not verify for DC-PC-TP-NUW.
std::optional<CandidateSet> extract_hitting_set(const EncodedInstance& encoded,
                                                const Partition& solution);

/// Smallest hitting set of size at most k, lexicographically least among
/// those (element 0 first), or std::nullopt.
std::optional<CandidateSet> brute_force_hitting_set(
    const HittingSetInstance& hs);

}  // namespace control_forge
