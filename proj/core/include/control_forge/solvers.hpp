#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "control_forge/control.hpp"

namespace control_forge {

/// A solution, or std::nullopt when no partition achieves the control goal.
using SolveOutcome = std::optional<Partition>;

/// Number of bits in a partition encoding: one per candidate for PC/RPC,
/// one per voter for PV.
std::size_t encoding_length(PartitionKind kind, const ControlInstance& instance);

/// Partition whose first block has characteristic string `code`, read with
/// element 0 as the most significant of `length` bits.
Partition partition_from_code(PartitionKind kind, std::size_t length,
                              std::uint64_t code);

/// The characteristic bit-string of the first block, element 0 first.
std::vector<bool> encode_partition(const Partition& partition,
                                   std::size_t length);

/// Calls `visit` on every bipartition in lexicographic order of the
/// encoding; stops early when `visit` returns false.
void for_each_partition(PartitionKind kind, std::size_t length,
                        const std::function<bool(const Partition&)>& visit);

std::vector<Partition> enumerate_partitions(const ControlInstance& instance,
                                            PartitionKind kind);

/// The lexicographically least verifying partition, if any.
SolveOutcome brute_force_search(ControlType type,
                                const ControlInstance& instance);

/// For approval and the four PC types approval is immune to
/// (DC-PC-TE-UW, DC-PC-TP-NUW, CC-PC-TP-UW, CC-PC-TP-NUW): either the goal
/// already fails before control and nothing can help, or (empty, C) works.
SolveOutcome immunity_search_approval(ControlType type,
                                      const ControlInstance& instance);

/// Approval CC-RPC-TE-NUW in polynomial time.
SolveOutcome cc_rpc_te_nuw_search_approval(const ControlInstance& instance);

/// Whether a polynomial-time search algorithm is implemented for the pair.
bool has_polynomial_algorithm(System system, ControlType type);

/// Dispatches to the polynomial algorithm; throws unsupported_algorithm.
SolveOutcome polynomial_search(ControlType type,
                               const ControlInstance& instance);

/// Answers "does some verifying partition have an encoding that starts
/// with `prefix`?".
using DecisionOracle = std::function<bool(
    ControlType, const ControlInstance&, const std::vector<bool>& prefix)>;

/// An oracle that answers by enumerating the completions of the prefix.
DecisionOracle brute_force_oracle();

struct OracleSearchResult {
  SolveOutcome outcome;
  std::size_t oracle_calls = 0;
};

/// Fixes the encoding bit by bit, preferring 0, with at most 2L+1 oracle
/// calls. Throws oracle_inconsistency if the oracle contradicts itself or
/// the assembled partition fails verification.
OracleSearchResult lex_min_search_with_oracle(ControlType type,
                                              const ControlInstance& instance,
                                              const DecisionOracle& oracle);

// --- universes of small instances ------------------------------------------

inline constexpr std::uint64_t kDefaultEvaluationCap = 10'000'000;

struct UniverseSpec {
  System system = System::plurality;
  std::size_t max_candidates = 0;
  std::size_t max_votes = 0;
  /// Treat vote collections as multisets (one representative per multiset).
  bool canonical_multisets = true;
  std::uint64_t evaluation_cap = kDefaultEvaluationCap;
  unsigned threads = 1;

  std::string describe() const;
};

/// Every distinct ballot over `count` candidates, in a fixed order.
std::vector<Ballot> all_ballots(VoteKind kind, std::size_t count);

std::uint64_t universe_instance_count(const UniverseSpec& spec);

/// Two-stage evaluations needed to brute-force the given types on every
/// instance of the universe.
std::uint64_t universe_evaluation_estimate(
    const UniverseSpec& spec, const std::vector<ControlType>& types);

/// Every instance: 1..max_candidates candidates named a, b, c, ...,
/// 0..max_votes votes, every choice of distinguished candidate.
std::vector<ControlInstance> universe_instances(const UniverseSpec& spec);

struct Counterexample {
  ControlInstance instance;
  bool in_first = false;  // member of the first type but not the second
  SolveOutcome witness;   // the solution for the type it belongs to
};

struct ScanReport {
  std::string universe;
  ControlType first;
  ControlType second;
  std::uint64_t instances_checked = 0;
  std::vector<Counterexample> counterexamples;

  bool agree() const { return counterexamples.empty(); }
};

/// Compares membership in two types on every instance of the universe.
/// Throws universe_too_large when the estimate exceeds the cap.
ScanReport collapse_scan(ControlType first, ControlType second,
                         const UniverseSpec& spec);

}  // namespace control_forge
