#include "control_forge/solvers.hpp"

#include "control_forge/error.hpp"

namespace control_forge {

namespace {

void require_encodable(std::size_t length) {
  if (length >= 64) {
    throw Error(ErrorCode::universe_too_large,
                "partition encodings longer than 63 bits cannot be enumerated");
  }
}

bool is_approval_immune_type(ControlType type) {
  static const ControlType kImmune[] = {
      ControlType::parse("DC-PC-TE-UW"), ControlType::parse("DC-PC-TP-NUW"),
      ControlType::parse("CC-PC-TP-UW"), ControlType::parse("CC-PC-TP-NUW")};
  for (const ControlType& t : kImmune) {
    if (t == type) return true;
  }
  return false;
}

}  // namespace

std::size_t encoding_length(PartitionKind kind,
                            const ControlInstance& instance) {
  return kind == PartitionKind::voter ? instance.votes().voter_count()
                                      : instance.election().candidate_count();
}

Partition partition_from_code(PartitionKind kind, std::size_t length,
                              std::uint64_t code) {
  Partition partition;
  partition.kind = kind;
  for (std::size_t i = 0; i < length; ++i) {
    const bool in_first = ((code >> (length - 1 - i)) & 1U) != 0;
    (in_first ? partition.first : partition.second).push_back(i);
  }
  return partition;
}

std::vector<bool> encode_partition(const Partition& partition,
                                   std::size_t length) {
  std::vector<bool> bits(length, false);
  for (std::size_t x : partition.first) {
    if (x < length) bits[x] = true;
  }
  return bits;
}

void for_each_partition(PartitionKind kind, std::size_t length,
                        const std::function<bool(const Partition&)>& visit) {
  require_encodable(length);
  const std::uint64_t count = std::uint64_t{1} << length;
  for (std::uint64_t code = 0; code < count; ++code) {
    if (!visit(partition_from_code(kind, length, code))) return;
  }
}

std::vector<Partition> enumerate_partitions(const ControlInstance& instance,
                                            PartitionKind kind) {
  std::vector<Partition> all;
  for_each_partition(kind, encoding_length(kind, instance),
                     [&](const Partition& p) {
                       all.push_back(p);
                       return true;
                     });
  return all;
}

SolveOutcome brute_force_search(ControlType type,
                                const ControlInstance& instance) {
  const PartitionKind kind = partition_kind(type.action);
  SolveOutcome found;
  for_each_partition(kind, encoding_length(kind, instance),
                     [&](const Partition& candidate) {
                       if (!verify_solution(type, instance, candidate)) {
                         return true;
                       }
                       found = candidate;
                       return false;
                     });
  return found;
}

SolveOutcome immunity_search_approval(ControlType type,
                                      const ControlInstance& instance) {
  if (instance.system() != System::approval ||
      !is_approval_immune_type(type)) {
    throw Error(ErrorCode::unsupported_algorithm,
                "immunity search covers approval DC-PC-TE-UW, DC-PC-TP-NUW, "
                "CC-PC-TP-UW and CC-PC-TP-NUW only, not " +
                    std::string(to_string(instance.system())) + " " +
                    type.to_string());
  }
  const CandidateSet all = instance.candidates();
  const CandidateSet w = winners(System::approval, all, instance.votes());
  const std::size_t p = instance.distinguished();
  // With (empty, C) the final round is (C, V) itself, so the goal holds
  // exactly when it already holds before control.
  const bool goal_holds_now =
      goal_satisfied(type.direction, type.winner_model, p, w);
  if (!goal_holds_now) return std::nullopt;
  return Partition::of_candidates(CandidateSet{}, all);
}

SolveOutcome cc_rpc_te_nuw_search_approval(const ControlInstance& instance) {
  if (instance.system() != System::approval) {
    throw Error(ErrorCode::unsupported_algorithm,
                "CC-RPC-TE-NUW search algorithm requires approval voting");
  }
  const CandidateSet all = instance.candidates();
  const Scores approvals = scores(System::approval, all, instance.votes());
  std::size_t top = 0;
  for (std::size_t a : all) top = std::max(top, approvals[a]);
  std::size_t at_top = 0;
  for (std::size_t a : all) at_top += approvals[a] == top ? 1 : 0;

  const std::size_t p = instance.distinguished();
  if (approvals[p] != top && at_top == 1) return std::nullopt;
  CandidateSet alone;
  alone.insert(p);
  return Partition::of_candidates(alone, all - alone);
}

bool has_polynomial_algorithm(System system, ControlType type) {
  if (system != System::approval) return false;
  return is_approval_immune_type(type) ||
         type == ControlType::parse("CC-RPC-TE-NUW");
}

SolveOutcome polynomial_search(ControlType type,
                               const ControlInstance& instance) {
  if (!has_polynomial_algorithm(instance.system(), type)) {
    throw Error(ErrorCode::unsupported_algorithm,
                std::string("no polynomial-time algorithm for ") +
                    to_string(instance.system()) + " " + type.to_string());
  }
  if (type == ControlType::parse("CC-RPC-TE-NUW")) {
    return cc_rpc_te_nuw_search_approval(instance);
  }
  return immunity_search_approval(type, instance);
}

DecisionOracle brute_force_oracle() {
  return [](ControlType type, const ControlInstance& instance,
            const std::vector<bool>& prefix) {
    const PartitionKind kind = partition_kind(type.action);
    const std::size_t length = encoding_length(kind, instance);
    require_encodable(length);
    if (prefix.size() > length) return false;
    std::uint64_t head = 0;
    for (bool bit : prefix) head = (head << 1) | (bit ? 1U : 0U);
    const std::size_t free_bits = length - prefix.size();
    const std::uint64_t completions = std::uint64_t{1} << free_bits;
    for (std::uint64_t tail = 0; tail < completions; ++tail) {
      const std::uint64_t code = (head << free_bits) | tail;
      if (verify_solution(type, instance,
                          partition_from_code(kind, length, code))) {
        return true;
      }
    }
    return false;
  };
}

OracleSearchResult lex_min_search_with_oracle(ControlType type,
                                              const ControlInstance& instance,
                                              const DecisionOracle& oracle) {
  OracleSearchResult result;
  auto ask = [&](const std::vector<bool>& prefix) {
    ++result.oracle_calls;
    return oracle(type, instance, prefix);
  };

  std::vector<bool> prefix;
  if (!ask(prefix)) return result;

  const PartitionKind kind = partition_kind(type.action);
  const std::size_t length = encoding_length(kind, instance);
  require_encodable(length);
  for (std::size_t i = 0; i < length; ++i) {
    prefix.push_back(false);
    if (ask(prefix)) continue;
    prefix.back() = true;
    if (!ask(prefix)) {
      throw Error(ErrorCode::oracle_inconsistency,
                  "oracle rejects both extensions of a feasible prefix");
    }
  }

  std::uint64_t code = 0;
  for (bool bit : prefix) code = (code << 1) | (bit ? 1U : 0U);
  Partition found = partition_from_code(kind, length, code);
  if (!verify_solution(type, instance, found)) {
    throw Error(ErrorCode::oracle_inconsistency,
                "oracle led to a partition that does not verify");
  }
  result.outcome = std::move(found);
  return result;
}

}  // namespace control_forge
