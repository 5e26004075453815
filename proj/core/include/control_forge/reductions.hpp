#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "control_forge/control.hpp"
#include "control_forge/solvers.hpp"

namespace control_forge {

/// Result of turning a solution of one type into a solution of another on
/// the same instance. No solution means the input was rejected because it
/// did not verify for the consumed type.
struct TransferOutcome {
  std::optional<Partition> solution;
  /// Produced by exhaustive search rather than a direct construction.
  bool fallback = false;

  bool rejected() const { return !solution.has_value(); }
};

enum class TpNuwDirection { pc_from_rpc, rpc_from_pc };

/// DC-PC-TP-NUW and DC-RPC-TP-NUW, for any election system.
TransferOutcome transfer_tp_nuw(TpNuwDirection direction,
                                const ControlInstance& instance,
                                const Partition& solution);

/// The four steps of the closed reduction cycle among DC-RPC-TE-UW,
/// DC-RPC-TE-NUW, DC-PC-TE-NUW and DC-PC-TE-UW.
enum class TeCycleStep {
  uwrpc_from_nuwrpc,
  nuwrpc_from_nuwpc,
  nuwpc_from_uwpc,
  uwpc_from_uwrpc,
};

TransferOutcome transfer_te_cycle(TeCycleStep step,
                                  const ControlInstance& instance,
                                  const Partition& solution);

/// Type pairs whose yes-instances are characterized by whether p (uniquely)
/// wins (C, V) under approval, so (empty, C) always solves both.
enum class EmptyBlockVariant {
  uwarp_dc,            // DC-PC-TP-UW  / DC-PC-TE-UW
  uwarp_cc,            // CC-PC-TP-UW  / CC-RPC-TP-UW
  approval_dc_tp_uw,   // DC-RPC-TP-UW / DC-PC-TP-UW
  approval_cc_tp_nuw,  // CC-PC-TP-NUW / CC-RPC-TP-NUW
};

/// Which member of a pair is produced: `forward` produces the first listed
/// type from a solution of the second.
enum class PairDirection { forward, backward };

struct TypePair {
  ControlType first;
  ControlType second;
};

TypePair empty_block_pair(EmptyBlockVariant variant);

TransferOutcome transfer_empty_block(EmptyBlockVariant variant,
                                     PairDirection direction,
                                     const ControlInstance& instance,
                                     const Partition& solution);

/// DC-PV-TE-UW from DC-PV-TE-NUW: an NUW success is already a UW success.
enum class IdentityPair { veto_dc_pv_te, approval_dc_pv_te };

TransferOutcome transfer_identity(IdentityPair pair,
                                  const ControlInstance& instance,
                                  const Partition& solution);

/// Verifies `solution` for `consumed`, then returns the lexicographically
/// least solution for `produced` found by exhaustive search. Exponential;
/// stands in for constructions not reproduced here.
TransferOutcome transfer_fallback(
    ControlType produced, ControlType consumed,
    const ControlInstance& instance, const Partition& solution,
    std::uint64_t evaluation_cap = kDefaultEvaluationCap);

enum class Construction { tp_nuw, te_cycle_step, empty_block, identity,
                          fallback, composed };

const char* to_string(Construction construction);

/// A registered solution transfer: given a solution for `consumes`, yields
/// a solution for `produces` on the same instance.
struct TransferRule {
  ControlType produces;
  ControlType consumes;
  std::vector<System> systems;
  Construction construction = Construction::fallback;
  std::string name;
  std::string provenance;
  std::function<TransferOutcome(const ControlInstance&, const Partition&)>
      apply;

  bool covers(System system) const;
};

/// Every implemented transfer, constructive ones first.
const std::vector<TransferRule>& transfer_rules();

std::vector<const TransferRule*> rules_for(System system);

/// The rule applying `inner` first and then `outer`. Throws
/// composition_mismatch unless outer.consumes == inner.produces.
TransferRule compose_rules(const TransferRule& outer, const TransferRule& inner);

TransferOutcome compose(const TransferRule& outer, const TransferRule& inner,
                        const ControlInstance& instance,
                        const Partition& solution);

/// Shortest chain of rules turning `consumed` solutions into `produced`
/// ones for `system`, preferring chains without fallback steps. The result
/// is ordered outermost first.
std::optional<std::vector<const TransferRule*>> find_transfer_chain(
    System system, ControlType produced, ControlType consumed,
    bool allow_fallback = true);

/// Folds a chain (outermost first) into a single composed rule.
TransferRule chain_rule(const std::vector<const TransferRule*>& chain);

/// Polynomial search for a type without its own algorithm: solve a
/// collapsing partner that has one and carry the solution across with
/// constructive transfers only. std::nullopt if no such route exists.
struct TransferredSearch {
  SolveOutcome outcome;
  ControlType solved_type;
  std::string route;
};

std::optional<TransferredSearch> polynomial_search_via_transfer(
    ControlType type, const ControlInstance& instance);

}  // namespace control_forge
