#include "control_forge/reductions.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "control_forge/error.hpp"

namespace control_forge {

namespace {

ControlType t(std::string_view tag) { return ControlType::parse(tag); }

TransferOutcome rejected() { return TransferOutcome{}; }

TransferOutcome accept(Partition partition) {
  return TransferOutcome{std::move(partition), false};
}

}  // namespace

TransferOutcome transfer_tp_nuw(TpNuwDirection direction,
                                const ControlInstance& instance,
                                const Partition& solution) {
  const ControlType rpc = t("DC-RPC-TP-NUW");
  const ControlType pc = t("DC-PC-TP-NUW");
  const ControlType consumed =
      direction == TpNuwDirection::pc_from_rpc ? rpc : pc;
  const Verdict verdict = check_solution(consumed, instance, solution);
  if (!verdict.success) return rejected();

  const std::size_t p = instance.distinguished();
  const CandidateSet all = instance.candidates();
  const TwoStageTrace& trace = *verdict.trace;

  if (direction == TpNuwDirection::pc_from_rpc) {
    // p lost in exactly one election it took part in; that election's
    // candidate set becomes the PC first block.
    CandidateSet lost_in = trace.final_candidates;
    for (const FirstRound& round : trace.first_rounds) {
      if (round.candidates.contains(p) && !round.winners.contains(p)) {
        lost_in = round.candidates;
      }
    }
    return accept(Partition::of_candidates(lost_in, all - lost_in));
  }

  const FirstRound& round = trace.first_rounds.front();
  if (round.candidates.contains(p) && !round.winners.contains(p)) {
    return accept(solution);
  }
  const CandidateSet d = solution.second_set() | round.winners;
  return accept(Partition::of_candidates(d, all - d));
}

TransferOutcome transfer_te_cycle(TeCycleStep step,
                                  const ControlInstance& instance,
                                  const Partition& solution) {
  ControlType consumed;
  switch (step) {
    case TeCycleStep::uwrpc_from_nuwrpc: consumed = t("DC-RPC-TE-NUW"); break;
    case TeCycleStep::nuwrpc_from_nuwpc: consumed = t("DC-PC-TE-NUW"); break;
    case TeCycleStep::nuwpc_from_uwpc: consumed = t("DC-PC-TE-UW"); break;
    case TeCycleStep::uwpc_from_uwrpc: consumed = t("DC-RPC-TE-UW"); break;
  }
  if (!verify_solution(consumed, instance, solution)) return rejected();
  if (step == TeCycleStep::uwrpc_from_nuwrpc) return accept(solution);

  const System system = instance.system();
  const VoteCollection& votes = instance.votes();
  const std::size_t p = instance.distinguished();
  const CandidateSet all = instance.candidates();
  CandidateSet c1 = solution.first_set();
  CandidateSet c2 = solution.second_set();

  if (step == TeCycleStep::uwpc_from_uwrpc && c2.contains(p)) {
    std::swap(c1, c2);
  }
  const CandidateSet unique1 = unique_winner_if_any(system, c1, votes);
  // Case (a): p is in C1 and does not uniquely win there, so p is already
  // eliminated in the first round of the produced type.
  if (c1.contains(p) && unique1 != CandidateSet::of({p})) {
    return accept(Partition::of_candidates(c1, c2));
  }
  const CandidateSet d =
      step == TeCycleStep::uwpc_from_uwrpc
          ? unique1 | unique_winner_if_any(system, c2, votes)
          : unique1 | c2;
  return accept(Partition::of_candidates(d, all - d));
}

TypePair empty_block_pair(EmptyBlockVariant variant) {
  switch (variant) {
    case EmptyBlockVariant::uwarp_dc:
      return {t("DC-PC-TP-UW"), t("DC-PC-TE-UW")};
    case EmptyBlockVariant::uwarp_cc:
      return {t("CC-PC-TP-UW"), t("CC-RPC-TP-UW")};
    case EmptyBlockVariant::approval_dc_tp_uw:
      return {t("DC-RPC-TP-UW"), t("DC-PC-TP-UW")};
    case EmptyBlockVariant::approval_cc_tp_nuw:
      return {t("CC-PC-TP-NUW"), t("CC-RPC-TP-NUW")};
  }
  throw Error(ErrorCode::invalid_instance, "unknown empty-block variant");
}

TransferOutcome transfer_empty_block(EmptyBlockVariant variant,
                                     PairDirection direction,
                                     const ControlInstance& instance,
                                     const Partition& solution) {
  if (instance.system() != System::approval) {
    throw Error(ErrorCode::unsupported_algorithm,
                "empty-block transfers are implemented for approval only");
  }
  const TypePair pair = empty_block_pair(variant);
  const ControlType consumed =
      direction == PairDirection::forward ? pair.second : pair.first;
  if (!verify_solution(consumed, instance, solution)) return rejected();
  return accept(Partition::of_candidates(CandidateSet{}, instance.candidates()));
}

TransferOutcome transfer_identity(IdentityPair pair,
                                  const ControlInstance& instance,
                                  const Partition& solution) {
  const System expected =
      pair == IdentityPair::veto_dc_pv_te ? System::veto : System::approval;
  if (instance.system() != expected) {
    throw Error(ErrorCode::unsupported_algorithm,
                std::string("identity transfer is scoped to ") +
                    to_string(expected));
  }
  if (!verify_solution(t("DC-PV-TE-NUW"), instance, solution)) {
    return rejected();
  }
  return accept(solution);
}

TransferOutcome transfer_fallback(ControlType produced, ControlType consumed,
                                  const ControlInstance& instance,
                                  const Partition& solution,
                                  std::uint64_t evaluation_cap) {
  if (!is_collapsing_pair(instance.system(), produced, consumed)) {
    throw Error(ErrorCode::unsupported_algorithm,
                produced.to_string() + " and " + consumed.to_string() +
                    " do not collapse for " + to_string(instance.system()));
  }
  if (!verify_solution(consumed, instance, solution)) return rejected();
  const std::size_t length =
      encoding_length(partition_kind(produced.action), instance);
  if (length >= 64 || (std::uint64_t{1} << length) > evaluation_cap) {
    throw Error(ErrorCode::universe_too_large,
                "fallback search over 2^" + std::to_string(length) +
                    " partitions exceeds the evaluation cap");
  }
  SolveOutcome found = brute_force_search(produced, instance);
  if (!found) {
    // Impossible for a genuine collapsing pair.
    throw Error(ErrorCode::invalid_instance,
                "no " + produced.to_string() +
                    " solution although the input verified for " +
                    consumed.to_string());
  }
  return TransferOutcome{std::move(found), true};
}

const char* to_string(Construction construction) {
  switch (construction) {
    case Construction::tp_nuw: return "tp_nuw";
    case Construction::te_cycle_step: return "te_cycle_step";
    case Construction::empty_block: return "empty_block";
    case Construction::identity: return "identity";
    case Construction::fallback: return "fallback";
    case Construction::composed: return "composed";
  }
  return "?";
}

bool TransferRule::covers(System system) const {
  return std::find(systems.begin(), systems.end(), system) != systems.end();
}

namespace {

std::vector<TransferRule> build_rules() {
  using std::placeholders::_1;
  using std::placeholders::_2;
  const std::vector<System> every = {System::plurality, System::veto,
                                     System::approval};
  const std::vector<System> approval = {System::approval};
  std::vector<TransferRule> rules;

  rules.push_back({t("DC-PC-TP-NUW"), t("DC-RPC-TP-NUW"), every,
                   Construction::tp_nuw, "tp_nuw:pc_from_rpc",
                   "first block = the election p lost in",
                   std::bind(transfer_tp_nuw, TpNuwDirection::pc_from_rpc, _1,
                             _2)});
  rules.push_back({t("DC-RPC-TP-NUW"), t("DC-PC-TP-NUW"), every,
                   Construction::tp_nuw, "tp_nuw:rpc_from_pc",
                   "keep (C1, C2) or use D = C2 + Winners(C1, V)",
                   std::bind(transfer_tp_nuw, TpNuwDirection::rpc_from_pc, _1,
                             _2)});

  struct Step {
    TeCycleStep step;
    const char* produces;
    const char* consumes;
    const char* name;
    const char* note;
  };
  const Step steps[] = {
      {TeCycleStep::uwrpc_from_nuwrpc, "DC-RPC-TE-UW", "DC-RPC-TE-NUW",
       "te_cycle:uwrpc_from_nuwrpc", "pass-through"},
      {TeCycleStep::nuwrpc_from_nuwpc, "DC-RPC-TE-NUW", "DC-PC-TE-NUW",
       "te_cycle:nuwrpc_from_nuwpc", "D = UniqueWinnerIfAny(C1, V) + C2"},
      {TeCycleStep::nuwpc_from_uwpc, "DC-PC-TE-NUW", "DC-PC-TE-UW",
       "te_cycle:nuwpc_from_uwpc", "D = UniqueWinnerIfAny(C1, V) + C2"},
      {TeCycleStep::uwpc_from_uwrpc, "DC-PC-TE-UW", "DC-RPC-TE-UW",
       "te_cycle:uwpc_from_uwrpc",
       "D = UniqueWinnerIfAny(C1, V) + UniqueWinnerIfAny(C2, V)"},
  };
  for (const Step& s : steps) {
    rules.push_back({t(s.produces), t(s.consumes), every,
                     Construction::te_cycle_step, s.name, s.note,
                     std::bind(transfer_te_cycle, s.step, _1, _2)});
  }

  struct Variant {
    EmptyBlockVariant variant;
    const char* name;
  };
  const Variant variants[] = {
      {EmptyBlockVariant::uwarp_dc, "empty_block:uwarp_dc"},
      {EmptyBlockVariant::uwarp_cc, "empty_block:uwarp_cc"},
      {EmptyBlockVariant::approval_dc_tp_uw, "empty_block:approval_dc_tp_uw"},
      {EmptyBlockVariant::approval_cc_tp_nuw,
       "empty_block:approval_cc_tp_nuw"},
  };
  for (const Variant& v : variants) {
    const TypePair pair = empty_block_pair(v.variant);
    rules.push_back({pair.first, pair.second, approval,
                     Construction::empty_block,
                     std::string(v.name) + ":forward", "output (empty, C)",
                     std::bind(transfer_empty_block, v.variant,
                               PairDirection::forward, _1, _2)});
    rules.push_back({pair.second, pair.first, approval,
                     Construction::empty_block,
                     std::string(v.name) + ":backward", "output (empty, C)",
                     std::bind(transfer_empty_block, v.variant,
                               PairDirection::backward, _1, _2)});
  }

  rules.push_back({t("DC-PV-TE-UW"), t("DC-PV-TE-NUW"), {System::veto},
                   Construction::identity, "identity:veto_dc_pv_te",
                   "an NUW solution is a UW solution",
                   std::bind(transfer_identity, IdentityPair::veto_dc_pv_te,
                             _1, _2)});
  rules.push_back({t("DC-PV-TE-UW"), t("DC-PV-TE-NUW"), approval,
                   Construction::identity, "identity:approval_dc_pv_te",
                   "an NUW solution is a UW solution",
                   std::bind(transfer_identity,
                             IdentityPair::approval_dc_pv_te, _1, _2)});

  struct Fallback {
    const char* produces;
    const char* consumes;
    std::vector<System> systems;
  };
  const Fallback fallbacks[] = {
      {"DC-PV-TE-NUW", "DC-PV-TE-UW", {System::veto}},
      {"DC-PV-TE-NUW", "DC-PV-TE-UW", approval},
      {"CC-PC-TE-NUW", "CC-RPC-TE-NUW", approval},
      {"CC-RPC-TE-NUW", "CC-PC-TE-NUW", approval},
      {"CC-PC-TE-UW", "CC-RPC-TE-UW", approval},
      {"CC-RPC-TE-UW", "CC-PC-TE-UW", approval},
  };
  for (const Fallback& f : fallbacks) {
    const ControlType produced = t(f.produces);
    const ControlType consumed = t(f.consumes);
    rules.push_back(
        {produced, consumed, f.systems, Construction::fallback,
         "fallback:" + produced.to_string() + "<-" + consumed.to_string(),
         "exhaustive search; the direct construction is not reproduced",
         [produced, consumed](const ControlInstance& instance,
                              const Partition& solution) {
           return transfer_fallback(produced, consumed, instance, solution);
         }});
  }
  return rules;
}

}  // namespace

const std::vector<TransferRule>& transfer_rules() {
  static const std::vector<TransferRule> rules = build_rules();
  return rules;
}

std::vector<const TransferRule*> rules_for(System system) {
  std::vector<const TransferRule*> out;
  for (const TransferRule& rule : transfer_rules()) {
    if (rule.covers(system)) out.push_back(&rule);
  }
  return out;
}

TransferRule compose_rules(const TransferRule& outer,
                           const TransferRule& inner) {
  if (!(outer.consumes == inner.produces)) {
    throw Error(ErrorCode::composition_mismatch,
                "cannot compose " + outer.name + " after " + inner.name +
                    ": " + outer.consumes.to_string() + " != " +
                    inner.produces.to_string());
  }
  TransferRule rule;
  rule.produces = outer.produces;
  rule.consumes = inner.consumes;
  for (System s : inner.systems) {
    if (outer.covers(s)) rule.systems.push_back(s);
  }
  rule.construction = Construction::composed;
  rule.name = outer.name + " . " + inner.name;
  rule.provenance = "composition";
  rule.apply = [outer_apply = outer.apply, inner_apply = inner.apply](
                   const ControlInstance& instance, const Partition& s) {
    TransferOutcome first = inner_apply(instance, s);
    if (first.rejected()) return first;
    TransferOutcome second = outer_apply(instance, *first.solution);
    second.fallback = second.fallback || first.fallback;
    return second;
  };
  return rule;
}

TransferOutcome compose(const TransferRule& outer, const TransferRule& inner,
                        const ControlInstance& instance,
                        const Partition& solution) {
  return compose_rules(outer, inner).apply(instance, solution);
}

std::optional<std::vector<const TransferRule*>> find_transfer_chain(
    System system, ControlType produced, ControlType consumed,
    bool allow_fallback) {
  auto search = [&](bool use_fallback)
      -> std::optional<std::vector<const TransferRule*>> {
    // Breadth-first from the consumed type along rules' consumes->produces.
    std::map<ControlType, const TransferRule*> reached_by;
    std::deque<ControlType> frontier = {consumed};
    std::map<ControlType, bool> seen = {{consumed, true}};
    while (!frontier.empty()) {
      const ControlType at = frontier.front();
      frontier.pop_front();
      if (at == produced) break;
      for (const TransferRule* rule : rules_for(system)) {
        if (!use_fallback && rule->construction == Construction::fallback) {
          continue;
        }
        if (!(rule->consumes == at) || seen[rule->produces]) continue;
        seen[rule->produces] = true;
        reached_by[rule->produces] = rule;
        frontier.push_back(rule->produces);
      }
    }
    if (produced == consumed || !reached_by.count(produced)) {
      return std::nullopt;
    }
    std::vector<const TransferRule*> chain;
    for (ControlType at = produced; !(at == consumed);) {
      const TransferRule* rule = reached_by.at(at);
      chain.push_back(rule);
      at = rule->consumes;
    }
    return chain;
  };
  if (auto constructive = search(false)) return constructive;
  if (allow_fallback) return search(true);
  return std::nullopt;
}

TransferRule chain_rule(const std::vector<const TransferRule*>& chain) {
  if (chain.empty()) {
    throw Error(ErrorCode::composition_mismatch, "empty transfer chain");
  }
  TransferRule rule = *chain.back();
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
    rule = compose_rules(**it, rule);
  }
  return rule;
}

std::optional<TransferredSearch> polynomial_search_via_transfer(
    ControlType type, const ControlInstance& instance) {
  const System system = instance.system();
  if (has_polynomial_algorithm(system, type)) {
    return TransferredSearch{polynomial_search(type, instance), type,
                             "direct"};
  }
  for (const ControlType& partner : all_control_types()) {
    if (!has_polynomial_algorithm(system, partner) ||
        !is_collapsing_pair(system, type, partner)) {
      continue;
    }
    auto chain = find_transfer_chain(system, type, partner, false);
    if (!chain) continue;
    const TransferRule route = chain_rule(*chain);
    SolveOutcome partner_solution = polynomial_search(partner, instance);
    TransferredSearch result{std::nullopt, partner, route.name};
    if (partner_solution) {
      TransferOutcome moved = route.apply(instance, *partner_solution);
      result.outcome = moved.solution;
    }
    return result;
  }
  return std::nullopt;
}

}  // namespace control_forge
