#include "control_forge/control.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "control_forge/error.hpp"

namespace control_forge {

namespace {

std::string upper(std::string_view text) {
  std::string out(text);
  for (char& ch : out) {
    ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  return out;
}

std::array<ControlType, 24> make_all_types() {
  std::array<ControlType, 24> all{};
  std::size_t i = 0;
  for (Direction d : {Direction::constructive, Direction::destructive}) {
    for (Action a : {Action::pc, Action::rpc, Action::pv}) {
      for (TieRule t : {TieRule::te, TieRule::tp}) {
        for (WinnerModel w : {WinnerModel::uw, WinnerModel::nuw}) {
          all[i++] = ControlType{d, a, t, w};
        }
      }
    }
  }
  return all;
}

}  // namespace

std::string ControlType::to_string() const {
  std::string out = direction == Direction::constructive ? "CC-" : "DC-";
  out += action == Action::pc ? "PC-" : action == Action::rpc ? "RPC-" : "PV-";
  out += tie_rule == TieRule::te ? "TE-" : "TP-";
  out += winner_model == WinnerModel::uw ? "UW" : "NUW";
  return out;
}

ControlType ControlType::parse(std::string_view text) {
  const std::string wanted = upper(text);
  for (const ControlType& type : all_control_types()) {
    if (type.to_string() == wanted) return type;
  }
  throw Error(ErrorCode::parse_error,
              "unknown control type '" + std::string(text) + "'");
}

std::size_t ControlType::index() const {
  return static_cast<std::size_t>(direction) * 12 +
         static_cast<std::size_t>(action) * 4 +
         static_cast<std::size_t>(tie_rule) * 2 +
         static_cast<std::size_t>(winner_model);
}

const std::array<ControlType, 24>& all_control_types() {
  static const std::array<ControlType, 24> all = make_all_types();
  return all;
}

CandidateSet Partition::first_set() const {
  CandidateSet s;
  for (std::size_t c : first) s.insert(c);
  return s;
}

CandidateSet Partition::second_set() const {
  CandidateSet s;
  for (std::size_t c : second) s.insert(c);
  return s;
}

ControlInstance::ControlInstance(Election election, std::size_t distinguished)
    : election_(std::move(election)), distinguished_(distinguished) {
  if (distinguished_ >= election_.candidate_count()) {
    throw Error(ErrorCode::invalid_candidate,
                "distinguished candidate is not in the election");
  }
}

CandidateSet survivors(System system, CandidateSet subset,
                       const VoteCollection& votes, TieRule tie_rule) {
  return tie_rule == TieRule::tp ? winners(system, subset, votes)
                                 : unique_winner_if_any(system, subset, votes);
}

std::optional<std::string> partition_problem(ControlType type,
                                             const ControlInstance& instance,
                                             const Partition& partition) {
  const PartitionKind expected = partition_kind(type.action);
  if (partition.kind != expected) {
    return expected == PartitionKind::voter
               ? "PV control needs a partition of voters"
               : "PC/RPC control needs a partition of candidates";
  }
  const std::size_t universe = expected == PartitionKind::voter
                                   ? instance.votes().voter_count()
                                   : instance.election().candidate_count();
  const char* what = expected == PartitionKind::voter ? "voter" : "candidate";
  std::vector<int> owner(universe, 0);
  auto mark = [&](const std::vector<std::size_t>& block,
                  int tag) -> std::optional<std::string> {
    for (std::size_t x : block) {
      if (x >= universe) {
        return std::string("unknown ") + what + " index " + std::to_string(x);
      }
      if (owner[x] != 0) {
        return std::string(what) + " index " + std::to_string(x) +
               " appears in more than one block position";
      }
      owner[x] = tag;
    }
    return std::nullopt;
  };
  if (auto problem = mark(partition.first, 1)) return problem;
  if (auto problem = mark(partition.second, 2)) return problem;
  for (std::size_t x = 0; x < universe; ++x) {
    if (owner[x] == 0) {
      return std::string(what) + " index " + std::to_string(x) +
             " is in neither block";
    }
  }
  return std::nullopt;
}

TwoStageTrace run_two_stage(ControlType type, const ControlInstance& instance,
                            const Partition& partition) {
  if (auto problem = partition_problem(type, instance, partition)) {
    throw Error(ErrorCode::invalid_partition, *problem);
  }
  const System system = instance.system();
  const VoteCollection& votes = instance.votes();
  TwoStageTrace trace;
  trace.type = type;

  auto play = [&](CandidateSet candidates, const VoteCollection& electorate) {
    FirstRound round;
    round.candidates = candidates;
    round.winners = winners(system, candidates, electorate);
    round.survivors = type.tie_rule == TieRule::tp
                          ? round.winners
                          : (round.winners.size() == 1 ? round.winners
                                                       : CandidateSet{});
    return round;
  };

  switch (type.action) {
    case Action::pv: {
      const CandidateSet all = instance.candidates();
      for (const auto* block : {&partition.first, &partition.second}) {
        FirstRound round = play(all, votes.select_voters(*block));
        round.voters = *block;
        trace.final_candidates = trace.final_candidates | round.survivors;
        trace.first_rounds.push_back(std::move(round));
      }
      break;
    }
    case Action::rpc: {
      for (CandidateSet block : {partition.first_set(),
                                 partition.second_set()}) {
        FirstRound round = play(block, votes);
        trace.final_candidates = trace.final_candidates | round.survivors;
        trace.first_rounds.push_back(round);
      }
      break;
    }
    case Action::pc: {
      FirstRound round = play(partition.first_set(), votes);
      trace.passed_through = partition.second_set();
      trace.final_candidates = round.survivors | trace.passed_through;
      trace.first_rounds.push_back(round);
      break;
    }
  }
  trace.final_winners = winners(system, trace.final_candidates, votes);
  return trace;
}

bool goal_satisfied(Direction direction, WinnerModel model,
                    std::size_t distinguished, CandidateSet final_winners) {
  const bool wins = final_winners.contains(distinguished);
  const bool wins_alone = wins && final_winners.size() == 1;
  if (direction == Direction::constructive) {
    return model == WinnerModel::nuw ? wins : wins_alone;
  }
  return model == WinnerModel::nuw ? !wins : !wins_alone;
}

Verdict check_solution(ControlType type, const ControlInstance& instance,
                       const Partition& partition) {
  Verdict verdict;
  if (auto problem = partition_problem(type, instance, partition)) {
    verdict.diagnostic = *problem;
    return verdict;
  }
  verdict.trace = run_two_stage(type, instance, partition);
  verdict.success =
      goal_satisfied(type.direction, type.winner_model,
                     instance.distinguished(), verdict.trace->final_winners);
  if (!verdict.success) {
    verdict.diagnostic = "control goal not met in the final round";
  }
  return verdict;
}

bool verify_solution(ControlType type, const ControlInstance& instance,
                     const Partition& partition) {
  return check_solution(type, instance, partition).success;
}

namespace {

ControlType t(std::string_view tag) { return ControlType::parse(tag); }

}  // namespace

std::vector<std::vector<ControlType>> collapse_classes(System system) {
  // Two collapses hold for every election system.
  std::vector<std::vector<ControlType>> classes = {
      {t("DC-RPC-TP-NUW"), t("DC-PC-TP-NUW")},
  };
  std::vector<ControlType> te_block = {t("DC-RPC-TE-NUW"), t("DC-RPC-TE-UW"),
                                       t("DC-PC-TE-NUW"), t("DC-PC-TE-UW")};
  switch (system) {
    case System::plurality:
      classes.push_back(te_block);
      break;
    case System::veto:
      classes.push_back(te_block);
      classes.push_back({t("DC-PV-TE-NUW"), t("DC-PV-TE-UW")});
      break;
    case System::approval:
      // Unique-alpha merges the TE block with the two DC-TP-UW types.
      te_block.push_back(t("DC-RPC-TP-UW"));
      te_block.push_back(t("DC-PC-TP-UW"));
      classes.push_back(te_block);
      classes.push_back({t("DC-PV-TE-UW"), t("DC-PV-TE-NUW")});
      classes.push_back({t("CC-RPC-TP-UW"), t("CC-PC-TP-UW")});
      classes.push_back({t("CC-RPC-TP-NUW"), t("CC-PC-TP-NUW")});
      classes.push_back({t("CC-RPC-TE-UW"), t("CC-PC-TE-UW")});
      classes.push_back({t("CC-RPC-TE-NUW"), t("CC-PC-TE-NUW")});
      break;
  }
  return classes;
}

bool is_collapsing_pair(System system, ControlType first, ControlType second) {
  if (first == second) return false;
  for (const auto& group : collapse_classes(system)) {
    const bool has_first =
        std::find(group.begin(), group.end(), first) != group.end();
    const bool has_second =
        std::find(group.begin(), group.end(), second) != group.end();
    if (has_first && has_second) return true;
  }
  return false;
}

}  // namespace control_forge
