#include "control_forge/hardness.hpp"

#include <algorithm>
#include <set>

#include "control_forge/error.hpp"

namespace control_forge {

namespace {

void invalid(const std::string& message) {
  throw Error(ErrorCode::invalid_instance, message);
}

}  // namespace

void HittingSetInstance::validate() const {
  const std::size_t m = elements.size();
  if (m + 2 > kMaxCandidates) invalid("too many elements");
  if (k < 1 || k > m) {
    invalid("k must lie in 1.." + std::to_string(m) + ", got " +
            std::to_string(k));
  }
  std::set<std::string> seen;
  for (const std::string& name : elements) {
    if (!is_valid_candidate_name(name)) {
      invalid("invalid element name '" + name + "'");
    }
    if (name == "c" || name == "w") {
      invalid("element name '" + name + "' is reserved for the encoding");
    }
    if (!seen.insert(name).second) invalid("duplicate element '" + name + "'");
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) invalid("set " + std::to_string(i + 1) + " is empty");
    for (std::size_t e : sets[i]) {
      if (e >= m) invalid("set " + std::to_string(i + 1) + " has no element " +
                          std::to_string(e));
    }
  }
}

const char* to_string(VoteClause clause) {
  switch (clause) {
    case VoteClause::c_over_w: return "c>w";
    case VoteClause::w_over_c: return "w>c";
    case VoteClause::set_over_c: return "set>c";
    case VoteClause::element_over_w: return "element>w";
  }
  return "?";
}

CandidateSet element_set(const std::vector<std::size_t>& elements) {
  CandidateSet out;
  for (std::size_t e : elements) out.insert(e);
  return out;
}

EncodedInstance encode_hitting_set(const HittingSetInstance& hs) {
  hs.validate();
  const std::size_t m = hs.elements.size();
  const std::size_t n = hs.sets.size();
  const std::size_t k = hs.k;
  const std::size_t c = m;
  const std::size_t w = m + 1;

  std::vector<std::string> names = hs.elements;
  names.push_back("c");
  names.push_back("w");
  const CandidateSet all = CandidateSet::first_n(m + 2);
  const CandidateSet elements = CandidateSet::first_n(m);

  std::vector<BallotGroup> groups;
  std::vector<VoteClause> clauses;
  auto add = [&](std::vector<std::size_t> head, CandidateSet rest,
                 std::size_t count, VoteClause clause) {
    for (std::size_t x : rest) head.push_back(x);
    groups.push_back(BallotGroup{Ballot::linear(std::move(head)), count});
    clauses.push_back(clause);
  };

  add({c, w}, elements, 2 * (m - k) + 2 * n * (k + 1) + 4,
      VoteClause::c_over_w);
  add({w, c}, elements, 2 * n * (k + 1) + 5, VoteClause::w_over_c);
  for (const auto& set : hs.sets) {
    const CandidateSet members = element_set(set);
    std::vector<std::size_t> head = members.to_vector();
    head.push_back(c);
    add(std::move(head), all - members - CandidateSet::of({c}), 2 * (k + 1),
        VoteClause::set_over_c);
  }
  for (std::size_t j = 0; j < m; ++j) {
    add({j, w}, all - CandidateSet::of({j, w}), 2,
        VoteClause::element_over_w);
  }

  Election election(System::plurality, std::move(names),
                    VoteCollection(VoteKind::linear, all, std::move(groups)));
  return EncodedInstance{hs, ControlInstance(std::move(election), c),
                         std::move(clauses), c, w};
}

bool is_hitting_set(const HittingSetInstance& hs, CandidateSet chosen) {
  return std::all_of(hs.sets.begin(), hs.sets.end(), [&](const auto& set) {
    return !(element_set(set) & chosen).empty();
  });
}

Partition forward_partition(const HittingSetInstance& hs, CandidateSet chosen) {
  hs.validate();
  const std::size_t m = hs.elements.size();
  if (!chosen.is_subset_of(CandidateSet::first_n(m))) {
    throw Error(ErrorCode::invalid_witness, "witness has unknown elements");
  }
  if (chosen.size() > hs.k || !is_hitting_set(hs, chosen)) {
    throw Error(ErrorCode::invalid_witness,
                "witness is not a hitting set of size at most " +
                    std::to_string(hs.k));
  }
  const CandidateSet first = chosen | CandidateSet::of({m, m + 1});
  return Partition::of_candidates(first,
                                  CandidateSet::first_n(m + 2) - first);
}

std::optional<CandidateSet> extract_hitting_set(const EncodedInstance& encoded,
                                                const Partition& solution) {
  const Verdict verdict =
      check_solution(kHardnessType, encoded.instance, solution);
  if (!verdict.success) return std::nullopt;
  const TwoStageTrace& trace = *verdict.trace;
  const FirstRound& round = trace.first_rounds.front();
  const CandidateSet lost_in =
      round.candidates.contains(encoded.c) && !round.winners.contains(encoded.c)
          ? round.candidates
          : trace.final_candidates;
  return lost_in & CandidateSet::first_n(encoded.source.elements.size());
}

std::optional<CandidateSet> brute_force_hitting_set(
    const HittingSetInstance& hs) {
  hs.validate();
  const std::size_t m = hs.elements.size();
  std::optional<CandidateSet> best;
  std::vector<bool> best_code;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    const CandidateSet chosen = CandidateSet::from_bits(bits);
    if (chosen.size() > hs.k || !is_hitting_set(hs, chosen)) continue;
    // Lexicographic order with element 0 as the leading bit.
    std::vector<bool> code(m);
    for (std::size_t i = 0; i < m; ++i) code[i] = chosen.contains(i);
    if (!best || chosen.size() < best->size() ||
        (chosen.size() == best->size() && code < best_code)) {
      best = chosen;
      best_code = std::move(code);
    }
  }
  return best;
}

}  // namespace control_forge
