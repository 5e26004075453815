// Acceptance checks over every election with at most three candidates and
// three votes. Prints one PASS/FAIL line per criterion.

#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "control_forge/control.hpp"
#include "control_forge/error.hpp"
#include "control_forge/hardness.hpp"
#include "control_forge/reductions.hpp"
#include "control_forge/solvers.hpp"
#include "support/reference_model.hpp"

namespace {

using namespace control_forge;

constexpr System kSystems[] = {System::plurality, System::veto,
                               System::approval};

UniverseSpec universe(System s, bool canonical = true) {
  UniverseSpec spec;
  spec.system = s;
  spec.max_candidates = 3;
  spec.max_votes = 3;
  spec.canonical_multisets = canonical;
  spec.threads = 4;
  return spec;
}

std::string describe(const ControlInstance& inst) {
  const Election& e = inst.election();
  std::ostringstream out;
  out << to_string(e.system()) << " p=" << e.name(inst.distinguished())
      << " votes=" << e.votes().voter_count() << " candidates=";
  for (const std::string& c : e.candidates()) out << c;
  return out.str();
}

struct Criterion {
  std::string label;
  std::uint64_t checks = 0;
  std::string failure;

  bool ok() const { return failure.empty(); }
  void fail(const std::string& why) {
    if (failure.empty()) failure = why;
  }
};

// 1. Every pair in every collapse class agrees on the universe, both as
// reported by the scan and by the reference model.
void collapse_matrix(Criterion& c) {
  for (System s : kSystems) {
    for (const auto& cls : collapse_classes(s)) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (std::size_t j = i + 1; j < cls.size(); ++j) {
          for (bool canonical : {true, false}) {
            const ScanReport r = collapse_scan(cls[i], cls[j],
                                               universe(s, canonical));
            c.checks += r.instances_checked;
            if (!r.agree()) {
              c.fail(std::string(to_string(s)) + " " + cls[i].to_string() +
                     " vs " + cls[j].to_string() + ": " +
                     std::to_string(r.counterexamples.size()) +
                     " counterexamples, e.g. " +
                     describe(r.counterexamples.front().instance));
            }
          }
        }
      }
    }
    for (const ControlInstance& inst : universe_instances(universe(s))) {
      const reference::Election ref = reference::from_instance(inst);
      for (const auto& cls : collapse_classes(s)) {
        const bool first = reference::member(ref, cls.front().to_string());
        for (const ControlType& t : cls) {
          ++c.checks;
          if (reference::member(ref, t.to_string()) != first) {
            c.fail("reference model separates " + cls.front().to_string() +
                   " and " + t.to_string() + " on " + describe(inst));
          }
        }
      }
    }
  }
}

// 2. Every transfer rule maps every verifying input to a verifying output
// and rejects everything else.
void transfer_soundness(Criterion& c) {
  for (System s : kSystems) {
    const auto instances = universe_instances(universe(s));
    for (const TransferRule* rule : rules_for(s)) {
      for (const ControlInstance& inst : instances) {
        const reference::Election ref = reference::from_instance(inst);
        const PartitionKind kind = partition_kind(rule->consumes.action);
        for (const Partition& in : enumerate_partitions(inst, kind)) {
          ++c.checks;
          const bool valid = verify_solution(rule->consumes, inst, in);
          const TransferOutcome out = rule->apply(inst, in);
          if (!valid) {
            if (!out.rejected()) {
              c.fail(rule->name + " accepted a non-solution on " +
                     describe(inst));
            }
            continue;
          }
          if (out.rejected()) {
            c.fail(rule->name + " rejected a solution on " + describe(inst));
            continue;
          }
          const std::size_t n = encoding_length(
              partition_kind(rule->produces.action), inst);
          if (!verify_solution(rule->produces, inst, *out.solution) ||
              !reference::succeeds(
                  ref, rule->produces.to_string(),
                  reference::membership_of(*out.solution, n))) {
            c.fail(rule->name + " output does not verify on " +
                   describe(inst));
          }
        }
      }
    }
  }
}

// 3. The approval polynomial algorithms match exhaustive search.
void polynomial_equivalence(Criterion& c) {
  const std::vector<ControlType> types = {
      ControlType::parse("DC-PC-TE-UW"), ControlType::parse("DC-PC-TP-NUW"),
      ControlType::parse("CC-PC-TP-UW"), ControlType::parse("CC-PC-TP-NUW"),
      ControlType::parse("CC-RPC-TE-NUW")};
  for (const ControlInstance& inst :
       universe_instances(universe(System::approval))) {
    const reference::Election ref = reference::from_instance(inst);
    for (const ControlType& t : types) {
      ++c.checks;
      const SolveOutcome fast = t == types.back()
                                    ? cc_rpc_te_nuw_search_approval(inst)
                                    : immunity_search_approval(t, inst);
      const SolveOutcome slow = brute_force_search(t, inst);
      if (fast.has_value() != slow.has_value() ||
          slow.has_value() != reference::member(ref, t.to_string())) {
        c.fail(t.to_string() + " solvability differs on " + describe(inst));
      } else if (fast && !verify_solution(t, inst, *fast)) {
        c.fail(t.to_string() + " output does not verify on " + describe(inst));
      }
    }
  }
}

// 4. The oracle-driven search returns the exhaustive search's answer within
// the call budget.
void lex_min_search(Criterion& c) {
  const DecisionOracle oracle = brute_force_oracle();
  for (System s : kSystems) {
    for (const ControlInstance& inst : universe_instances(universe(s))) {
      const reference::Election ref = reference::from_instance(inst);
      for (const ControlType& t : all_control_types()) {
        ++c.checks;
        const std::size_t length =
            encoding_length(partition_kind(t.action), inst);
        const OracleSearchResult r =
            lex_min_search_with_oracle(t, inst, oracle);
        const SolveOutcome brute = brute_force_search(t, inst);
        const auto least = reference::least_solution(ref, t.to_string());
        if (r.outcome != brute) {
          c.fail(t.to_string() + " differs from brute force on " +
                 describe(inst));
        } else if (r.oracle_calls > 2 * length + 1) {
          c.fail(t.to_string() + " used " + std::to_string(r.oracle_calls) +
                 " calls on " + describe(inst));
        } else if (least.has_value() != brute.has_value() ||
                   (least && *least != reference::membership_of(*brute,
                                                                length))) {
          c.fail(t.to_string() + " is not the least solution on " +
                 describe(inst));
        }
      }
    }
  }
}

// Every hitting-set instance with m <= 3 elements and up to three nonempty
// sets (listed in any order, repeats allowed).
void for_each_hitting_set(const std::function<void(const HittingSetInstance&)>& visit) {
  for (std::size_t m = 1; m <= 3; ++m) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i) names.push_back("b" + std::to_string(i + 1));
    std::vector<std::vector<std::size_t>> subsets;
    for (std::uint64_t bits = 1; bits < (1U << m); ++bits) {
      subsets.push_back(CandidateSet::from_bits(bits).to_vector());
    }
    for (std::size_t n = 0; n <= 3; ++n) {
      std::vector<std::size_t> pick(n, 0);
      while (true) {
        std::vector<std::vector<std::size_t>> sets;
        for (std::size_t i : pick) sets.push_back(subsets[i]);
        for (std::size_t k = 1; k <= m; ++k) visit({names, sets, k});
        std::size_t pos = 0;
        while (pos < n && ++pick[pos] == subsets.size()) pick[pos++] = 0;
        if (pos == n) break;
      }
    }
  }
}

// 5. The hitting-set encoding preserves feasibility, its score formulas hold
// and witnesses travel both ways.
void hardness_reduction(Criterion& c) {
  for_each_hitting_set([&](const HittingSetInstance& hs) {
    ++c.checks;
    const std::size_t m = hs.elements.size();
    const std::size_t n = hs.sets.size();
    const std::size_t k = hs.k;
    const EncodedInstance enc = encode_hitting_set(hs);
    std::ostringstream name;
    name << "m=" << m << " n=" << n << " k=" << k << " sets";
    for (const auto& set : hs.sets) {
      name << " {";
      for (std::size_t e : set) name << e;
      name << "}";
    }

    // Feasibility straight from the definition.
    bool feasible = false;
    for (std::uint64_t bits = 0; bits < (1U << m); ++bits) {
      const CandidateSet chosen = CandidateSet::from_bits(bits);
      std::size_t unhit = 0;
      for (const auto& set : hs.sets) {
        bool hit = false;
        for (std::size_t e : set) hit = hit || chosen.contains(e);
        if (!hit) ++unhit;
      }
      feasible = feasible || (unhit == 0 && chosen.size() <= k);

      const Scores s = scores(System::plurality,
                              chosen | CandidateSet::of({enc.c, enc.w}),
                              enc.instance.votes());
      if (s[enc.w] != 2 * n * (k + 1) + 5 + 2 * (m - chosen.size()) ||
          s[enc.c] != 2 * (m - k) + 2 * n * (k + 1) + 4 + 2 * (k + 1) * unhit) {
        c.fail("score identity fails for " + name.str());
      }
      if (unhit == 0 && chosen.size() <= k) {
        const auto back =
            extract_hitting_set(enc, forward_partition(hs, chosen));
        if (!back || back->size() > k || !is_hitting_set(hs, *back)) {
          c.fail("extract after forward fails for " + name.str());
        }
      }
    }
    const SolveOutcome solution = brute_force_search(kHardnessType, enc.instance);
    if (feasible != solution.has_value()) {
      c.fail("feasibility and membership differ for " + name.str());
    }
    if (solution) {
      const auto back = extract_hitting_set(enc, *solution);
      if (!back || back->size() > k || !is_hitting_set(hs, *back)) {
        c.fail("extract from the least solution fails for " + name.str());
      }
    }
  });
}

// 6. The four immune approval types cannot move p across the goal.
void immunity(Criterion& c) {
  struct Case {
    const char* tag;
    std::function<bool(std::size_t, CandidateSet)> precondition;
  };
  const Case cases[] = {
      {"DC-PC-TE-UW",
       [](std::size_t p, CandidateSet w) { return w == CandidateSet::of({p}); }},
      {"DC-PC-TP-NUW",
       [](std::size_t p, CandidateSet w) { return w.contains(p); }},
      {"CC-PC-TP-UW",
       [](std::size_t p, CandidateSet w) { return w != CandidateSet::of({p}); }},
      {"CC-PC-TP-NUW",
       [](std::size_t p, CandidateSet w) { return !w.contains(p); }},
  };
  for (const ControlInstance& inst :
       universe_instances(universe(System::approval))) {
    const CandidateSet w =
        winners(System::approval, inst.candidates(), inst.votes());
    for (const Case& k : cases) {
      if (!k.precondition(inst.distinguished(), w)) continue;
      const ControlType t = ControlType::parse(k.tag);
      for (const Partition& s :
           enumerate_partitions(inst, PartitionKind::candidate)) {
        ++c.checks;
        if (verify_solution(t, inst, s)) {
          c.fail(std::string(k.tag) + " has a solution on " + describe(inst));
        }
      }
    }
  }
}

// 7. (empty, C) works for the destructive unique-winner approval types
// whenever p is not already the unique winner.
void empty_first_block(Criterion& c) {
  const ControlType types[] = {ControlType::parse("DC-PC-TE-UW"),
                               ControlType::parse("DC-PC-TP-UW")};
  for (const ControlInstance& inst :
       universe_instances(universe(System::approval))) {
    const CandidateSet w =
        winners(System::approval, inst.candidates(), inst.votes());
    if (w == CandidateSet::of({inst.distinguished()})) continue;
    const Partition s = Partition::of_candidates({}, inst.candidates());
    const reference::Election ref = reference::from_instance(inst);
    for (const ControlType& t : types) {
      ++c.checks;
      if (!verify_solution(t, inst, s) ||
          !reference::succeeds(
              ref, t.to_string(),
              reference::membership_of(s, inst.candidates().size()))) {
        c.fail(t.to_string() + " (empty, C) fails on " + describe(inst));
      }
    }
  }
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    void (*run)(Criterion&);
  };
  const Entry entries[] = {
      {"1 collapse matrix", collapse_matrix},
      {"2 transfer soundness", transfer_soundness},
      {"3 polynomial algorithms match brute force", polynomial_equivalence},
      {"4 lex-min oracle search", lex_min_search},
      {"5 hitting-set reduction", hardness_reduction},
      {"6 approval immunity", immunity},
      {"7 (empty, C) destructive solution", empty_first_block},
  };
  int failed = 0;
  for (const Entry& entry : entries) {
    Criterion c{entry.label};
    try {
      entry.run(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    if (c.checks == 0) c.fail("nothing was checked");
    std::cout << (c.ok() ? "PASS " : "FAIL ") << c.label << " (" << c.checks
              << " checks)";
    if (!c.ok()) std::cout << ": " << c.failure;
    std::cout << std::endl;
    failed += c.ok() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
