#include <gtest/gtest.h>

#include <functional>

#include "control_forge/error.hpp"
#include "control_forge/solvers.hpp"
#include "support/builders.hpp"
#include "support/reference_model.hpp"

namespace {

using namespace control_forge;
using namespace testing_support;

TEST(Enumeration, LexicographicOrderOfFirstBlock) {
  const Election e = approval({"a", "b"}, {});
  const ControlInstance inst = instance(e, "a");
  const auto all = enumerate_partitions(inst, PartitionKind::candidate);
  ASSERT_EQ(all.size(), 4u);
  EXPECT_EQ(all[0], cands(e, {}, {"a", "b"}));
  EXPECT_EQ(all[1], cands(e, {"b"}, {"a"}));
  EXPECT_EQ(all[2], cands(e, {"a"}, {"b"}));
  EXPECT_EQ(all[3], cands(e, {"a", "b"}, {}));
}

TEST(Enumeration, EmptyAndVoterCases) {
  std::vector<Partition> seen;
  for_each_partition(PartitionKind::candidate, 0, [&](const Partition& p) {
    seen.push_back(p);
    return true;
  });
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_TRUE(seen[0].first.empty() && seen[0].second.empty());

  const ControlInstance inst =
      instance(approval({"a"}, {{1}, {0}, {1}}), "a");
  EXPECT_EQ(enumerate_partitions(inst, PartitionKind::voter).size(), 8u);
}

TEST(Encoding, RoundTrip) {
  for (std::uint64_t code = 0; code < 16; ++code) {
    const Partition p = partition_from_code(PartitionKind::voter, 4, code);
    const std::vector<bool> bits = encode_partition(p, 4);
    EXPECT_EQ(bits, reference::bits_of(code, 4));
  }
}

TEST(BruteForce, Examples) {
  const Election e = approval({"p", "a"}, {{0, 1}});
  const ControlInstance inst = instance(e, "p");
  EXPECT_FALSE(brute_force_search(type("CC-PC-TP-NUW"), inst));
  EXPECT_EQ(brute_force_search(type("DC-PC-TP-NUW"), inst),
            cands(e, {}, {"p", "a"}));

  const ControlInstance alone = instance(approval({"p"}, {}), "p");
  EXPECT_FALSE(brute_force_search(type("DC-PC-TE-UW"), alone));
}

TEST(Immunity, Examples) {
  const Election e = approval({"p", "a"}, {{1, 1}, {0, 1}});
  EXPECT_EQ(immunity_search_approval(type("DC-PC-TE-UW"), instance(e, "p")),
            cands(e, {}, {"p", "a"}));

  const ControlInstance f = instance(approval({"p", "a"}, {{0, 1}}), "p");
  EXPECT_FALSE(immunity_search_approval(type("CC-PC-TP-NUW"), f));

  const Election g = approval({"p"}, {});
  EXPECT_EQ(immunity_search_approval(type("CC-PC-TP-UW"), instance(g, "p")),
            cands(g, {}, {"p"}));
}

TEST(Immunity, RejectsOtherSystemsAndTypes) {
  const ControlInstance plur = instance(
      linear(System::plurality, {"p", "a"}, {{{"p", "a"}, 1}}), "p");
  const ControlInstance appr = instance(approval({"p", "a"}, {{1, 0}}), "p");
  for (const std::function<void()>& call : {
           std::function<void()>([&] { immunity_search_approval(type("DC-PC-TE-UW"), plur); }),
           std::function<void()>([&] {
             immunity_search_approval(type("DC-RPC-TE-UW"), appr);
           }),
           std::function<void()>([&] { cc_rpc_te_nuw_search_approval(plur); }),
           std::function<void()>(
               [&] { polynomial_search(type("CC-PV-TE-UW"), appr); }),
       }) {
    try {
      call();
      FAIL();
    } catch (const Error& err) {
      EXPECT_EQ(err.code(), ErrorCode::unsupported_algorithm);
    }
  }
}

TEST(CcRpcTeNuw, Examples) {
  const Election tie = approval({"p", "a", "b"}, {{0, 1, 1}, {0, 1, 1}});
  EXPECT_EQ(cc_rpc_te_nuw_search_approval(instance(tie, "p")),
            cands(tie, {"p"}, {"a", "b"}));

  EXPECT_FALSE(cc_rpc_te_nuw_search_approval(
      instance(approval({"p", "a"}, {{0, 1}}), "p")));

  const Election top = approval({"p", "a"}, {{1, 0}});
  EXPECT_EQ(cc_rpc_te_nuw_search_approval(instance(top, "p")),
            cands(top, {"p"}, {"a"}));
}

TEST(LexMin, MatchesBruteForceOnExample) {
  const Election e = approval({"p", "a"}, {{0, 1}});
  const ControlInstance inst = instance(e, "p");
  const auto r = lex_min_search_with_oracle(type("DC-PC-TP-NUW"), inst,
                                            brute_force_oracle());
  EXPECT_EQ(r.outcome, cands(e, {}, {"p", "a"}));
}

TEST(LexMin, InfeasibleStopsAfterOneCall) {
  const ControlInstance inst = instance(approval({"p", "a"}, {{0, 1}}), "p");
  const auto r = lex_min_search_with_oracle(type("CC-PC-TP-NUW"), inst,
                                            brute_force_oracle());
  EXPECT_FALSE(r.outcome);
  EXPECT_EQ(r.oracle_calls, 1u);
}

TEST(LexMin, ThreeCandidatesUseAtMostSevenCalls) {
  const ControlInstance inst =
      instance(approval({"p", "a", "b"}, {{0, 1, 1}, {0, 1, 0}, {1, 0, 0}}), "p");
  const auto r = lex_min_search_with_oracle(type("DC-RPC-TP-NUW"), inst,
                                            brute_force_oracle());
  ASSERT_TRUE(r.outcome);
  EXPECT_LE(r.oracle_calls, 7u);
}

TEST(LexMin, DetectsInconsistentOracles) {
  const ControlInstance inst = instance(approval({"p", "a"}, {{1, 0}}), "p");
  const DecisionOracle yes_to_everything =
      [](ControlType, const ControlInstance&, const std::vector<bool>&) {
        return true;
      };
  const DecisionOracle only_empty_prefix =
      [](ControlType, const ControlInstance&, const std::vector<bool>& p) {
        return p.empty();
      };
  for (const auto& oracle : {yes_to_everything, only_empty_prefix}) {
    try {
      lex_min_search_with_oracle(type("DC-PC-TE-UW"), inst, oracle);
      FAIL();
    } catch (const Error& err) {
      EXPECT_EQ(err.code(), ErrorCode::oracle_inconsistency);
    }
  }
}

// Number of multisets of size v over b ballot kinds.
std::uint64_t multisets(std::uint64_t b, std::uint64_t v) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= v; ++i) r = r * (b + i - 1) / i;
  return r;
}

TEST(Universe, InstanceCounts) {
  for (System s : {System::plurality, System::approval}) {
    for (bool canonical : {true, false}) {
      UniverseSpec spec;
      spec.system = s;
      spec.max_candidates = 3;
      spec.max_votes = 3;
      spec.canonical_multisets = canonical;
      std::uint64_t expected = 0;
      for (std::uint64_t c = 1; c <= 3; ++c) {
        const std::uint64_t b =
            s == System::approval ? (1U << c) : (c == 1 ? 1 : c == 2 ? 2 : 6);
        for (std::uint64_t v = 0; v <= 3; ++v) {
          std::uint64_t lists = 1;
          for (std::uint64_t i = 0; i < v; ++i) lists *= b;
          expected += c * (canonical ? multisets(b, v) : lists);
        }
      }
      EXPECT_EQ(universe_instance_count(spec), expected);
      EXPECT_EQ(universe_instances(spec).size(), expected);
    }
  }
}

TEST(CollapseScan, ListedPairAgrees) {
  UniverseSpec spec{System::plurality, 2, 2};
  const ScanReport r =
      collapse_scan(type("DC-RPC-TP-NUW"), type("DC-PC-TP-NUW"), spec);
  EXPECT_TRUE(r.agree());
  EXPECT_GT(r.instances_checked, 0u);
}

TEST(CollapseScan, ConstructiveAndDestructiveDiffer) {
  UniverseSpec spec{System::approval, 2, 2};
  const ScanReport r =
      collapse_scan(type("CC-PC-TE-UW"), type("DC-PC-TE-UW"), spec);
  ASSERT_FALSE(r.agree());
  for (const Counterexample& ce : r.counterexamples) {
    const ControlType member = ce.in_first ? r.first : r.second;
    const ControlType other = ce.in_first ? r.second : r.first;
    ASSERT_TRUE(ce.witness);
    EXPECT_TRUE(verify_solution(member, ce.instance, *ce.witness));
    EXPECT_FALSE(brute_force_search(other, ce.instance));
  }
}

TEST(CollapseScan, EmptyUniverse) {
  UniverseSpec spec{System::veto, 0, 3};
  const ScanReport r =
      collapse_scan(type("CC-PC-TE-UW"), type("DC-PC-TE-UW"), spec);
  EXPECT_EQ(r.instances_checked, 0u);
  EXPECT_TRUE(r.agree());
}

TEST(CollapseScan, RefusesOversizedUniverses) {
  UniverseSpec spec{System::approval, 6, 6};
  try {
    collapse_scan(type("CC-PC-TE-UW"), type("DC-PC-TE-UW"), spec);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::universe_too_large);
  }
}

TEST(CollapseScan, ThreadedScanIsDeterministic) {
  UniverseSpec spec{System::veto, 3, 2};
  const ScanReport one =
      collapse_scan(type("CC-PV-TE-UW"), type("DC-PV-TE-UW"), spec);
  spec.threads = 3;
  const ScanReport three =
      collapse_scan(type("CC-PV-TE-UW"), type("DC-PV-TE-UW"), spec);
  ASSERT_EQ(one.counterexamples.size(), three.counterexamples.size());
  for (std::size_t i = 0; i < one.counterexamples.size(); ++i) {
    EXPECT_EQ(one.counterexamples[i].instance,
              three.counterexamples[i].instance);
    EXPECT_EQ(one.counterexamples[i].witness,
              three.counterexamples[i].witness);
  }
}

// Properties over every small instance.

class SolverProperties : public ::testing::TestWithParam<System> {};

TEST_P(SolverProperties, BruteForceIsTheReferenceLeastSolution) {
  UniverseSpec spec{GetParam(), 3, 3};
  for (const ControlInstance& inst : universe_instances(spec)) {
    const reference::Election ref = reference::from_instance(inst);
    for (const ControlType& t : all_control_types()) {
      const SolveOutcome got = brute_force_search(t, inst);
      const auto want = reference::least_solution(ref, t.to_string());
      ASSERT_EQ(got.has_value(), want.has_value()) << t.to_string();
      if (got) {
        ASSERT_EQ(reference::membership_of(*got, want->size()), *want);
        ASSERT_TRUE(verify_solution(t, inst, *got));
      }
    }
  }
}

TEST_P(SolverProperties, LexMinSearchEqualsBruteForce) {
  UniverseSpec spec{GetParam(), 3, 2};
  for (const ControlInstance& inst : universe_instances(spec)) {
    for (const ControlType& t : all_control_types()) {
      const auto r = lex_min_search_with_oracle(t, inst, brute_force_oracle());
      ASSERT_EQ(r.outcome, brute_force_search(t, inst));
      const std::size_t n = encoding_length(partition_kind(t.action), inst);
      ASSERT_LE(r.oracle_calls, 2 * n + 1);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllSystems, SolverProperties,
                         ::testing::Values(System::plurality, System::veto,
                                           System::approval));

TEST(SolverProperties, PolynomialAlgorithmsMatchBruteForce) {
  UniverseSpec spec{System::approval, 3, 3};
  for (const ControlInstance& inst : universe_instances(spec)) {
    for (const ControlType& t : all_control_types()) {
      if (!has_polynomial_algorithm(System::approval, t)) continue;
      const SolveOutcome fast = polynomial_search(t, inst);
      ASSERT_EQ(fast.has_value(), brute_force_search(t, inst).has_value())
          << t.to_string();
      if (fast) ASSERT_TRUE(verify_solution(t, inst, *fast));
    }
  }
}

}  // namespace
