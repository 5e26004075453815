#include <gtest/gtest.h>

#include "control_forge/elections.hpp"
#include "control_forge/error.hpp"
#include "control_forge/solvers.hpp"
#include "support/builders.hpp"

namespace {

using namespace control_forge;
using namespace testing_support;

TEST(Masking, RestrictsOrder) {
  const Election e = linear(System::plurality, {"a", "b", "c"},
                            {{{"a", "b", "c"}, 1}});
  const VoteCollection m = mask_votes(e.votes(), named(e, {"b", "c"}));
  EXPECT_EQ(m.ballot_of_voter(0).order, (std::vector<std::size_t>{1, 2}));
}

TEST(Masking, ProjectsApprovalBits) {
  const Election e = approval({"a", "b", "c"}, {{1, 0, 1}});
  const VoteCollection m = mask_votes(e.votes(), named(e, {"a", "b"}));
  EXPECT_EQ(m.ballot_of_voter(0).approvals, CandidateSet::of({0}));
}

TEST(Masking, FullSetIsIdentity) {
  const Election e = linear(System::veto, {"a", "b", "c"},
                            {{{"c", "a", "b"}, 2}, {{"b", "a", "c"}, 1}});
  EXPECT_EQ(mask_votes(e.votes(), e.all_candidates()), e.votes());
}

TEST(Masking, EmptySetGivesEmptyBallots) {
  const Election e = linear(System::plurality, {"a", "b"}, {{{"a", "b"}, 3}});
  const VoteCollection m = mask_votes(e.votes(), CandidateSet{});
  EXPECT_EQ(m.voter_count(), 3u);
  EXPECT_TRUE(m.ballot_of_voter(2).order.empty());
}

TEST(Masking, UnknownCandidateIsAnError) {
  const Election e = linear(System::plurality, {"a", "b"}, {{{"a", "b"}, 1}});
  try {
    mask_votes(e.votes(), CandidateSet::of({0, 5}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::invalid_candidate);
  }
}

TEST(Scores, Plurality) {
  const Election e = linear(System::plurality, {"a", "b"},
                            {{{"a", "b"}, 2}, {{"b", "a"}, 1}});
  const Scores s = scores(System::plurality, e.all_candidates(), e.votes());
  EXPECT_EQ(s[0], 2u);
  EXPECT_EQ(s[1], 1u);
  EXPECT_EQ(winners(System::plurality, e.all_candidates(), e.votes()),
            CandidateSet::of({0}));
}

TEST(Scores, Veto) {
  const Election e = linear(System::veto, {"a", "b", "c"},
                            {{{"a", "b", "c"}, 1}, {{"b", "a", "c"}, 1}});
  const Scores s = scores(System::veto, e.all_candidates(), e.votes());
  EXPECT_EQ(s[0], 0u);
  EXPECT_EQ(s[1], 0u);
  EXPECT_EQ(s[2], 2u);
  EXPECT_EQ(winners(System::veto, e.all_candidates(), e.votes()),
            CandidateSet::of({0, 1}));
}

TEST(Scores, Approval) {
  const Election e = approval({"a", "b"}, {{1, 1}, {0, 1}});
  const Scores s = scores(System::approval, e.all_candidates(), e.votes());
  EXPECT_EQ(s[0], 1u);
  EXPECT_EQ(s[1], 2u);
}

TEST(Winners, EmptyCandidateSet) {
  const Election e = approval({"a", "b"}, {{1, 1}});
  EXPECT_TRUE(winners(System::approval, CandidateSet{}, e.votes()).empty());
}

TEST(UniqueWinnerIfAny, Cases) {
  const Election e = linear(System::veto, {"a", "b", "c"},
                            {{{"a", "b", "c"}, 1}, {{"b", "a", "c"}, 1}});
  EXPECT_TRUE(unique_winner_if_any(System::veto, e.all_candidates(),
                                   e.votes()).empty());
  EXPECT_EQ(unique_winner_if_any(System::veto, named(e, {"a", "c"}),
                                 e.votes()),
            CandidateSet::of({0}));
  EXPECT_TRUE(unique_winner_if_any(System::veto, {}, e.votes()).empty());
}

TEST(Election, RejectsBadNames) {
  EXPECT_FALSE(is_valid_candidate_name(""));
  EXPECT_FALSE(is_valid_candidate_name("a b"));
  EXPECT_FALSE(is_valid_candidate_name("a>b"));
  EXPECT_FALSE(is_valid_candidate_name("{a"));
  EXPECT_TRUE(is_valid_candidate_name("alice"));
  EXPECT_THROW(linear(System::plurality, {"a", "a"}, {}), Error);
}

TEST(Election, RejectsKindMismatch) {
  const auto universe = CandidateSet::first_n(2);
  EXPECT_THROW(Election(System::approval, {"a", "b"},
                        VoteCollection(VoteKind::linear, universe, {})),
               Error);
}

TEST(Election, RejectsIncompleteLinearBallot) {
  const auto universe = CandidateSet::first_n(3);
  EXPECT_THROW(VoteCollection(VoteKind::linear, universe,
                              {{Ballot::linear({0, 1}), 1}}),
               Error);
  EXPECT_THROW(VoteCollection(VoteKind::linear, universe,
                              {{Ballot::linear({0, 0, 1}), 1}}),
               Error);
}

// Properties over every small election.

class ElectionProperties : public ::testing::TestWithParam<System> {};

TEST_P(ElectionProperties, WinnerRules) {
  UniverseSpec spec;
  spec.system = GetParam();
  spec.max_candidates = 3;
  spec.max_votes = 3;
  for (const ControlInstance& inst : universe_instances(spec)) {
    if (inst.distinguished() != 0) continue;
    const Election& e = inst.election();
    const VoteCollection& v = e.votes();
    for (std::uint64_t bits = 0; bits < (1U << e.candidate_count()); ++bits) {
      const CandidateSet sub = CandidateSet::from_bits(bits);
      const CandidateSet w = winners(spec.system, sub, v);
      ASSERT_TRUE(w.is_subset_of(sub));
      ASSERT_EQ(w.empty(), sub.empty());
      ASSERT_EQ(w, winners(spec.system, sub, v));
      if (sub.size() == 1) ASSERT_EQ(w, sub);

      // Counting on the masked copy matches counting in place.
      const VoteCollection masked = mask_votes(v, sub);
      ASSERT_EQ(w, winners(spec.system, sub, masked));

      const Scores s = scores(spec.system, sub, v);
      if (!sub.empty() && spec.system != System::approval) {
        std::size_t total = 0;
        for (std::size_t c : sub) total += s[c];
        ASSERT_EQ(total, v.voter_count());
      }
      for (std::uint64_t inner = 0; inner < (1U << e.candidate_count());
           ++inner) {
        const CandidateSet smaller = CandidateSet::from_bits(inner);
        if (!smaller.is_subset_of(sub)) continue;
        ASSERT_EQ(mask_votes(masked, smaller), mask_votes(v, smaller));
        if (spec.system == System::approval) {
          const Scores t = scores(spec.system, smaller, v);
          for (std::size_t c : smaller) ASSERT_EQ(t[c], s[c]);
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllSystems, ElectionProperties,
                         ::testing::Values(System::plurality, System::veto,
                                           System::approval));

}  // namespace
