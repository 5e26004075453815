#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "control_forge/error.hpp"
#include "control_forge/solvers.hpp"

namespace control_forge {

namespace {

// Saturating arithmetic keeps size estimates meaningful for absurd inputs.
using Count = long double;

Count factorial(std::size_t n) {
  Count f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<Count>(i);
  return f;
}

Count binomial(Count n, std::size_t k) {
  Count r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - static_cast<Count>(k) + static_cast<Count>(i)) /
        static_cast<Count>(i);
  }
  return r;
}

Count ballot_count(VoteKind kind, std::size_t candidates) {
  return kind == VoteKind::linear ? factorial(candidates)
                                  : std::pow(Count{2}, candidates);
}

Count collections(const UniverseSpec& spec, std::size_t candidates,
                  std::size_t votes) {
  const Count ballots = ballot_count(vote_kind(spec.system), candidates);
  return spec.canonical_multisets ? binomial(ballots + votes - 1, votes)
                                  : std::pow(ballots, votes);
}

std::string candidate_name(std::size_t i) {
  std::string name(1, static_cast<char>('a' + i % 26));
  if (i >= 26) name += std::to_string(i / 26);
  return name;
}

Count evaluation_estimate(const UniverseSpec& spec,
                          const std::vector<ControlType>& types) {
  Count total = 0;
  for (std::size_t c = 1; c <= spec.max_candidates; ++c) {
    for (std::size_t v = 0; v <= spec.max_votes; ++v) {
      Count per_instance = 0;
      for (const ControlType& type : types) {
        const std::size_t length =
            partition_kind(type.action) == PartitionKind::voter ? v : c;
        per_instance += std::pow(Count{2}, length);
      }
      total += collections(spec, c, v) * static_cast<Count>(c) * per_instance;
    }
  }
  return total;
}

std::uint64_t clamp_count(Count value) {
  constexpr Count kMax = 1.8e19L;
  return value >= kMax ? UINT64_MAX : static_cast<std::uint64_t>(value);
}

void require_within_cap(const UniverseSpec& spec,
                        const std::vector<ControlType>& types) {
  const Count estimate = evaluation_estimate(spec, types);
  if (estimate > static_cast<Count>(spec.evaluation_cap)) {
    std::ostringstream msg;
    msg << "universe needs about " << clamp_count(estimate)
        << " two-stage evaluations, above the cap of " << spec.evaluation_cap;
    throw Error(ErrorCode::universe_too_large, msg.str());
  }
}

}  // namespace

std::string UniverseSpec::describe() const {
  std::ostringstream out;
  out << to_string(system) << " elections with 1.." << max_candidates
      << " candidates and 0.." << max_votes << " votes ("
      << (canonical_multisets ? "vote multisets" : "ordered vote lists")
      << ")";
  return out.str();
}

std::vector<Ballot> all_ballots(VoteKind kind, std::size_t count) {
  std::vector<Ballot> ballots;
  if (kind == VoteKind::approval) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << count); ++bits) {
      ballots.push_back(Ballot::approval(CandidateSet::from_bits(bits)));
    }
    return ballots;
  }
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  do {
    ballots.push_back(Ballot::linear(order));
  } while (std::next_permutation(order.begin(), order.end()));
  return ballots;
}

std::uint64_t universe_instance_count(const UniverseSpec& spec) {
  Count total = 0;
  for (std::size_t c = 1; c <= spec.max_candidates; ++c) {
    for (std::size_t v = 0; v <= spec.max_votes; ++v) {
      total += collections(spec, c, v) * static_cast<Count>(c);
    }
  }
  return clamp_count(total);
}

std::uint64_t universe_evaluation_estimate(
    const UniverseSpec& spec, const std::vector<ControlType>& types) {
  return clamp_count(evaluation_estimate(spec, types));
}

std::vector<ControlInstance> universe_instances(const UniverseSpec& spec) {
  if (spec.max_candidates > kMaxCandidates) {
    throw Error(ErrorCode::universe_too_large, "too many candidates");
  }
  if (universe_instance_count(spec) > spec.evaluation_cap) {
    throw Error(ErrorCode::universe_too_large,
                "universe has more instances than the evaluation cap");
  }
  const VoteKind kind = vote_kind(spec.system);
  std::vector<ControlInstance> out;
  for (std::size_t c = 1; c <= spec.max_candidates; ++c) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < c; ++i) names.push_back(candidate_name(i));
    const std::vector<Ballot> ballots = all_ballots(kind, c);
    const CandidateSet universe = CandidateSet::first_n(c);

    for (std::size_t v = 0; v <= spec.max_votes; ++v) {
      // picks[i] indexes `ballots`; multisets use nondecreasing sequences.
      std::vector<std::size_t> picks(v, 0);
      while (true) {
        std::vector<BallotGroup> groups;
        for (std::size_t i = 0; i < v; ++i) {
          if (spec.canonical_multisets && i > 0 && picks[i] == picks[i - 1]) {
            ++groups.back().multiplicity;
          } else {
            groups.push_back(BallotGroup{ballots[picks[i]], 1});
          }
        }
        Election election(spec.system, names,
                          VoteCollection(kind, universe, std::move(groups)));
        for (std::size_t p = 0; p < c; ++p) out.emplace_back(election, p);

        // Advance like an odometer, rightmost position fastest.
        std::size_t pos = v;
        while (pos > 0 && picks[pos - 1] + 1 == ballots.size()) --pos;
        if (pos == 0) break;
        ++picks[pos - 1];
        for (std::size_t i = pos; i < v; ++i) {
          picks[i] = spec.canonical_multisets ? picks[pos - 1] : 0;
        }
      }
    }
  }
  return out;
}

ScanReport collapse_scan(ControlType first, ControlType second,
                         const UniverseSpec& spec) {
  require_within_cap(spec, {first, second});
  ScanReport report{spec.describe(), first, second, 0, {}};
  const std::vector<ControlInstance> instances = universe_instances(spec);
  report.instances_checked = instances.size();

  struct Finding {
    SolveOutcome in_first;
    SolveOutcome in_second;
  };
  std::vector<Finding> findings(instances.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      findings[i] = {brute_force_search(first, instances[i]),
                     brute_force_search(second, instances[i])};
    }
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(spec.threads,
                                                     instances.size()));
  if (workers == 1) {
    work(0, instances.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (instances.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(instances.size(), begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Finding& f = findings[i];
    if (f.in_first.has_value() == f.in_second.has_value()) continue;
    const bool in_first = f.in_first.has_value();
    report.counterexamples.push_back(
        Counterexample{instances[i], in_first,
                       in_first ? f.in_first : f.in_second});
  }
  return report;
}

}  // namespace control_forge
