#include "control_forge/cli/documents.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "control_forge/error.hpp"

namespace control_forge::cli {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string_view trim(std::string_view s) {
  const auto not_space = [](char ch) {
    return ch != ' ' && ch != '\t' && ch != '\r' && ch != '\n';
  };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

/// Non-blank lines with comments removed.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (!line.empty()) lines.push_back({number, std::string(line)});
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> split_words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    parts.push_back(trim(s.substr(start, at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::parse_error,
              "line " + std::to_string(line) + ": " + message);
}

/// "key: value" with a known key, or nullopt.
std::optional<std::pair<std::string, std::string>> key_value(
    std::string_view line) {
  const std::size_t colon = line.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  return std::make_pair(std::string(trim(line.substr(0, colon))),
                        std::string(trim(line.substr(colon + 1))));
}

std::optional<std::size_t> parse_count(std::string_view s) {
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return value;
}

std::size_t candidate_index(const std::vector<std::string>& names,
                            std::string_view name, std::size_t line) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    fail(line, "unknown candidate '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - names.begin());
}

Ballot parse_ballot(std::string_view text, System system,
                    const std::vector<std::string>& names, std::size_t line) {
  const bool approval_syntax = !text.empty() && text.front() == '{';
  const VoteKind kind = vote_kind(system);
  if (approval_syntax != (kind == VoteKind::approval)) {
    fail(line, std::string(approval_syntax ? "approval" : "linear") +
                   " ballot in a " + to_string(system) + " election");
  }
  if (kind == VoteKind::approval) {
    if (text.back() != '}') fail(line, "approval ballot must end with '}'");
    const std::string_view inner = trim(text.substr(1, text.size() - 2));
    CandidateSet approved;
    if (!inner.empty()) {
      for (std::string_view name : split(inner, ',')) {
        const std::size_t index = candidate_index(names, name, line);
        if (approved.contains(index)) {
          fail(line, "duplicate candidate '" + std::string(name) +
                         "' in ballot");
        }
        approved.insert(index);
      }
    }
    return Ballot::approval(approved);
  }

  std::vector<std::size_t> order;
  CandidateSet seen;
  for (std::string_view name : split(text, '>')) {
    const std::size_t index = candidate_index(names, name, line);
    if (seen.contains(index)) {
      fail(line, "duplicate candidate '" + std::string(name) + "' in ballot");
    }
    seen.insert(index);
    order.push_back(index);
  }
  if (order.size() != names.size()) {
    std::string missing;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!seen.contains(i)) missing += (missing.empty() ? "" : " ") + names[i];
    }
    fail(line, "incomplete ballot, missing " + missing);
  }
  return Ballot::linear(std::move(order));
}

}  // namespace

ElectionDocument parse_election(std::string_view text) {
  std::optional<System> system;
  std::optional<std::vector<std::string>> names;
  std::optional<std::pair<std::string, std::size_t>> distinguished;
  std::vector<BallotGroup> groups;
  std::vector<std::size_t> vote_lines;
  std::size_t candidates_line = 0;

  for (const Line& line : content_lines(text)) {
    if (auto kv = key_value(line.text)) {
      const auto& [key, value] = *kv;
      if (key == "system") {
        if (system) fail(line.number, "repeated 'system:'");
        system = parse_system(value);
        if (!system) fail(line.number, "unknown system '" + value + "'");
      } else if (key == "candidates") {
        if (names) fail(line.number, "repeated 'candidates:'");
        names = split_words(value);
        candidates_line = line.number;
        std::set<std::string> unique;
        for (const std::string& name : *names) {
          if (!is_valid_candidate_name(name)) {
            fail(line.number, "invalid candidate name '" + name + "'");
          }
          if (!unique.insert(name).second) {
            fail(line.number, "duplicate candidate '" + name + "'");
          }
        }
        if (names->size() > kMaxCandidates) {
          fail(line.number, "at most " + std::to_string(kMaxCandidates) +
                                " candidates are supported");
        }
      } else if (key == "distinguished") {
        if (distinguished) fail(line.number, "repeated 'distinguished:'");
        distinguished = std::make_pair(value, line.number);
      } else {
        fail(line.number, "unknown key '" + key + "'");
      }
      continue;
    }

    if (!system || !names) {
      fail(line.number, "votes must follow 'system:' and 'candidates:'");
    }
    std::string_view ballot_text = line.text;
    std::size_t multiplicity = 1;
    // Optional "<mult> x " prefix.
    const std::size_t digits = ballot_text.find_first_not_of("0123456789");
    if (digits != 0 && digits != std::string_view::npos) {
      std::string_view rest = trim(ballot_text.substr(digits));
      if (rest.size() > 1 && rest[0] == 'x' &&
          (rest[1] == ' ' || rest[1] == '\t')) {
        const auto count = parse_count(ballot_text.substr(0, digits));
        if (!count || *count == 0) {
          fail(line.number, "multiplicity must be a positive integer");
        }
        multiplicity = *count;
        ballot_text = trim(rest.substr(1));
      }
    }
    groups.push_back(
        {parse_ballot(ballot_text, *system, *names, line.number), multiplicity});
    vote_lines.push_back(line.number);
  }

  if (!system) throw Error(ErrorCode::parse_error, "missing 'system:'");
  if (!names) throw Error(ErrorCode::parse_error, "missing 'candidates:'");
  if (distinguished &&
      std::find(names->begin(), names->end(), distinguished->first) ==
          names->end()) {
    fail(distinguished->second,
         "unknown candidate '" + distinguished->first + "'");
  }
  try {
    const CandidateSet universe = CandidateSet::first_n(names->size());
    Election election(*system, *names,
                      VoteCollection(vote_kind(*system), universe,
                                     std::move(groups)));
    return ElectionDocument{
        std::move(election),
        distinguished ? std::optional<std::string>(distinguished->first)
                      : std::nullopt,
        std::move(vote_lines)};
  } catch (const Error& e) {
    fail(candidates_line, e.what());
  }
}

std::string format_ballot(const Ballot& ballot, const Election& election) {
  std::string out;
  if (election.votes().kind() == VoteKind::approval) {
    return format_set(ballot.approvals, election);
  }
  for (std::size_t i = 0; i < ballot.order.size(); ++i) {
    if (i > 0) out += '>';
    out += election.name(ballot.order[i]);
  }
  return out;
}

std::string format_set(CandidateSet set, const Election& election) {
  std::string out = "{";
  bool first = true;
  for (std::size_t c : set) {
    if (!first) out += ',';
    out += election.name(c);
    first = false;
  }
  return out + "}";
}

std::string serialize_election(const Election& election,
                               const std::optional<std::string>& distinguished) {
  std::string out = "system: ";
  out += to_string(election.system());
  out += "\ncandidates:";
  for (const std::string& name : election.candidates()) out += " " + name;
  out += "\n";
  if (distinguished) out += "distinguished: " + *distinguished + "\n";
  for (const BallotGroup& group : election.votes().groups()) {
    if (group.multiplicity != 1) {
      out += std::to_string(group.multiplicity) + " x ";
    }
    out += format_ballot(group.ballot, election) + "\n";
  }
  return out;
}

Partition parse_partition(std::string_view text, PartitionKind kind,
                          const Election& election) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.size() != 1) {
    fail(lines.empty() ? 1 : lines[1].number,
         "a partition is a single 'block1: ... | block2: ...' line");
  }
  const Line& line = lines.front();
  const std::vector<std::string_view> parts = split(line.text, '|');
  if (parts.size() != 2) fail(line.number, "expected exactly one '|'");

  const std::size_t universe_size = kind == PartitionKind::voter
                                        ? election.votes().voter_count()
                                        : election.candidate_count();
  std::vector<bool> placed(universe_size, false);
  Partition partition;
  partition.kind = kind;
  const char* labels[] = {"block1", "block2"};
  for (std::size_t b = 0; b < 2; ++b) {
    const auto kv = key_value(parts[b]);
    if (!kv || kv->first != labels[b]) {
      fail(line.number, std::string("expected '") + labels[b] + ":'");
    }
    std::vector<std::size_t>& block = b == 0 ? partition.first
                                             : partition.second;
    for (const std::string& word : split_words(kv->second)) {
      std::size_t index = 0;
      if (kind == PartitionKind::voter) {
        const auto parsed = parse_count(word);
        if (!parsed || *parsed >= universe_size) {
          fail(line.number, "unknown voter index '" + word + "'");
        }
        index = *parsed;
      } else {
        index = candidate_index(election.candidates(), word, line.number);
      }
      if (placed[index]) {
        fail(line.number, "'" + word + "' appears more than once");
      }
      placed[index] = true;
      block.push_back(index);
    }
    std::sort(block.begin(), block.end());
  }
  for (std::size_t i = 0; i < universe_size; ++i) {
    if (!placed[i]) {
      fail(line.number,
           "'" + (kind == PartitionKind::voter ? std::to_string(i)
                                               : election.name(i)) +
               "' is in neither block");
    }
  }
  return partition;
}

std::string serialize_partition(const Partition& partition,
                                const Election& election) {
  auto block = [&](const std::vector<std::size_t>& members) {
    std::string out;
    for (std::size_t x : members) {
      out += " ";
      out += partition.kind == PartitionKind::voter ? std::to_string(x)
                                                    : election.name(x);
    }
    return out;
  };
  return "block1:" + block(partition.first) + " | block2:" +
         block(partition.second);
}

HittingSetInstance parse_hitting_set(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  HittingSetInstance hs;
  auto expect = [&](std::size_t i, const char* key) {
    if (i >= lines.size()) {
      fail(lines.empty() ? 1 : lines.back().number + 1,
           std::string("missing '") + key + ":'");
    }
    const auto kv = key_value(lines[i].text);
    if (!kv || kv->first != key) {
      fail(lines[i].number, std::string("expected '") + key + ":'");
    }
    return kv->second;
  };

  hs.elements = split_words(expect(0, "elements"));
  const std::string k_text = expect(1, "k");
  const auto k = parse_count(k_text);
  if (!k) fail(lines[1].number, "k must be a nonnegative integer");
  hs.k = *k;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    std::vector<std::size_t> set;
    for (const std::string& word : split_words(expect(i, "set"))) {
      const std::size_t index =
          candidate_index(hs.elements, word, lines[i].number);
      if (std::find(set.begin(), set.end(), index) != set.end()) {
        fail(lines[i].number, "duplicate element '" + word + "'");
      }
      set.push_back(index);
    }
    std::sort(set.begin(), set.end());
    hs.sets.push_back(std::move(set));
  }
  hs.validate();
  return hs;
}

std::string serialize_hitting_set(const HittingSetInstance& hs) {
  std::string out = "elements:";
  for (const std::string& e : hs.elements) out += " " + e;
  out += "\nk: " + std::to_string(hs.k) + "\n";
  for (const auto& set : hs.sets) {
    out += "set:";
    for (std::size_t e : set) out += " " + hs.elements[e];
    out += "\n";
  }
  return out;
}

}  // namespace control_forge::cli
