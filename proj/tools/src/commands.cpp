#include "control_forge/cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "control_forge/cli/documents.hpp"
#include "control_forge/error.hpp"
#include "control_forge/hardness.hpp"
#include "control_forge/reductions.hpp"
#include "control_forge/solvers.hpp"

namespace control_forge::cli {

using Json = nlohmann::ordered_json;

int exit_code_of(const Json& machine) {
  static const char* kPositive[] = {"winners",     "success", "solution",
                                    "transferred", "agree",   "encoded",
                                    "decoded"};
  static const char* kNegative[] = {"failure", "no-solution", "rejected",
                                    "counterexamples"};
  if (!machine.contains("outcome") || !machine["outcome"].is_string()) {
    return 2;
  }
  const std::string outcome = machine["outcome"].get<std::string>();
  for (const char* p : kPositive) {
    if (outcome == p) return 0;
  }
  for (const char* n : kNegative) {
    if (outcome == n) return 1;
  }
  return 2;
}

void print_report(const RunReport& report, std::ostream& out) {
  out << "$ " << report.command << "\n";
  for (const std::string& line : report.human) out << line << "\n";
  out << "-- machine-readable --\n" << report.machine.dump(2) << "\n";
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_error, "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

/// Distinguished candidate from the flag, else the file.
ControlInstance load_instance(const std::string& path,
                              const std::string& candidate_flag) {
  ElectionDocument doc = parse_election(read_file(path));
  const std::string name =
      !candidate_flag.empty() ? candidate_flag : doc.distinguished.value_or("");
  if (name.empty()) {
    throw Error(ErrorCode::invalid_candidate,
                "no distinguished candidate: pass --candidate or add a "
                "'distinguished:' line");
  }
  const auto index = doc.election.index_of(name);
  if (!index) {
    throw Error(ErrorCode::invalid_candidate,
                "unknown candidate '" + name + "'");
  }
  return ControlInstance(std::move(doc.election), *index);
}

std::string instance_text(const ControlInstance& instance) {
  return serialize_election(instance.election(),
                            instance.election().name(instance.distinguished()));
}

Json names_json(CandidateSet set, const Election& election) {
  Json out = Json::array();
  for (const std::string& name : election.names_of(set)) out.push_back(name);
  return out;
}

std::vector<std::string> trace_lines(const TwoStageTrace& trace,
                                     const Election& election) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < trace.first_rounds.size(); ++i) {
    const FirstRound& round = trace.first_rounds[i];
    std::string line = "first round " + std::to_string(i + 1) + ": candidates " +
                       format_set(round.candidates, election);
    if (round.voters) {
      line += " | voters";
      for (std::size_t v : *round.voters) line += " " + std::to_string(v);
    }
    line += " | winners " + format_set(round.winners, election) +
            " | survivors " + format_set(round.survivors, election);
    lines.push_back(line);
  }
  if (trace.type.action == Action::pc) {
    lines.push_back("passed through: " +
                    format_set(trace.passed_through, election));
  }
  lines.push_back("final: candidates " +
                  format_set(trace.final_candidates, election) +
                  " | winners " + format_set(trace.final_winners, election));
  return lines;
}

Json trace_json(const TwoStageTrace& trace, const Election& election) {
  Json rounds = Json::array();
  for (const FirstRound& round : trace.first_rounds) {
    Json r;
    r["candidates"] = names_json(round.candidates, election);
    if (round.voters) r["voters"] = *round.voters;
    r["winners"] = names_json(round.winners, election);
    r["survivors"] = names_json(round.survivors, election);
    rounds.push_back(r);
  }
  Json out;
  out["first_rounds"] = rounds;
  if (trace.type.action == Action::pc) {
    out["passed_through"] = names_json(trace.passed_through, election);
  }
  out["final_candidates"] = names_json(trace.final_candidates, election);
  out["final_winners"] = names_json(trace.final_winners, election);
  return out;
}

std::string goal_text(ControlType type, const std::string& p) {
  const bool unique = type.winner_model == WinnerModel::uw;
  if (type.direction == Direction::constructive) {
    return unique ? p + " must be the unique winner" : p + " must be a winner";
  }
  return unique ? p + " must not be the unique winner"
                : p + " must not be a winner";
}

std::uint64_t evaluation_cap(std::uint64_t flag_value, bool flag_given) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("CONTROL_FORGE_MAX_EVALS")) {
    try {
      std::size_t used = 0;
      const unsigned long long value = std::stoull(env, &used);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::parse_error,
                std::string("CONTROL_FORGE_MAX_EVALS is not a number: ") + env);
  }
  return kDefaultEvaluationCap;
}

void require_search_within_cap(ControlType type,
                               const ControlInstance& instance,
                               std::uint64_t cap) {
  const std::size_t length =
      encoding_length(partition_kind(type.action), instance);
  if (length >= 64 || (std::uint64_t{1} << length) > cap) {
    throw Error(ErrorCode::universe_too_large,
                "exhaustive search needs 2^" + std::to_string(length) +
                    " evaluations, above the cap of " + std::to_string(cap));
  }
}

struct Options {
  std::string election_path;
  std::string candidate;
  bool trace = false;
  std::string type;
  std::string partition_path;
  std::string algorithm = "auto";
  std::string from;
  std::string to;
  std::string solution_path;
  std::string pair;
  std::string system;
  std::size_t max_candidates = 0;
  std::size_t max_votes = 0;
  bool no_canonical = false;
  unsigned threads = 1;
  std::uint64_t max_evals = 0;
  bool max_evals_given = false;
  std::string hs_path;
  std::string output_path;
};

RunReport winners_command(const Options& o) {
  const ElectionDocument doc = parse_election(read_file(o.election_path));
  const Election& e = doc.election;
  const CandidateSet all = e.all_candidates();
  const Scores s = scores(e.system(), all, e.votes());
  const CandidateSet w = winners(e.system(), all, e.votes());

  RunReport report;
  const char* measure = e.system() == System::plurality ? "first places"
                        : e.system() == System::veto    ? "vetoes"
                                                        : "approvals";
  std::string line = std::string("scores (") + measure + "):";
  Json score_json = Json::object();
  for (std::size_t c : all) {
    line += " " + e.name(c) + "=" + std::to_string(s[c]);
    score_json[e.name(c)] = s[c];
  }
  report.human = {std::string("system: ") + to_string(e.system()), line,
                  "winners: " + format_set(w, e)};
  report.machine["command"] = "winners";
  report.machine["system"] = to_string(e.system());
  report.machine["scores"] = score_json;
  report.machine["winners"] = names_json(w, e);
  report.machine["outcome"] = "winners";
  return report;
}

RunReport evaluate_command(const Options& o, bool verdict_only) {
  const ControlType type = ControlType::parse(o.type);
  const ControlInstance instance = load_instance(o.election_path, o.candidate);
  const Election& e = instance.election();
  const Partition partition = parse_partition(
      read_file(o.partition_path), partition_kind(type.action), e);
  const Verdict verdict = check_solution(type, instance, partition);
  const std::string p = e.name(instance.distinguished());

  RunReport report;
  report.human.push_back(std::string("system: ") + to_string(e.system()) +
                         " | type: " + type.to_string() + " | p = " + p);
  report.human.push_back("partition: " + serialize_partition(partition, e));
  if (verdict.trace && (!verdict_only || o.trace)) {
    for (std::string& line : trace_lines(*verdict.trace, e)) {
      report.human.push_back(std::move(line));
    }
  }
  report.human.push_back("goal: " + goal_text(type, p) + " -> " +
                         (verdict.success ? "met" : "not met"));
  if (!verdict.diagnostic.empty()) {
    report.human.push_back("diagnostic: " + verdict.diagnostic);
  }

  Json& m = report.machine;
  m["command"] = verdict_only ? "verify" : "evaluate";
  m["system"] = to_string(e.system());
  m["type"] = type.to_string();
  m["election"] = instance_text(instance);
  m["partition"] = serialize_partition(partition, e);
  if (verdict.trace && (!verdict_only || o.trace)) {
    m["trace"] = trace_json(*verdict.trace, e);
  }
  m["verdict"] = verdict.success;
  m["outcome"] = verdict.success ? "success" : "failure";
  return report;
}

RunReport solve_command(const Options& o, std::uint64_t cap) {
  const ControlType type = ControlType::parse(o.type);
  const ControlInstance instance = load_instance(o.election_path, o.candidate);
  const Election& e = instance.election();

  std::string algorithm = o.algorithm;
  if (algorithm == "auto") {
    algorithm = has_polynomial_algorithm(e.system(), type) ? "poly" : "brute";
  }
  SolveOutcome outcome;
  std::string label;
  std::optional<std::size_t> oracle_calls;
  if (algorithm == "poly") {
    outcome = polynomial_search(type, instance);
    label = type == ControlType::parse("CC-RPC-TE-NUW")
                ? "approval CC-RPC-TE-NUW algorithm (polynomial)"
                : "approval immunity algorithm (polynomial)";
  } else if (algorithm == "brute") {
    require_search_within_cap(type, instance, cap);
    outcome = brute_force_search(type, instance);
    label = "brute force";
  } else {
    require_search_within_cap(type, instance, cap);
    const OracleSearchResult result =
        lex_min_search_with_oracle(type, instance, brute_force_oracle());
    outcome = result.outcome;
    oracle_calls = result.oracle_calls;
    label = "lexicographic search with a brute-force decision oracle";
  }

  RunReport report;
  report.human.push_back(std::string("system: ") + to_string(e.system()) +
                         " | type: " + type.to_string() + " | p = " +
                         e.name(instance.distinguished()));
  report.human.push_back("algorithm: " + label);
  if (oracle_calls) {
    report.human.push_back("oracle calls: " + std::to_string(*oracle_calls));
  }
  Json& m = report.machine;
  m["command"] = "solve";
  m["system"] = to_string(e.system());
  m["type"] = type.to_string();
  m["election"] = instance_text(instance);
  m["algorithm"] = algorithm;
  if (oracle_calls) m["oracle_calls"] = *oracle_calls;
  if (!outcome) {
    report.human.push_back("no solution");
    m["outcome"] = "no-solution";
    return report;
  }
  const Verdict verdict = check_solution(type, instance, *outcome);
  report.human.push_back("solution: " + serialize_partition(*outcome, e));
  if (o.trace && verdict.trace) {
    for (std::string& line : trace_lines(*verdict.trace, e)) {
      report.human.push_back(std::move(line));
    }
    m["trace"] = trace_json(*verdict.trace, e);
  }
  m["solution"] = serialize_partition(*outcome, e);
  m["verified"] = verdict.success;
  m["outcome"] = "solution";
  return report;
}

TransferRule select_rule(System system, ControlType to, ControlType from) {
  for (const TransferRule* rule : rules_for(system)) {
    if (rule->produces == to && rule->consumes == from) return *rule;
  }
  if (auto chain = find_transfer_chain(system, to, from)) {
    return chain_rule(*chain);
  }
  throw Error(ErrorCode::unsupported_algorithm,
              "no transfer from " + from.to_string() + " to " +
                  to.to_string() + " for " + to_string(system));
}

RunReport reduce_command(const Options& o) {
  const ControlType from = ControlType::parse(o.from);
  const ControlType to = ControlType::parse(o.to);
  const ControlInstance instance = load_instance(o.election_path, o.candidate);
  const Election& e = instance.election();
  const Partition input = parse_partition(read_file(o.solution_path),
                                          partition_kind(from.action), e);
  const TransferRule rule = select_rule(e.system(), to, from);
  const TransferOutcome outcome = rule.apply(instance, input);

  RunReport report;
  report.human.push_back(std::string("system: ") + to_string(e.system()) +
                         " | " + to.to_string() + " from " + from.to_string() +
                         " | p = " + e.name(instance.distinguished()));
  report.human.push_back("transfer: " + rule.name + " (" +
                         to_string(rule.construction) + ")");
  report.human.push_back("input: " + serialize_partition(input, e));
  Json& m = report.machine;
  m["command"] = "reduce";
  m["system"] = to_string(e.system());
  m["from"] = from.to_string();
  m["to"] = to.to_string();
  m["election"] = instance_text(instance);
  m["input"] = serialize_partition(input, e);
  m["transfer"] = rule.name;
  if (outcome.rejected()) {
    report.human.push_back("rejected: the input is not a " +
                           from.to_string() + " solution");
    m["outcome"] = "rejected";
    return report;
  }
  const Verdict verdict = check_solution(to, instance, *outcome.solution);
  report.human.push_back("output: " +
                         serialize_partition(*outcome.solution, e));
  if (outcome.fallback) {
    report.human.push_back(
        "note: produced by exhaustive fallback search, not a direct "
        "construction");
  }
  if (o.trace && verdict.trace) {
    for (std::string& line : trace_lines(*verdict.trace, e)) {
      report.human.push_back(std::move(line));
    }
    m["trace"] = trace_json(*verdict.trace, e);
  }
  m["solution"] = serialize_partition(*outcome.solution, e);
  m["fallback"] = outcome.fallback;
  m["verified"] = verdict.success;
  m["outcome"] = "transferred";
  return report;
}

RunReport collapse_scan_command(const Options& o, std::uint64_t cap) {
  const std::size_t comma = o.pair.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorCode::parse_error,
                "--pair expects two types separated by a comma");
  }
  const ControlType first = ControlType::parse(o.pair.substr(0, comma));
  const ControlType second = ControlType::parse(o.pair.substr(comma + 1));
  const auto system = parse_system(o.system);
  if (!system) {
    throw Error(ErrorCode::parse_error, "unknown system '" + o.system + "'");
  }
  UniverseSpec spec;
  spec.system = *system;
  spec.max_candidates = o.max_candidates;
  spec.max_votes = o.max_votes;
  spec.canonical_multisets = !o.no_canonical;
  spec.evaluation_cap = cap;
  spec.threads = o.threads;
  const ScanReport scan = collapse_scan(first, second, spec);
  const bool listed = is_collapsing_pair(*system, first, second);

  RunReport report;
  report.human.push_back("pair: " + first.to_string() + " vs " +
                         second.to_string() +
                         (listed ? " (listed as collapsing)"
                                 : " (not listed as collapsing)"));
  report.human.push_back("universe: " + scan.universe);
  report.human.push_back("instances checked: " +
                         std::to_string(scan.instances_checked));
  report.human.push_back("counterexamples: " +
                         std::to_string(scan.counterexamples.size()));

  Json examples = Json::array();
  for (std::size_t i = 0; i < scan.counterexamples.size(); ++i) {
    const Counterexample& ce = scan.counterexamples[i];
    const Election& e = ce.instance.election();
    const ControlType member = ce.in_first ? first : second;
    Json x;
    x["election"] = instance_text(ce.instance);
    x["member_of"] = member.to_string();
    x["witness"] = serialize_partition(*ce.witness, e);
    examples.push_back(x);
    if (i < 10) {
      std::string votes;
      for (const BallotGroup& g : e.votes().groups()) {
        votes += " ";
        if (g.multiplicity != 1) votes += std::to_string(g.multiplicity) + "x";
        votes += format_ballot(g.ballot, e);
      }
      report.human.push_back(
          "  candidates " + format_set(e.all_candidates(), e) + ", p = " +
          e.name(ce.instance.distinguished()) + ", votes [" +
          (votes.empty() ? "" : votes.substr(1)) + "]: only " +
          member.to_string() + ", via " +
          serialize_partition(*ce.witness, e));
    }
  }
  if (scan.counterexamples.size() > 10) {
    report.human.push_back("  ... " +
                           std::to_string(scan.counterexamples.size() - 10) +
                           " more in the machine-readable section");
  }

  Json& m = report.machine;
  m["command"] = "collapse-scan";
  m["system"] = to_string(*system);
  m["first"] = first.to_string();
  m["second"] = second.to_string();
  m["listed_as_collapsing"] = listed;
  m["max_candidates"] = spec.max_candidates;
  m["max_votes"] = spec.max_votes;
  m["canonical_multisets"] = spec.canonical_multisets;
  m["instances_checked"] = scan.instances_checked;
  m["counterexamples"] = examples;
  m["outcome"] = scan.agree() ? "agree" : "counterexamples";
  return report;
}

RunReport encode_hs_command(const Options& o) {
  const HittingSetInstance hs = parse_hitting_set(read_file(o.hs_path));
  const EncodedInstance encoded = encode_hitting_set(hs);
  const std::string election = instance_text(encoded.instance);
  if (!o.output_path.empty()) {
    std::ofstream file(o.output_path, std::ios::binary);
    if (!(file << election)) {
      throw Error(ErrorCode::parse_error,
                  "cannot write '" + o.output_path + "'");
    }
  }

  RunReport report;
  const Election& e = encoded.instance.election();
  report.human.push_back("hitting set: m = " +
                         std::to_string(hs.elements.size()) + ", n = " +
                         std::to_string(hs.sets.size()) + ", k = " +
                         std::to_string(hs.k));
  report.human.push_back("plurality election with " +
                         std::to_string(e.votes().voter_count()) +
                         " votes, distinguished candidate c");
  Json clauses = Json::array();
  for (std::size_t g = 0; g < encoded.clauses.size(); ++g) {
    const BallotGroup& group = e.votes().groups()[g];
    Json c;
    c["clause"] = to_string(encoded.clauses[g]);
    c["ballot"] = format_ballot(group.ballot, e);
    c["count"] = group.multiplicity;
    clauses.push_back(c);
  }
  if (!o.output_path.empty()) {
    report.human.push_back("written to " + o.output_path);
  } else {
    std::istringstream lines(election);
    for (std::string line; std::getline(lines, line);) {
      report.human.push_back("  " + line);
    }
  }
  Json& m = report.machine;
  m["command"] = "encode-hs";
  m["hitting_set"] = serialize_hitting_set(hs);
  m["election"] = election;
  m["clauses"] = clauses;
  m["outcome"] = "encoded";
  return report;
}

RunReport decode_hs_command(const Options& o) {
  const HittingSetInstance hs = parse_hitting_set(read_file(o.hs_path));
  const EncodedInstance encoded = encode_hitting_set(hs);
  const Election& e = encoded.instance.election();
  const Partition solution =
      parse_partition(read_file(o.solution_path), PartitionKind::candidate, e);
  const auto extracted = extract_hitting_set(encoded, solution);

  RunReport report;
  report.human.push_back("solution: " + serialize_partition(solution, e));
  Json& m = report.machine;
  m["command"] = "decode-hs";
  m["hitting_set"] = serialize_hitting_set(hs);
  m["solution"] = serialize_partition(solution, e);
  if (!extracted) {
    report.human.push_back("rejected: not a " + kHardnessType.to_string() +
                           " solution of the encoded election");
    m["outcome"] = "rejected";
    return report;
  }
  const bool valid =
      extracted->size() <= hs.k && is_hitting_set(hs, *extracted);
  report.human.push_back("hitting set: " + format_set(*extracted, e) +
                         " (size " + std::to_string(extracted->size()) +
                         ", k = " + std::to_string(hs.k) + ")");
  m["elements"] = names_json(*extracted, e);
  m["valid"] = valid;
  m["outcome"] = "decoded";
  return report;
}

std::string join(const std::vector<std::string>& args) {
  std::string out = "control-forge";
  for (const std::string& a : args) out += " " + a;
  return out;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  Options o;
  CLI::App app{"Partition control of plurality, veto and approval elections",
               "control-forge"};
  app.require_subcommand(1);

  auto control_flags = [&](CLI::App* sub) {
    sub->add_option("--candidate", o.candidate,
                    "Distinguished candidate (overrides the file)");
    sub->add_flag("--trace", o.trace, "Print the two-stage trace");
  };

  CLI::App* winners_cmd =
      app.add_subcommand("winners", "Scores and winners of an election");
  winners_cmd->add_option("election", o.election_path)->required();

  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Run a two-stage election and show it");
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check whether a partition is a solution");
  for (CLI::App* sub : {evaluate_cmd, verify_cmd}) {
    sub->add_option("--type", o.type, "Control type, e.g. DC-RPC-TE-UW")
        ->required();
    sub->add_option("--partition", o.partition_path)->required();
    sub->add_option("election", o.election_path)->required();
    control_flags(sub);
  }

  CLI::App* solve_cmd = app.add_subcommand("solve", "Search for a solution");
  solve_cmd->add_option("--type", o.type)->required();
  solve_cmd->add_option("--algorithm", o.algorithm)
      ->check(CLI::IsMember({"auto", "brute", "poly", "oracle"}));
  solve_cmd->add_option("election", o.election_path)->required();
  control_flags(solve_cmd);

  CLI::App* reduce_cmd = app.add_subcommand(
      "reduce", "Turn a solution of one type into one of another");
  reduce_cmd->add_option("--from", o.from, "Type the input solves")
      ->required();
  reduce_cmd->add_option("--to", o.to, "Type the output should solve")
      ->required();
  reduce_cmd->add_option("--solution", o.solution_path)->required();
  reduce_cmd->add_option("election", o.election_path)->required();
  control_flags(reduce_cmd);

  CLI::App* scan_cmd = app.add_subcommand(
      "collapse-scan", "Compare two control types on every small election");
  scan_cmd->add_option("--pair", o.pair, "T1,T2")->required();
  scan_cmd->add_option("--system", o.system)->required();
  scan_cmd->add_option("--max-candidates", o.max_candidates)->required();
  scan_cmd->add_option("--max-votes", o.max_votes)->required();
  scan_cmd->add_flag("--no-canonical", o.no_canonical,
                     "Enumerate ordered vote lists instead of multisets");
  scan_cmd->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  CLI::Option* max_evals_opt = scan_cmd->add_option(
      "--max-evals", o.max_evals, "Cap on two-stage evaluations");

  CLI::App* encode_cmd = app.add_subcommand(
      "encode-hs", "Build the plurality election for a hitting-set instance");
  encode_cmd->add_option("hitting-set", o.hs_path)->required();
  encode_cmd->add_option("--output", o.output_path,
                         "Also write the election file here");

  CLI::App* decode_cmd = app.add_subcommand(
      "decode-hs", "Recover a hitting set from a solution");
  decode_cmd->add_option("--solution", o.solution_path)->required();
  decode_cmd->add_option("hitting-set", o.hs_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  o.max_evals_given = max_evals_opt->count() > 0;

  try {
    RunReport report;
    if (winners_cmd->parsed()) {
      report = winners_command(o);
    } else if (evaluate_cmd->parsed()) {
      report = evaluate_command(o, false);
    } else if (verify_cmd->parsed()) {
      report = evaluate_command(o, true);
    } else if (solve_cmd->parsed()) {
      report = solve_command(o, evaluation_cap(0, false));
    } else if (reduce_cmd->parsed()) {
      report = reduce_command(o);
    } else if (scan_cmd->parsed()) {
      report = collapse_scan_command(
          o, evaluation_cap(o.max_evals, o.max_evals_given));
    } else if (encode_cmd->parsed()) {
      report = encode_hs_command(o);
    } else {
      report = decode_hs_command(o);
    }
    report.command = join(args);
    print_report(report, out);
    return exit_code_of(report.machine);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace control_forge::cli
