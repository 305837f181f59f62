// fabula: batch front end for planning, validation, narration and QUEST.
// Exit codes: 0 ok, 1 usage, 2 parse error, 3 no solution, 4 limit
// exceeded, 5 validation failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fabula/dsl/domain.hpp"
#include "fabula/dsl/rules.hpp"
#include "fabula/dsl/templates.hpp"
#include "fabula/io/plan_io.hpp"
#include "fabula/narrate/narrate.hpp"
#include "fabula/planning/search.hpp"
#include "fabula/planning/validate.hpp"
#include "fabula/quest/quest.hpp"
#include "json.hpp"

using namespace fabula;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kNoSolution = 3, kLimit = 4, kInvalid = 5 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

struct Options {
  std::string domain, problem, algorithm = "ipocl", rules, heuristic, strategy = "default";
  std::string trace, out, dot, templates, format = "json", plan, csv;
  std::int64_t max_nodes = 5'000'000;
  int max_depth = 1000;
  int max_steps = 0;
  int max_length = 4;
};

Algorithm algorithm_of(const std::string& name) {
  return name == "pocl" ? Algorithm::kPocl : Algorithm::kIpocl;
}

Task load_task(const Options& o) { return Task(load_domain(o.domain), load_problem(o.problem)); }

int cmd_plan(const Options& o) {
  Task task = load_task(o);
  SearchConfig cfg;
  cfg.algorithm = algorithm_of(o.algorithm);
  if (!o.heuristic.empty()) {
    cfg.heuristic.kind = *parse_heuristic_kind(o.heuristic);
  } else if (cfg.algorithm == Algorithm::kPocl) {
    cfg.heuristic.kind = HeuristicKind::kClassical;
  } else {
    cfg.heuristic.kind = o.rules.empty() ? HeuristicKind::kIpoclDi : HeuristicKind::kCombined;
  }
  if (!o.rules.empty()) cfg.heuristic.rules = load_rules(o.rules);
  cfg.max_nodes = o.max_nodes;
  cfg.max_depth = o.max_depth;
  cfg.max_steps = o.max_steps;
  cfg.flaw_strategy = *parse_flaw_strategy(o.strategy);
  cfg.trace = !o.trace.empty();

  SearchResult r = plan_search(task, cfg);
  std::cerr << "search: " << outcome_name(r.outcome) << ", " << r.stats.nodes_generated << " generated, "
            << r.stats.nodes_visited << " visited, " << r.stats.wall_seconds << " s\n";
  if (cfg.trace) emit(o.trace, r.trace);
  if (!r.plan) {
    std::cerr << (r.outcome == SearchOutcome::kNodeLimit ? "limit exceeded" : "no solution") << "\n";
    return r.outcome == SearchOutcome::kNodeLimit ? kLimit : kNoSolution;
  }
  if (!o.dot.empty()) emit(o.dot, plan_to_dot(*r.plan));
  if (o.format == "text") {
    std::string text;
    for (StepId s : story_order(*r.plan)) text += std::to_string(s) + " " + r.plan->step_label(s) + "\n";
    for (const auto& c : r.plan->frames) {
      text += "frame " + std::to_string(c.id) + " " + symbol_name(c.character) + " " +
              to_string(r.plan->frame_goal(c)) + "\n";
    }
    emit(o.out, text);
  } else {
    emit(o.out, plan_to_json(*r.plan, task, cfg.algorithm, &r.stats));
  }
  return kOk;
}

// Reads the plan; the algorithm defaults to the one recorded in the file.
Plan read_plan(const Options& o, const Task& task, Algorithm& algo, std::vector<std::string>* problems,
               bool algorithm_given) {
  std::string text = slurp(o.plan);
  Plan plan = plan_from_json(text, task, problems);
  algo = algorithm_of(o.algorithm);
  if (!algorithm_given) {
    auto doc = nlohmann::json::parse(text);
    algo = algorithm_of(doc.value("algorithm", "ipocl"));
  }
  return plan;
}

int cmd_validate(const Options& o, bool algorithm_given) {
  Task task = load_task(o);
  Algorithm algo;
  std::vector<std::string> problems;
  Plan plan = read_plan(o, task, algo, &problems, algorithm_given);
  ValidationReport rep = validate(plan, task, algo);
  problems.insert(problems.end(), rep.violations.begin(), rep.violations.end());
  if (o.format == "json") {
    nlohmann::json j{{"valid", problems.empty()},
                     {"algorithm", algorithm_name(algo)},
                     {"violations", problems},
                     {"linearizations", rep.linearizations},
                     {"executed", rep.executed},
                     {"exhaustive", rep.exhaustive}};
    emit(o.out, j.dump(2) + "\n");
  } else {
    std::string text = problems.empty() ? "valid\n" : "invalid\n";
    for (const auto& p : problems) text += "  " + p + "\n";
    text += "linearizations: " + std::to_string(rep.linearizations) + " (executed " +
            std::to_string(rep.executed) + (rep.exhaustive ? ", exhaustive)\n" : ", sampled)\n");
    emit(o.out, text);
  }
  for (const auto& p : problems) std::cerr << p << "\n";
  return problems.empty() ? kOk : kInvalid;
}

int cmd_narrate(const Options& o, bool algorithm_given) {
  Task task = load_task(o);
  Algorithm algo;
  Plan plan = read_plan(o, task, algo, nullptr, algorithm_given);
  TemplateSet t = load_templates(o.templates);
  Narrative n = render(plan, t, task);
  if (o.format == "json") {
    nlohmann::json j{{"order", n.order}, {"text", n.text()}};
    emit(o.out, j.dump(2) + "\n");
  } else {
    emit(o.out, n.text());
  }
  return kOk;
}

int cmd_quest(const Options& o, bool algorithm_given) {
  Task task = load_task(o);
  Algorithm algo;
  Plan plan = read_plan(o, task, algo, nullptr, algorithm_given);
  std::optional<TemplateSet> t;
  if (!o.templates.empty()) t = load_templates(o.templates);
  QuestGraph g;
  try {
    g = plan_to_quest(plan, algo);
  } catch (const QuestError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  }
  auto pairs = emit_questionnaire(g, plan, t ? &*t : nullptr);
  if (o.format == "json") {
    nlohmann::json j{{"graph", nlohmann::json::parse(quest_to_json(g))},
                     {"questionnaire", nlohmann::json::parse(questionnaire_to_json(pairs))}};
    emit(o.out, j.dump(2) + "\n");
  } else {
    emit(o.out, questionnaire_to_text(pairs));
  }
  if (!o.csv.empty()) emit(o.csv, questionnaire_to_csv(pairs));
  return kOk;
}

int cmd_oracle(const Options& o) {
  Task task = load_task(o);
  auto sequences = oracle_solve(task, o.max_length);
  if (o.format == "json") {
    emit(o.out, nlohmann::json{{"max_length", o.max_length}, {"solutions", sequences}}.dump(2) + "\n");
  } else {
    std::string text;
    for (const auto& seq : sequences) {
      for (std::size_t i = 0; i < seq.size(); ++i) text += (i ? " ; " : "") + seq[i];
      text += "\n";
    }
    emit(o.out, text);
  }
  return sequences.empty() ? kNoSolution : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fabula: intentional partial-order planning and story generation"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--domain", o.domain, "domain file")->required()->check(CLI::ExistingFile);
    sub->add_option("--problem", o.problem, "problem file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto* plan = app.add_subcommand("plan", "search for a plan and write it as JSON");
  common(plan);
  plan->add_option("--algorithm", o.algorithm)->check(CLI::IsMember({"pocl", "ipocl"}));
  plan->add_option("--rules", o.rules, "heuristic rule file")->check(CLI::ExistingFile);
  plan->add_option("--heuristic", o.heuristic, "classical, ipocl-di, rules or combined")
      ->check(CLI::IsMember({"classical", "ipocl-di", "rules", "combined"}));
  plan->add_option("--strategy", o.strategy, "flaw selection")->check(CLI::IsMember({"default", "oc-fifo"}));
  plan->add_option("--max-nodes", o.max_nodes)->check(CLI::PositiveNumber);
  plan->add_option("--max-depth", o.max_depth)->check(CLI::NonNegativeNumber);
  plan->add_option("--max-steps", o.max_steps, "0 = unbounded")->check(CLI::NonNegativeNumber);
  plan->add_option("--trace", o.trace, "write the search trace here");
  plan->add_option("--dot", o.dot, "write a Graphviz rendering here");

  std::vector<CLI::App*> readers;
  for (auto [name, help] : {std::pair{"validate", "check a plan JSON"}, std::pair{"narrate", "tell a plan as prose"},
                            std::pair{"quest", "QUEST graph and why-questionnaire for a plan"}}) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    sub->add_option("plan", o.plan, "plan JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--algorithm", o.algorithm, "defaults to the plan's own")->check(CLI::IsMember({"pocl", "ipocl"}));
    readers.push_back(sub);
  }
  readers[1]->add_option("--templates", o.templates)->required()->check(CLI::ExistingFile);
  readers[1]->get_option("--format")->default_str("text");
  readers[2]->add_option("--templates", o.templates)->check(CLI::ExistingFile);
  readers[2]->add_option("--csv", o.csv, "also write the questionnaire as CSV");

  auto* oracle = app.add_subcommand("oracle", "every goal-reaching action sequence up to a length");
  common(oracle);
  oracle->add_option("--max-depth", o.max_length, "longest sequence")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  // narrate reads best as text unless asked otherwise
  if (readers[1]->parsed() && readers[1]->get_option("--format")->count() == 0) o.format = "text";

  try {
    if (plan->parsed()) return cmd_plan(o);
    bool algo = false;
    for (auto* r : readers) algo = algo || (r->parsed() && r->get_option("--algorithm")->count() > 0);
    if (readers[0]->parsed()) return cmd_validate(o, algo);
    if (readers[1]->parsed()) return cmd_narrate(o, algo);
    if (readers[2]->parsed()) return cmd_quest(o, algo);
    if (oracle->parsed()) return cmd_oracle(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PlanFormatError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const NarrateError& e) {
    std::cerr << "narrate: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  return kUsage;
}
