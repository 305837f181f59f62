// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fabula/dsl/domain.hpp"
#include "fabula/dsl/templates.hpp"
#include "fabula/narrate/narrate.hpp"
#include "fabula/planning/heuristics.hpp"
#include "fabula/planning/refine.hpp"
#include "fabula/planning/search.hpp"
#include "fabula/planning/validate.hpp"
#include "fabula/quest/quest.hpp"
#include "invariants.hpp"
#include "micro_gen.hpp"
#include "support.hpp"

using namespace fabula;
using namespace fabula::test;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

const std::vector<std::string> kShipped = {"locked-tower", "bribe", "one-action", "unreachable"};

SearchConfig micro_config(Algorithm algorithm, int max_steps, std::int64_t max_nodes) {
  SearchConfig cfg;
  cfg.algorithm = algorithm;
  cfg.heuristic.kind = algorithm == Algorithm::kPocl ? HeuristicKind::kClassical : HeuristicKind::kIpoclDi;
  cfg.max_steps = max_steps;
  cfg.max_nodes = max_nodes;
  return cfg;
}

Verdict root_expansion() {
  const auto start = Clock::now();
  const Task task = aladdin();
  const Plan root = initial_plan(task);
  const Flaw flaw = select_flaw(root);
  const auto kids = refine(root, flaw, task, Algorithm::kIpocl);
  const double t = seconds_since(start);
  const bool right_flaw = describe_flaw(root, flaw).find("(married-to jafar jasmine)") != std::string::npos;
  std::ostringstream d;
  d << kids.size() << " children in " << t << " s";
  return {right_flaw && kids.size() == 98 && t < 1.0, d.str()};
}

Verdict frame_arithmetic() {
  int cases = 0, wrong = 0;
  for (int a = 1; a <= 3; ++a) {
    for (int e = 0; e <= 6; ++e) {
      const Task task = synthetic(e, a);
      Plan plan = initial_plan(task);
      const StepId s = add_step(plan, task, 0);
      std::size_t expected = 1;
      for (int i = 0; i < a; ++i) expected *= static_cast<std::size_t>(e + 1);
      ++cases;
      if (discover_frames(plan, s).size() != expected) ++wrong;
    }
  }
  return {wrong == 0, std::to_string(cases - wrong) + "/" + std::to_string(cases) + " (e, a) pairs exact"};
}

Verdict pocl_aladdin() {
  // the ten events told in the control story
  std::vector<std::string> expected = {
      "fall-in-love(jafar, jasmine, castle)", "give(aladdin, jafar, lamp, castle)",
      "love-spell(genie, jasmine, jafar)",    "marry(jafar, jasmine, castle)",
      "pillage(aladdin, dragon, lamp, mountain)", "slay(aladdin, dragon, mountain)",
      "slay(aladdin, genie, castle)",         "summon(jafar, genie, lamp, castle)",
      "travel(aladdin, castle, mountain)",    "travel(aladdin, mountain, castle)",
  };
  std::sort(expected.begin(), expected.end());
  const auto start = Clock::now();
  const Task& task = aladdin_task();
  SearchConfig cfg = aladdin_config(Algorithm::kPocl);
  cfg.max_nodes = 200'000;
  const auto r = plan_search(task, cfg);
  const double t = seconds_since(start);
  if (!r.plan) return {false, std::string("no plan: ") + outcome_name(r.outcome)};
  const auto got = step_labels(*r.plan);
  const bool valid = validate(*r.plan, task, Algorithm::kPocl).ok();
  std::ostringstream d;
  d << got.size() << " steps, validator " << (valid ? "ok" : "failed") << ", " << r.stats.nodes_generated
    << " nodes, " << t << " s";
  if (got != expected) {
    d << "; steps:";
    for (const auto& s : got) d << " " << s;
  }
  return {got == expected && valid && t <= 60.0, d.str()};
}

Verdict ipocl_aladdin() {
  const auto& r = aladdin_ipocl();
  if (!r.plan) return {false, std::string("no plan: ") + outcome_name(r.outcome)};
  const Plan& plan = *r.plan;
  const std::vector<std::string> frames = {
      "aladdin (has jafar lamp)",          "aladdin (not (alive genie))", "genie (loves jasmine jafar)",
      "jafar (married-to jafar jasmine)", "jasmine (married-to jasmine jafar)",
  };
  std::vector<std::string> steps;
  for (const char* s : {"appear-threatening(genie, aladdin, castle)", "command(jafar, genie, lamp, (loves jasmine jafar))",
                        "fall-in-love(jafar, jasmine, castle)", "give(aladdin, jafar, lamp, castle)",
                        "love-spell(genie, jasmine, jafar)", "marry(jafar, jasmine, castle)",
                        "order(jafar, aladdin, castle, (has jafar lamp))", "pillage(aladdin, dragon, lamp, mountain)",
                        "slay(aladdin, dragon, mountain)", "slay(aladdin, genie, castle)",
                        "summon(jafar, genie, lamp, castle)", "travel(aladdin, castle, mountain)",
                        "travel(aladdin, mountain, castle)"})
    steps.push_back(s);
  std::sort(steps.begin(), steps.end());
  const bool exact = step_labels(plan) == steps && frame_labels(plan) == frames;
  const bool valid = ipocl_complete(plan) && validate(plan, aladdin_task(), Algorithm::kIpocl).ok();
  std::ostringstream d;
  d << plan.ordinary_step_count() << " steps, " << plan.frames.size() << " frames, "
    << (exact ? "exact match" : "different plan") << ", validator " << (valid ? "ok" : "failed") << ", "
    << r.stats.nodes_generated << " nodes generated";
  return {valid && frame_labels(plan) == frames && r.stats.nodes_generated <= 5'000'000, d.str()};
}

Verdict ipocl_depth() {
  const int depth = aladdin_ipocl().stats.solution_depth;
  return {depth >= 77 && depth <= 87, "depth " + std::to_string(depth)};
}

Verdict oracle_equivalence() {
  const auto start = Clock::now();
  constexpr int kMaxLength = 5;
  int checked = 0;
  std::ostringstream bad;
  for (const auto& name : kShipped) {
    const Task task = load("micro", name);
    const auto oracle = oracle_solve(task, kMaxLength);
    for (Algorithm algo : {Algorithm::kPocl, Algorithm::kIpocl}) {
      const auto r = plan_search(task, micro_config(algo, kMaxLength, 200'000));
      if (!r.plan) continue;
      for (const auto& order : linearizations(*r.plan, 100'000)) {
        std::vector<std::string> seq;
        for (StepId s : order) seq.push_back(ground_label(*r.plan->step(s).action, r.plan->bindings));
        ++checked;
        if (!oracle.count(seq)) bad << " " << name << "/" << algorithm_name(algo) << " order outside oracle;";
      }
    }
    for (int d = 1; d <= kMaxLength; ++d) {
      if (oracle_solve(task, d).empty()) continue;
      const auto r = plan_search(task, micro_config(Algorithm::kPocl, d, 200'000));
      if (!r.plan || r.plan->ordinary_step_count() > static_cast<std::size_t>(d))
        bad << " " << name << " unsolved within " << d << ";";
    }
  }
  const double t = seconds_since(start);
  std::ostringstream d;
  d << checked << " linearizations checked, " << t << " s" << bad.str();
  return {bad.str().empty() && t <= 10.0, d.str()};
}

struct RandomRun {
  int cases = 0;
  int ipocl_solved = 0;
  int both_solved = 0;
  std::vector<std::string> invariant_violations;
  std::vector<std::string> depth_violations;
};

const RandomRun& random_run() {
  static const RandomRun run = [] {
    RandomRun out;
    auto depth_pair = [&](const Task& task, const std::string& name) {
      const auto p = plan_search(task, micro_config(Algorithm::kPocl, 5, 5000));
      const auto i = plan_search(task, micro_config(Algorithm::kIpocl, 5, 5000));
      if (i.plan) {
        ++out.ipocl_solved;
        for (const auto& v : intent_violations(*i.plan)) out.invariant_violations.push_back(name + ": " + v);
        for (const auto& v : validate(*i.plan, task, Algorithm::kIpocl).violations)
          out.invariant_violations.push_back(name + ": " + v);
      }
      if (p.plan && i.plan) {
        ++out.both_solved;
        if (i.stats.solution_depth > 2 * p.stats.solution_depth)
          out.depth_violations.push_back(name + " (" + std::to_string(i.stats.solution_depth) + " vs " +
                                         std::to_string(p.stats.solution_depth) + ")");
      }
    };
    for (const auto& name : kShipped) depth_pair(load("micro", name), name);
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      const auto mc = generate_micro(seed);
      ++out.cases;
      depth_pair(Task(parse_domain(mc.domain), parse_problem(mc.problem)), "seed " + std::to_string(seed));
    }
    return out;
  }();
  return run;
}

std::string joined(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

Verdict intent_invariants() {
  const auto& run = random_run();
  std::ostringstream d;
  d << run.cases << " random cases, " << run.ipocl_solved << " intentional solutions, "
    << run.invariant_violations.size() << " violations";
  if (!run.invariant_violations.empty()) d << ": " << joined(run.invariant_violations);
  return {run.cases >= 1000 && run.invariant_violations.empty(), d.str()};
}

Verdict depth_bound() {
  const auto& run = random_run();
  std::ostringstream d;
  d << run.both_solved << " cases solved by both, " << run.depth_violations.size() << " over twice the causal depth";
  if (!run.depth_violations.empty()) d << ": " << joined(run.depth_violations);
  return {run.depth_violations.empty(), d.str()};
}

const TemplateSet& templates() {
  static const TemplateSet t = load_templates(data("aladdin/aladdin.tmpl"));
  return t;
}

Verdict quest_prediction() {
  const auto& r = aladdin_ipocl();
  if (!r.plan) return {false, "no intentional plan"};
  const Plan& plan = *r.plan;
  const QuestGraph g = plan_to_quest(plan, Algorithm::kIpocl);
  const auto pairs = emit_questionnaire(g, plan, &templates());
  // the slain dragon is no frame's final step, so this pair is asked of the
  // graph directly rather than looked up in the questionnaire
  const StepId slay = find_step(plan, "slay(aladdin, dragon, mountain)");
  const StepId order = find_step(plan, "order(jafar, aladdin, castle, (has jafar lamp))");
  if (slay < 0 || order < 0) return {false, "slay or order step missing"};
  const auto q = question_text(plan, slay, templates());
  const auto a = answer_text(plan, order, templates());
  const bool phrased = q && sentence_case(*q) == "Why did Aladdin slay the dragon?" && a &&
                       sentence_case(*a).rfind("King Jafar ordered Aladdin to get the magic lamp", 0) == 0;
  const bool good = predict_goa(g, g.event_node(slay), g.event_node(order)) == Goodness::kGood;
  int love = -1;
  for (const auto& f : plan.frames) {
    if (symbol_name(f.character) == "genie") love = g.goal_node(f.id);
  }
  const bool poor = love >= 0 && predict_goa(g, g.event_node(slay), love) == Goodness::kPoor;
  std::ostringstream d;
  d << (phrased ? "" : "phrasing differs, ") << "order answer " << (good ? "good" : "not good") << ", genie love goal " << (poor ? "poor" : "not poor") << ", "
    << pairs.size() << " pairs";
  return {phrased && good && poor && pairs.size() >= 10 && pairs.size() < 100, d.str()};
}

Verdict rendering() {
  const auto& r = aladdin_ipocl();
  if (!r.plan) return {false, "no intentional plan"};
  const Plan& plan = *r.plan;
  const Narrative story = render(plan, templates(), aladdin_task());
  const std::string text = story.text();
  // the events paragraph of the published intentional story
  const std::vector<std::string> sentences = {
      "King Jafar is not married.", "Jasmine is very beautiful.",
      "King Jafar sees Jasmine and instantly falls in love with her.", "King Jafar wants to marry Jasmine.",
      "There is a brave knight named Aladdin.", "Aladdin is loyal to the death to King Jafar.",
      "King Jafar orders Aladdin to get the magic lamp for him.", "Aladdin wants King Jafar to have the magic lamp.",
      "Aladdin travels from the castle to the mountains.", "Aladdin slays the dragon.", "The dragon is dead.",
      "Aladdin takes the magic lamp from the dead body of the dragon.",
      "Aladdin travels from the mountains to the castle.", "Aladdin hands the magic lamp to King Jafar.",
      "The genie is in the magic lamp.", "King Jafar rubs the magic lamp and summons the genie out of it.",
      "The genie is not confined within the magic lamp.", "King Jafar controls the genie with the magic lamp.",
      "King Jafar uses the magic lamp to command the genie to make Jasmine love him.",
      "The genie wants Jasmine to be in love with King Jafar.",
      "The genie casts a spell on Jasmine making her fall in love with King Jafar.",
      "Jasmine is madly in love with King Jafar.", "Jasmine wants to marry King Jafar.",
      "The genie has a frightening appearance.", "The genie appears threatening to Aladdin.",
      "Aladdin wants the genie to die.", "Aladdin slays the genie.",
      "King Jafar and Jasmine wed in an extravagant ceremony.",
  };
  std::vector<std::string> missing;
  for (const auto& s : sentences) {
    if (text.find(s) == std::string::npos) missing.push_back(s);
  }
  bool ordered = story.order.size() == plan.ordinary_step_count();
  for (std::size_t i = 0; i < story.order.size(); ++i) {
    for (std::size_t j = i + 1; j < story.order.size(); ++j) {
      if (plan.ordering.precedes(story.order[j], story.order[i])) ordered = false;
    }
  }
  std::ostringstream d;
  d << sentences.size() - missing.size() << "/" << sentences.size() << " sentences, order "
    << (ordered ? "valid" : "invalid");
  if (!missing.empty()) d << "; missing: " << joined(missing);
  return {missing.empty() && ordered, d.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() / ("fabula-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = FABULA_CLI;
  const std::string aladdin = " --domain " + data("aladdin/aladdin.domain") + " --problem " + data("aladdin/aladdin.problem");
  const std::string tower = " --domain " + data("micro/locked-tower.domain") + " --problem " + data("micro/locked-tower.problem");
  const std::string solution = " " + data("aladdin/solution.json");
  const std::string tmpl = " --templates " + data("aladdin/aladdin.tmpl");

  // {name, arguments}; %D is replaced by the run directory
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"plan-ipocl", "plan" + aladdin + " --rules " + data("aladdin/aladdin.rules") + " --trace %D/plan-ipocl.trace"},
      {"plan-pocl", "plan" + aladdin + " --algorithm pocl --trace %D/plan-pocl.trace --dot %D/plan-pocl.dot"},
      {"plan-text", "plan" + tower + " --format text"},
      {"validate", "validate" + solution + aladdin},
      {"narrate", "narrate" + solution + aladdin + tmpl},
      {"quest", "quest" + solution + aladdin + tmpl + " --csv %D/quest.csv"},
      {"oracle", "oracle" + tower + " --max-depth 4"},
  };
  std::vector<std::string> differing, failing;
  for (const auto& [name, args] : commands) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path rundir = dir / std::to_string(run);
      fs::create_directories(rundir);
      std::string line = args;
      for (std::size_t at; (at = line.find("%D")) != std::string::npos;) line.replace(at, 2, rundir.string());
      const fs::path out = rundir / (name + ".out");
      const int status = std::system((cli + " " + line + " > " + out.string() + " 2>/dev/null").c_str());
      std::string all = std::to_string(status) + "\n" + slurp(out);
      for (const auto& f : {".trace", ".dot", ".csv"}) {
        for (const auto& entry : fs::directory_iterator(rundir)) {
          if (entry.path().extension() == f && entry.path().stem().string().rfind(name, 0) == 0)
            all += slurp(entry.path());
        }
      }
      outputs[run] = all;
    }
    if (outputs[0] != outputs[1]) differing.push_back(name);
    else if (outputs[0].rfind("0\n", 0) != 0) failing.push_back(name);
  }
  fs::remove_all(dir);
  std::ostringstream d;
  d << commands.size() - differing.size() << "/" << commands.size() << " commands byte-identical across runs";
  if (!differing.empty()) d << "; differing: " << joined(differing);
  if (!failing.empty()) d << "; nonzero exit: " << joined(failing);
  return {differing.empty() && failing.empty(), d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"98-child root expansion", root_expansion},
      {"frame-combination arithmetic", frame_arithmetic},
      {"POCL Aladdin reproduction", pocl_aladdin},
      {"IPOCL Aladdin reproduction", ipocl_aladdin},
      {"IPOCL solution depth", ipocl_depth},
      {"oracle equivalence", oracle_equivalence},
      {"intentionality invariants", intent_invariants},
      {"depth bound", depth_bound},
      {"QUEST prediction", quest_prediction},
      {"rendering", rendering},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << i + 1 << ": " << criteria[i].first << " (" << v.detail << ")"
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
