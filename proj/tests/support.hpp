#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fabula/dsl/domain.hpp"
#include "fabula/dsl/rules.hpp"
#include "fabula/dsl/sexpr.hpp"
#include "fabula/planning/search.hpp"

namespace fabula::test {

inline std::string data(const std::string& rel) { return std::string(FABULA_DATA_DIR) + "/" + rel; }

inline Task load(const std::string& dir, const std::string& name) {
  return Task(load_domain(data(dir + "/" + name + ".domain")), load_problem(data(dir + "/" + name + ".problem")));
}

inline Literal to_literal(const std::string& text) { return parse_literal(read_sexprs(text).at(0)); }

inline Task aladdin() { return load("aladdin", "aladdin"); }

inline SearchConfig aladdin_config(Algorithm algorithm) {
  SearchConfig cfg;
  cfg.algorithm = algorithm;
  if (algorithm == Algorithm::kPocl) {
    cfg.heuristic.kind = HeuristicKind::kClassical;
  } else {
    cfg.heuristic.kind = HeuristicKind::kCombined;
    cfg.heuristic.rules = load_rules(data("aladdin/aladdin.rules"));
  }
  return cfg;
}

// The IPOCL Aladdin solve takes a few seconds; do it once per binary.
// Plans point into their task's schemata, so the task lives on as well.
inline const Task& aladdin_task() {
  static const Task task = aladdin();
  return task;
}

inline const SearchResult& aladdin_ipocl() {
  static const SearchResult result = [] {
    SearchConfig cfg = aladdin_config(Algorithm::kIpocl);
    cfg.trace = true;
    return plan_search(aladdin_task(), cfg);
  }();
  return result;
}

inline std::vector<std::string> step_labels(const Plan& plan) {
  std::vector<std::string> out;
  for (StepId s = 2; s < static_cast<StepId>(plan.steps.size()); ++s) out.push_back(plan.step_label(s));
  std::sort(out.begin(), out.end());
  return out;
}

inline StepId find_step(const Plan& plan, const std::string& label) {
  for (StepId s = 2; s < static_cast<StepId>(plan.steps.size()); ++s) {
    if (plan.step_label(s) == label) return s;
  }
  return -1;
}

inline std::vector<std::string> frame_labels(const Plan& plan) {
  std::vector<std::string> out;
  for (const auto& c : plan.frames) out.push_back(symbol_name(c.character) + " " + to_string(plan.frame_goal(c)));
  std::sort(out.begin(), out.end());
  return out;
}

// Adds a fresh step performing grounding `g` of schema `schema`, ordered
// between init and goal.
inline StepId add_step(Plan& plan, const Task& task, int schema, int g = 0) {
  const StepId id = static_cast<StepId>(plan.steps.size());
  plan.steps.push_back(std::make_shared<const Step>(Step{id, StepRole::kOrdinary, task.instantiate(schema, g, id)}));
  plan.ordering.add_step();
  plan.ordering.add(kInitialStep, id);
  plan.ordering.add(id, kGoalStep);
  return id;
}

inline int schema_index(const Task& task, const std::string& name) {
  const auto& s = task.domain().schemata;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

// One schema with `actors` actor parameters and `effects` effects.
inline Task synthetic(int effects, int actors) {
  std::string params, constraints, eff, objects, init;
  for (int a = 1; a <= actors; ++a) {
    params += " ?a" + std::to_string(a);
    constraints += " (role" + std::to_string(a) + " ?a" + std::to_string(a) + ")";
    objects += " c" + std::to_string(a);
    init += " (character c" + std::to_string(a) + ") (role" + std::to_string(a) + " c" + std::to_string(a) + ")";
  }
  for (int e = 1; e <= effects; ++e) eff += " (p" + std::to_string(e) + " ?a1)";
  std::string domain = "(domain synth (action act :parameters (" + params + ") :actors (" + params +
                       ") :constraints (" + constraints + ") :precondition () :effect (" + eff + ")))";
  std::string problem = "(problem synth :domain synth :agents (" + objects + ") :init (" + init + ") :goal ())";
  return Task(parse_domain(domain), parse_problem(problem));
}

}  // namespace fabula::test
