#include "fabula/io/plan_io.hpp"

#include <algorithm>
#include <set>

#include "fabula/dsl/domain.hpp"
#include "fabula/dsl/sexpr.hpp"
#include "json.hpp"

namespace fabula {

using nlohmann::json;

namespace {

Term parse_term_text(const std::string& text) {
  if (text.empty()) throw PlanFormatError("empty term");
  if (text.front() == '(') {
    auto forms = read_sexprs(text);
    if (forms.size() != 1) throw PlanFormatError("bad literal term: " + text);
    return Term::literal(parse_literal(forms[0]));
  }
  if (text.front() == '?') return Term::variable(intern(text));
  return Term::symbol(intern(text));
}

// A step's own literal-valued variables, renamed apart at instantiation.
bool own_variable(const Term& t) { return t.is_variable(); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string plan_to_json(const Plan& plan, const Task& task, Algorithm algorithm, const SearchStats* stats) {
  json doc;
  doc["domain"] = task.domain().name;
  doc["problem"] = task.problem().name;
  doc["algorithm"] = algorithm_name(algorithm);
  json steps = json::array();
  for (StepId s = 2; s < static_cast<StepId>(plan.steps.size()); ++s) {
    const Step& step = plan.step(s);
    json args = json::array();
    for (const auto& a : step.action->args) args.push_back(to_string(plan.bindings.resolve(a)));
    json actors = json::array();
    for (SymbolId a : step.actors()) actors.push_back(symbol_name(a));
    steps.push_back({{"id", s},
                     {"action", step.name()},
                     {"args", args},
                     {"label", plan.step_label(s)},
                     {"actors", actors},
                     {"happening", step.happening()}});
  }
  doc["steps"] = steps;
  json orderings = json::array();
  for (auto [a, b] : plan.ordering.reduced_pairs()) orderings.push_back({a, b});
  doc["orderings"] = orderings;
  json links = json::array();
  for (const auto& l : plan.links) {
    links.push_back({{"source", l.source},
                     {"effect", l.effect},
                     {"sink", l.sink},
                     {"condition", l.condition},
                     {"literal", to_string(plan.link_condition(l))}});
  }
  doc["links"] = links;
  json apart = json::array();
  for (const auto& [a, b] : plan.bindings.non_codesignations()) {
    apart.push_back({to_string(plan.bindings.resolve(a)), to_string(plan.bindings.resolve(b))});
  }
  doc["non_codesignations"] = apart;
  json frames = json::array();
  for (const auto& c : plan.frames) {
    json f = {{"id", c.id},
              {"character", symbol_name(c.character)},
              {"goal", to_string(plan.frame_goal(c))},
              {"interval", c.interval},
              {"final_step", c.final_step}};
    f["motivating_step"] = c.motivating_step ? json(*c.motivating_step) : json(nullptr);
    f["motivating_effect"] = c.motivating_effect;
    frames.push_back(f);
  }
  doc["frames"] = frames;
  if (stats != nullptr) {
    doc["stats"] = {{"nodes_generated", stats->nodes_generated}, {"nodes_visited", stats->nodes_visited},
                    {"nodes_expanded", stats->nodes_expanded},   {"nodes_pruned", stats->nodes_pruned},
                    {"max_frontier", stats->max_frontier},       {"solution_depth", stats->solution_depth},
                    {"mean_branching", stats->mean_branching}};
  }
  return doc.dump(2) + "\n";
}

Plan plan_from_json(const std::string& text, const Task& task, std::vector<std::string>* problems) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw PlanFormatError(std::string("plan is not valid JSON: ") + e.what());
  }
  try {
    if (doc.value("domain", "") != task.domain().name) throw PlanFormatError("plan was made for another domain");
    if (doc.value("problem", "") != task.problem().name) throw PlanFormatError("plan was made for another problem");
    Plan plan;
    plan.steps.push_back(std::make_shared<const Step>(Step{kInitialStep, StepRole::kInitial, task.initial_action()}));
    plan.steps.push_back(std::make_shared<const Step>(Step{kGoalStep, StepRole::kGoal, task.goal_action()}));
    plan.ordering.add_step();
    plan.ordering.add_step();
    plan.ordering.add(kInitialStep, kGoalStep);

    const auto& schemata = task.domain().schemata;
    for (const auto& js : doc.at("steps")) {
      const auto id = js.at("id").get<StepId>();
      if (id != static_cast<StepId>(plan.steps.size())) throw PlanFormatError("step ids must run 2, 3, ...");
      const std::string name = js.at("action").get<std::string>();
      auto it = std::find_if(schemata.begin(), schemata.end(), [&](const ActionSchema& s) { return s.name == name; });
      if (it == schemata.end()) throw PlanFormatError("unknown action " + name);
      const int schema = static_cast<int>(it - schemata.begin());
      std::vector<Term> args;
      for (const auto& a : js.at("args")) args.push_back(parse_term_text(a.get<std::string>()));
      if (args.size() != it->params.size()) throw PlanFormatError("wrong arity for " + name);
      const auto& groundings = task.groundings(schema);
      int found = -1;
      for (std::size_t g = 0; g < groundings.size() && found < 0; ++g) {
        bool same = true;
        for (std::size_t i = 0; i < args.size() && same; ++i) {
          if (it->is_literal_param(it->params[i])) continue;
          same = groundings[g]->args[i] == args[i];
        }
        if (same) found = static_cast<int>(g);
      }
      if (found < 0) throw PlanFormatError("no legal grounding " + js.value("label", name));
      auto action = task.instantiate(schema, found, id);
      for (std::size_t i = 0; i < args.size(); ++i) {
        const Term& var = action->args[i];
        if (own_variable(var) && !args[i].is_variable()) plan.bindings.assign(var.id(), args[i]);
      }
      plan.steps.push_back(std::make_shared<const Step>(Step{id, StepRole::kOrdinary, std::move(action)}));
      plan.ordering.add_step();
      plan.ordering.add(kInitialStep, id);
      plan.ordering.add(id, kGoalStep);
    }
    const auto n = static_cast<StepId>(plan.steps.size());
    auto check_step = [&](StepId s) {
      if (s < 0 || s >= n) throw PlanFormatError("step id " + std::to_string(s) + " out of range");
      return s;
    };
    std::vector<std::pair<StepId, StepId>> given;
    for (const auto& o : doc.at("orderings")) {
      const StepId a = check_step(o.at(0).get<StepId>());
      const StepId b = check_step(o.at(1).get<StepId>());
      given.emplace_back(a, b);
      if (!plan.ordering.add(a, b) && problems) {
        // b already precedes a through earlier pairs; walk back to name them
        std::vector<StepId> from(n, -1);
        std::vector<StepId> queue{b};
        from[b] = b;
        for (std::size_t i = 0; i < queue.size() && from[a] < 0; ++i) {
          for (auto [x, y] : given) {
            if (x == queue[i] && from[y] < 0) {
              from[y] = x;
              queue.push_back(y);
            }
          }
        }
        std::vector<StepId> cycle{a};
        for (StepId s = a; s != b && from[s] >= 0 && from[s] != s; s = from[s]) cycle.push_back(from[s]);
        std::reverse(cycle.begin() + 1, cycle.end());
        std::string names;
        for (StepId s : cycle) names += plan.step_label(s) + " [" + std::to_string(s) + "] < ";
        problems->push_back("ordering cycle: " + names + plan.step_label(a) + " [" + std::to_string(a) + "]");
      }
    }
    for (const auto& jl : doc.at("links")) {
      plan.links.push_back(CausalLink{check_step(jl.at("source").get<StepId>()), jl.at("effect").get<int>(),
                                      check_step(jl.at("sink").get<StepId>()), jl.at("condition").get<int>()});
    }
    for (const auto& p : doc.value("non_codesignations", json::array())) {
      plan.bindings.forbid(parse_term_text(p.at(0).get<std::string>()), parse_term_text(p.at(1).get<std::string>()));
    }
    for (const auto& jf : doc.at("frames")) {
      FrameOfCommitment c;
      c.id = jf.at("id").get<FrameId>();
      if (c.id != static_cast<FrameId>(plan.frames.size()) + 1) throw PlanFormatError("frame ids must run 1, 2, ...");
      c.character = intern(jf.at("character").get<std::string>());
      auto forms = read_sexprs(jf.at("goal").get<std::string>());
      if (forms.size() != 1) throw PlanFormatError("bad frame goal");
      c.goal = std::make_shared<const Literal>(parse_literal(forms[0]));
      for (const auto& s : jf.at("interval")) c.interval.push_back(check_step(s.get<StepId>()));
      std::sort(c.interval.begin(), c.interval.end());
      c.final_step = check_step(jf.at("final_step").get<StepId>());
      if (!jf.at("motivating_step").is_null()) c.motivating_step = check_step(jf.at("motivating_step").get<StepId>());
      c.motivating_effect = jf.value("motivating_effect", -1);
      plan.frames.push_back(std::move(c));
    }
    return plan;
  } catch (const json::exception& e) {
    throw PlanFormatError(std::string("malformed plan: ") + e.what());
  } catch (const ParseError& e) {
    throw PlanFormatError(std::string("malformed literal in plan: ") + e.what());
  }
}

std::string plan_to_dot(const Plan& plan) {
  std::string out = "digraph plan {\n  rankdir=TB;\n  node [shape=box, fontname=\"Helvetica\"];\n";
  for (StepId s = 0; s < static_cast<StepId>(plan.steps.size()); ++s) {
    std::string label = s < 2 ? plan.step_label(s) : std::to_string(s) + ": " + plan.step_label(s);
    out += "  s" + std::to_string(s) + " [label=\"" + escape(label) + "\"";
    if (s >= 2 && plan.step(s).happening()) out += ", style=rounded";
    out += "];\n";
  }
  std::set<std::pair<StepId, StepId>> linked;
  for (const auto& l : plan.links) {
    linked.emplace(l.source, l.sink);
    out += "  s" + std::to_string(l.source) + " -> s" + std::to_string(l.sink) + " [label=\"" +
           escape(to_string(plan.link_condition(l))) + "\"];\n";
  }
  for (auto [a, b] : plan.ordering.reduced_pairs()) {
    if (a == kInitialStep || b == kGoalStep || linked.contains({a, b})) continue;
    out += "  s" + std::to_string(a) + " -> s" + std::to_string(b) + " [style=dashed];\n";
  }
  for (const auto& c : plan.frames) {
    const std::string f = "f" + std::to_string(c.id);
    out += "  " + f + " [shape=note, label=\"" +
           escape(symbol_name(c.character) + " intends " + to_string(plan.frame_goal(c))) + "\"];\n";
    for (StepId s : c.interval) out += "  " + f + " -> s" + std::to_string(s) + " [style=dotted, arrowhead=none];\n";
    if (c.motivating_step) {
      out += "  s" + std::to_string(*c.motivating_step) + " -> " + f + " [style=dotted];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace fabula
