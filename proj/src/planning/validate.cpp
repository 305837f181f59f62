#include "fabula/planning/validate.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace fabula {

namespace {

using State = std::unordered_set<Literal, LiteralHash>;

bool holds(const State& state, const Literal& lit) {
  if (lit.positive) return state.contains(lit);
  return !state.contains(lit.negated());
}

void apply_effects(State& state, const std::vector<Literal>& effects) {
  for (const auto& e : effects) {
    if (!e.positive && e.is_ground()) state.erase(e.negated());
  }
  for (const auto& e : effects) {
    if (e.positive && e.is_ground()) state.insert(e);
  }
}

// Ordinary steps as 0-based indices, with predecessor masks.
struct Dag {
  std::vector<StepId> ids;
  std::vector<std::vector<int>> preds;
};

Dag ordinary_dag(const Plan& plan) {
  Dag dag;
  for (StepId s = 2; s < static_cast<StepId>(plan.steps.size()); ++s) dag.ids.push_back(s);
  dag.preds.resize(dag.ids.size());
  for (std::size_t i = 0; i < dag.ids.size(); ++i) {
    for (std::size_t j = 0; j < dag.ids.size(); ++j) {
      if (i != j && plan.ordering.precedes(dag.ids[j], dag.ids[i])) dag.preds[i].push_back(static_cast<int>(j));
    }
  }
  return dag;
}

std::string check_execution(const Plan& plan, const Task& task, const std::vector<StepId>& order) {
  State state;
  for (const auto& lit : task.problem().initial) state.insert(lit);
  auto label_of = [&](StepId s) { return plan.step_label(s) + " (step " + std::to_string(s) + ")"; };
  for (StepId s : order) {
    for (std::size_t i = 0; i < plan.step(s).preconditions().size(); ++i) {
      const Literal p = plan.precondition(s, static_cast<int>(i));
      if (!holds(state, p)) return "precondition " + to_string(p) + " of " + label_of(s) + " does not hold";
    }
    std::vector<Literal> effects;
    for (std::size_t i = 0; i < plan.step(s).effects().size(); ++i) effects.push_back(plan.effect(s, static_cast<int>(i)));
    apply_effects(state, effects);
  }
  for (std::size_t i = 0; i < plan.step(kGoalStep).preconditions().size(); ++i) {
    const Literal g = plan.precondition(kGoalStep, static_cast<int>(i));
    if (!holds(state, g)) return "goal " + to_string(g) + " does not hold at the end";
  }
  return {};
}

std::string order_text(const std::vector<StepId>& order) {
  std::string out;
  for (StepId s : order) out += (out.empty() ? "" : " ") + std::to_string(s);
  return out;
}

void check_structure(const Plan& plan, const Task& task, std::vector<std::string>& out) {
  const auto n = static_cast<StepId>(plan.steps.size());
  if (n < 2 || plan.step(kInitialStep).role != StepRole::kInitial || plan.step(kGoalStep).role != StepRole::kGoal) {
    out.push_back("plan lacks initial and goal steps");
    return;
  }
  for (StepId s = 0; s < n; ++s) {
    if (plan.step(s).id != s) out.push_back("step " + std::to_string(s) + " carries id " + std::to_string(plan.step(s).id));
  }
  if (plan.ordering.size() != plan.steps.size()) {
    out.push_back("ordering covers " + std::to_string(plan.ordering.size()) + " steps, plan has " + std::to_string(n));
    return;
  }
  if (!plan.ordering.consistent()) out.push_back("ordering is cyclic");
  if (!plan.bindings.consistent()) out.push_back("bindings are inconsistent");
  for (StepId s = 2; s < n; ++s) {
    if (!plan.ordering.precedes(kInitialStep, s)) out.push_back("step " + std::to_string(s) + " not after the initial step");
    if (!plan.ordering.precedes(s, kGoalStep)) out.push_back("step " + std::to_string(s) + " not before the goal step");
  }

  std::vector<std::vector<int>> supported(plan.steps.size());
  for (StepId s = 0; s < n; ++s) supported[static_cast<std::size_t>(s)].assign(plan.step(s).preconditions().size(), 0);
  for (std::size_t i = 0; i < plan.links.size(); ++i) {
    const CausalLink& l = plan.links[i];
    const std::string tag = "link " + std::to_string(i);
    if (l.source < 0 || l.source >= n || l.sink < 0 || l.sink >= n || l.condition < 0 ||
        l.condition >= static_cast<int>(plan.step(l.sink).preconditions().size()) || l.effect < kClosedWorld ||
        l.effect >= static_cast<int>(plan.step(l.source).effects().size())) {
      out.push_back(tag + " has out-of-range indices");
      continue;
    }
    ++supported[static_cast<std::size_t>(l.sink)][static_cast<std::size_t>(l.condition)];
    if (!plan.ordering.precedes(l.source, l.sink)) out.push_back(tag + " source does not precede its sink");
    const Literal cond = plan.link_condition(l);
    if (l.effect == kClosedWorld) {
      if (l.source != kInitialStep || cond.positive || !cond.is_ground() || task.initially(cond.negated())) {
        out.push_back(tag + " claims " + to_string(cond) + " from the closed world");
      }
    } else if (plan.link_effect(l) != cond) {
      out.push_back(tag + " effect " + to_string(plan.link_effect(l)) + " does not match " + to_string(cond));
    }
  }
  for (StepId s = 1; s < n; ++s) {
    const auto& marks = supported[static_cast<std::size_t>(s)];
    for (std::size_t i = 0; i < marks.size(); ++i) {
      if (marks[i] == 0) {
        out.push_back("precondition " + to_string(plan.precondition(s, static_cast<int>(i))) + " of step " +
                      std::to_string(s) + " has no causal link");
      }
    }
  }
  for (const auto& t : detect_causal_threats(plan)) {
    const CausalLink& l = plan.links[static_cast<std::size_t>(t.link)];
    out.push_back("causal threat: step " + std::to_string(t.step) + " may clobber " + to_string(plan.link_condition(l)) +
                  " between " + std::to_string(l.source) + " and " + std::to_string(l.sink));
  }
  for (const auto& f : plan.flaws) out.push_back("pending flaw: " + describe_flaw(plan, f));
}

void check_frames(const Plan& plan, std::vector<std::string>& out) {
  for (const auto& c : plan.frames) {
    const std::string tag = "frame " + std::to_string(c.id);
    const Literal goal = plan.frame_goal(c);
    if (!c.contains(c.final_step)) out.push_back(tag + " final step is outside its interval");
    const auto& effects = plan.step(c.final_step).effects();
    bool achieves = false;
    for (std::size_t i = 0; i < effects.size(); ++i) achieves = achieves || plan.effect(c.final_step, static_cast<int>(i)) == goal;
    if (!achieves) out.push_back(tag + " final step lacks the goal " + to_string(goal));
    for (StepId s : c.interval) {
      if (!plan.step(s).has_actor(c.character)) {
        out.push_back(tag + " holds step " + std::to_string(s) + " not performed by " + symbol_name(c.character));
      }
      if (s != c.final_step && !plan.ordering.precedes(s, c.final_step)) {
        out.push_back(tag + " step " + std::to_string(s) + " not before the final step");
      }
    }
    if (!c.motivating_step) {
      out.push_back(tag + " has no motivating step");
      continue;
    }
    const StepId m = *c.motivating_step;
    for (StepId s : c.interval) {
      if (!plan.ordering.precedes(m, s)) {
        out.push_back(tag + " motivating step " + std::to_string(m) + " does not precede step " + std::to_string(s));
      }
    }
    const Literal wanted = make_intends(c.character, goal);
    bool motivates = false;
    for (std::size_t i = 0; i < plan.step(m).effects().size(); ++i) {
      motivates = motivates || plan.effect(m, static_cast<int>(i)) == wanted;
    }
    if (!motivates) out.push_back(tag + " motivating step lacks " + to_string(wanted));
  }
  for (StepId s : orphans(plan)) out.push_back("orphan: step " + std::to_string(s) + " " + plan.step_label(s));
  for (std::size_t i = 0; i < plan.frames.size(); ++i) {
    for (std::size_t j = i + 1; j < plan.frames.size(); ++j) {
      const auto& a = plan.frames[i];
      const auto& b = plan.frames[j];
      if (a.character != b.character || plan.frame_goal(a) != plan.frame_goal(b).negated()) continue;
      auto before = [&](const FrameOfCommitment& x, const FrameOfCommitment& y) {
        for (StepId p : x.interval) {
          for (StepId q : y.interval) {
            if (!plan.ordering.precedes(p, q)) return false;
          }
        }
        return true;
      };
      if (!before(a, b) && !before(b, a)) {
        out.push_back("frames " + std::to_string(a.id) + " and " + std::to_string(b.id) + " of " +
                      symbol_name(a.character) + " pursue opposed goals unordered");
      }
    }
  }
}

}  // namespace

std::uint64_t count_linearizations(const Plan& plan) {
  const Dag dag = ordinary_dag(plan);
  const std::size_t n = dag.ids.size();
  if (n > 22) return std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint32_t> need(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int p : dag.preds[i]) need[i] |= 1U << p;
  }
  std::vector<std::uint64_t> ways(std::size_t{1} << n, 0);
  ways[0] = 1;
  for (std::uint32_t mask = 0; mask < ways.size(); ++mask) {
    if (ways[mask] == 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U || (need[i] & ~mask) != 0) continue;
      auto& w = ways[mask | (1U << i)];
      w = w > std::numeric_limits<std::uint64_t>::max() - ways[mask] ? std::numeric_limits<std::uint64_t>::max()
                                                                     : w + ways[mask];
    }
  }
  return ways.back();
}

std::vector<std::vector<StepId>> linearizations(const Plan& plan, std::uint64_t limit) {
  const Dag dag = ordinary_dag(plan);
  const std::size_t n = dag.ids.size();
  std::vector<std::vector<StepId>> out;
  std::vector<int> placed(n, 0);
  std::vector<StepId> prefix;
  auto rec = [&](auto&& self) -> void {
    if (out.size() >= limit) return;
    if (prefix.size() == n) {
      out.push_back(prefix);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i]) continue;
      if (!std::all_of(dag.preds[i].begin(), dag.preds[i].end(), [&](int p) { return placed[static_cast<std::size_t>(p)] != 0; })) {
        continue;
      }
      placed[i] = 1;
      prefix.push_back(dag.ids[i]);
      self(self);
      prefix.pop_back();
      placed[i] = 0;
    }
  };
  rec(rec);
  return out;
}

ValidationReport validate(const Plan& plan, const Task& task, Algorithm mode, std::uint64_t max_linearizations) {
  ValidationReport report;
  check_structure(plan, task, report.violations);
  if (mode == Algorithm::kIpocl) check_frames(plan, report.violations);
  if (plan.ordering.size() != plan.steps.size() || !plan.ordering.consistent()) return report;

  report.linearizations = count_linearizations(plan);
  std::vector<std::vector<StepId>> orders;
  if (report.linearizations <= max_linearizations) {
    orders = linearizations(plan, max_linearizations);
  } else {
    report.exhaustive = false;
    const Dag dag = ordinary_dag(plan);
    std::mt19937_64 rng(0x5eedULL);
    for (std::uint64_t k = 0; k < max_linearizations; ++k) {
      std::vector<int> placed(dag.ids.size(), 0);
      std::vector<StepId> order;
      while (order.size() < dag.ids.size()) {
        std::vector<std::size_t> ready;
        for (std::size_t i = 0; i < dag.ids.size(); ++i) {
          if (placed[i]) continue;
          if (std::all_of(dag.preds[i].begin(), dag.preds[i].end(),
                          [&](int p) { return placed[static_cast<std::size_t>(p)] != 0; })) {
            ready.push_back(i);
          }
        }
        const std::size_t pick = ready[std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(rng)];
        placed[pick] = 1;
        order.push_back(dag.ids[pick]);
      }
      orders.push_back(std::move(order));
    }
  }
  for (const auto& order : orders) {
    ++report.executed;
    std::string failure = check_execution(plan, task, order);
    if (!failure.empty()) {
      report.violations.push_back("linearization [" + order_text(order) + "]: " + failure);
      break;  // one counterexample is enough
    }
  }
  return report;
}

std::string ground_label(const GroundAction& action, const Bindings& bindings) {
  std::string out = action.schema != nullptr ? action.schema->name : "?";
  out += '(';
  for (std::size_t i = 0; i < action.args.size(); ++i) {
    if (i > 0) out += ", ";
    const Term t = bindings.resolve(action.args[i]);
    out += t.is_symbol() ? to_string(t) : "_";
  }
  out += ')';
  return out;
}

std::set<std::vector<std::string>> oracle_solve(const Task& task, int max_length) {
  std::vector<const GroundAction*> actions;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < task.domain().schemata.size(); ++i) {
    for (const auto& g : task.groundings(static_cast<int>(i))) {
      actions.push_back(g.get());
      labels.push_back(ground_label(*g, Bindings{}));
    }
  }
  const auto& goal = task.problem().goal;
  std::set<std::vector<std::string>> out;
  std::vector<std::string> prefix;
  State state;
  for (const auto& lit : task.problem().initial) state.insert(lit);

  auto rec = [&](auto&& self) -> void {
    if (std::all_of(goal.begin(), goal.end(), [&](const Literal& g) { return holds(state, g); })) out.insert(prefix);
    if (static_cast<int>(prefix.size()) >= max_length) return;
    for (std::size_t a = 0; a < actions.size(); ++a) {
      const auto& pre = actions[a]->preconditions;
      if (!std::all_of(pre.begin(), pre.end(), [&](const Literal& p) { return holds(state, p); })) continue;
      State saved = state;
      apply_effects(state, actions[a]->effects);
      prefix.push_back(labels[a]);
      self(self);
      prefix.pop_back();
      state = std::move(saved);
    }
  };
  rec(rec);
  return out;
}

}  // namespace fabula
