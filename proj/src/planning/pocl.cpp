#include <algorithm>

#include "fabula/planning/refine.hpp"
#include "planning/internal.hpp"

namespace fabula {

const char* algorithm_name(Algorithm algorithm) { return algorithm == Algorithm::kPocl ? "pocl" : "ipocl"; }

namespace detail {

Plan child_of(const Plan& parent, const Flaw& flaw) {
  Plan child = parent;
  auto it = std::find_if(child.flaws.begin(), child.flaws.end(), [&](const Flaw& f) { return f.seq == flaw.seq; });
  if (it != child.flaws.end()) child.flaws.erase(it);
  child.depth = parent.depth + 1;
  child.parent = parent.id;
  return child;
}

StepId add_step(Plan& plan, std::shared_ptr<const GroundAction> action) {
  auto id = static_cast<StepId>(plan.steps.size());
  plan.steps.push_back(std::make_shared<const Step>(Step{id, StepRole::kOrdinary, std::move(action)}));
  plan.ordering.add_step();
  plan.ordering.add(kInitialStep, id);
  plan.ordering.add(id, kGoalStep);
  return id;
}

void add_link(Plan& plan, const CausalLink& link) {
  plan.links.push_back(link);
  const int index = static_cast<int>(plan.links.size() - 1);
  for (StepId t = 0; t < static_cast<StepId>(plan.steps.size()); ++t) {
    if (threatens(plan, t, link) && !plan.has_flaw(FlawKind::kCausalThreat, t, index)) {
      plan.add_flaw(FlawKind::kCausalThreat, t, index);
    }
  }
}

void add_preconditions(Plan& plan, StepId step) {
  const auto& pre = plan.step(step).preconditions();
  for (std::size_t i = 0; i < pre.size(); ++i) plan.add_flaw(FlawKind::kOpenCondition, step, static_cast<int>(i));
}

void note_step_threats(Plan& plan, StepId step) {
  for (std::size_t i = 0; i < plan.links.size(); ++i) {
    if (threatens(plan, step, plan.links[i]) && !plan.has_flaw(FlawKind::kCausalThreat, step, static_cast<int>(i))) {
      plan.add_flaw(FlawKind::kCausalThreat, step, static_cast<int>(i));
    }
  }
}

bool finalize(Plan& plan, Algorithm algorithm) {
  if (!consistent(plan)) return false;
  std::erase_if(plan.flaws, [&](const Flaw& f) {
    return f.kind == FlawKind::kCausalThreat &&
           !threatens(plan, f.first, plan.links[static_cast<std::size_t>(f.second)]);
  });
  if (algorithm == Algorithm::kIpocl) {
    for (auto [a, b] : detect_intentional_threats(plan)) {
      if (!plan.has_flaw(FlawKind::kIntentionalThreat, a, b)) plan.add_flaw(FlawKind::kIntentionalThreat, a, b);
    }
    annotate_intent_flaws(plan);
  }
  return true;
}

}  // namespace detail

using namespace detail;

Plan initial_plan(const Task& task) {
  Plan plan;
  plan.steps.push_back(std::make_shared<const Step>(Step{kInitialStep, StepRole::kInitial, task.initial_action()}));
  plan.steps.push_back(std::make_shared<const Step>(Step{kGoalStep, StepRole::kGoal, task.goal_action()}));
  plan.ordering.add_step();
  plan.ordering.add_step();
  plan.ordering.add(kInitialStep, kGoalStep);
  const auto n = static_cast<int>(task.problem().goal.size());
  for (int i = n - 1; i >= 0; --i) plan.add_flaw(FlawKind::kOpenCondition, kGoalStep, i);
  return plan;
}

bool threatens(const Plan& plan, StepId t, const CausalLink& link) {
  if (t == link.source || t == link.sink || t == kGoalStep || t == kInitialStep) return false;
  if (!plan.ordering.possibly_precedes(link.source, t) || !plan.ordering.possibly_precedes(t, link.sink)) return false;
  const Literal& raw = plan.step(link.sink).preconditions()[static_cast<std::size_t>(link.condition)];
  const auto& effects = plan.step(t).effects();
  if (raw.is_ground()) {
    for (const auto& e : effects) {
      if (e.predicate == raw.predicate && e.positive != raw.positive && e.is_ground() && e.args == raw.args) {
        return true;
      }
    }
    for (const auto& e : effects) {
      if (!e.is_ground() && e.predicate == raw.predicate && unify_negated(e, raw, plan.bindings)) return true;
    }
    return false;
  }
  for (const auto& e : effects) {
    if (e.predicate == raw.predicate && unify_negated(e, raw, plan.bindings)) return true;
  }
  return false;
}

std::vector<ThreatRef> detect_causal_threats(const Plan& plan) {
  std::vector<ThreatRef> out;
  for (std::size_t i = 0; i < plan.links.size(); ++i) {
    for (StepId t = 0; t < static_cast<StepId>(plan.steps.size()); ++t) {
      if (threatens(plan, t, plan.links[i])) out.push_back({t, static_cast<int>(i)});
    }
  }
  return out;
}

std::vector<Plan> resolve_open_condition(const Plan& plan, const Flaw& flaw, const Task& task, Algorithm algorithm) {
  const StepId need = flaw.first;
  const int index = flaw.second;
  const Literal& raw = plan.step(need).preconditions()[static_cast<std::size_t>(index)];
  const Literal cond = plan.bindings.apply(raw);
  std::vector<Plan> out;

  auto link_child = [&](StepId source, int effect, const Bindings& bindings, Refinement::Kind kind) {
    Plan child = child_of(plan, flaw);
    child.bindings = bindings;
    child.ordering.add(source, need);
    add_link(child, CausalLink{source, effect, need, index});
    child.reason = Refinement{kind, source, need, index, 0, 0};
    return child;
  };

  // Reuse existing steps, lowest id first.
  for (StepId s = 0; s < static_cast<StepId>(plan.steps.size()); ++s) {
    if (s == need || s == kGoalStep || !plan.ordering.possibly_precedes(s, need)) continue;
    if (s == kInitialStep && cond.is_ground()) {
      if (cond.positive) {
        int at = task.initial_index(cond);
        if (at >= 0) out.push_back(link_child(s, at, plan.bindings, Refinement::Kind::kReuseStep));
      } else if (task.initially(cond)) {
        out.push_back(link_child(s, kClosedWorld, plan.bindings, Refinement::Kind::kReuseStep));
      }
      continue;
    }
    const auto& effects = plan.step(s).effects();
    for (std::size_t e = 0; e < effects.size(); ++e) {
      if (effects[e].predicate != cond.predicate || effects[e].positive != cond.positive) continue;
      if (auto b = unify(effects[e], cond, plan.bindings)) {
        out.push_back(link_child(s, static_cast<int>(e), *b, Refinement::Kind::kReuseStep));
      }
    }
  }

  // Instantiate new steps.
  const auto new_id = static_cast<StepId>(plan.steps.size());
  for (const auto& est : task.establishers(cond)) {
    auto action = task.instantiate(est.schema, est.grounding, new_id);
    auto b = unify(action->effects[static_cast<std::size_t>(est.effect)], cond, plan.bindings);
    if (!b) continue;
    Plan child = child_of(plan, flaw);
    child.bindings = std::move(*b);
    StepId s = add_step(child, std::move(action));
    child.ordering.add(s, need);
    add_link(child, CausalLink{s, est.effect, need, index});
    add_preconditions(child, s);
    note_step_threats(child, s);
    child.reason = Refinement{Refinement::Kind::kNewStep, s, need, index, 0, 0};
    if (algorithm == Algorithm::kIpocl) {
      for (auto& framed : discover_frames(child, s)) out.push_back(std::move(framed));
    } else {
      out.push_back(std::move(child));
    }
  }

  std::vector<Plan> kept;
  kept.reserve(out.size());
  for (auto& child : out) {
    if (finalize(child, algorithm)) kept.push_back(std::move(child));
  }
  return kept;
}

std::vector<Plan> resolve_causal_threat(const Plan& plan, const Flaw& flaw, Algorithm algorithm) {
  const StepId t = flaw.first;
  const CausalLink link = plan.links.at(static_cast<std::size_t>(flaw.second));
  std::vector<Plan> out;

  auto ordered = [&](StepId before, StepId after, Refinement::Kind kind) {
    Plan child = child_of(plan, flaw);
    child.reason = Refinement{kind, t, flaw.second, -1, 0, 0};
    if (child.ordering.add(before, after) && finalize(child, algorithm)) out.push_back(std::move(child));
  };
  ordered(link.sink, t, Refinement::Kind::kPromotion);
  ordered(t, link.source, Refinement::Kind::kDemotion);

  // Separation: forbid each codesignation the clobbering unifier would need.
  const Literal& raw = plan.step(link.sink).preconditions()[static_cast<std::size_t>(link.condition)];
  std::vector<std::pair<SymbolId, Term>> needed;
  for (const auto& e : plan.step(t).effects()) {
    auto b = unify_negated(e, raw, plan.bindings);
    if (!b) continue;
    for (const auto& entry : b->codesignations()) {
      if (std::find(plan.bindings.codesignations().begin(), plan.bindings.codesignations().end(), entry) ==
              plan.bindings.codesignations().end() &&
          std::find(needed.begin(), needed.end(), entry) == needed.end()) {
        needed.push_back(entry);
      }
    }
  }
  for (const auto& [var, value] : needed) {
    Plan child = child_of(plan, flaw);
    child.bindings.forbid(Term::variable(var), value);
    child.reason = Refinement{Refinement::Kind::kSeparation, t, flaw.second, -1, 0, 0};
    if (finalize(child, algorithm) && !threatens(child, t, link)) out.push_back(std::move(child));
  }
  return out;
}

bool pocl_complete(const Plan& plan) { return plan.flaws.empty() && consistent(plan); }

bool complete(const Plan& plan, Algorithm algorithm) {
  return algorithm == Algorithm::kPocl ? pocl_complete(plan) : ipocl_complete(plan);
}

std::vector<Plan> refine(const Plan& plan, const Flaw& flaw, const Task& task, Algorithm algorithm) {
  switch (flaw.kind) {
    case FlawKind::kOpenCondition:
      return resolve_open_condition(plan, flaw, task, algorithm);
    case FlawKind::kCausalThreat:
      return resolve_causal_threat(plan, flaw, algorithm);
    case FlawKind::kOpenMotivation:
      return resolve_open_motivation(plan, flaw, task);
    case FlawKind::kIntentFlaw:
      return resolve_intent_flaw(plan, flaw);
    case FlawKind::kIntentionalThreat:
      return resolve_intentional_threat(plan, flaw);
  }
  return {};
}

}  // namespace fabula
