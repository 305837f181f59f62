#include <algorithm>

#include "fabula/planning/refine.hpp"
#include "planning/internal.hpp"

namespace fabula {

using namespace detail;

namespace {

void insert_sorted(std::vector<StepId>& v, StepId s) {
  auto it = std::lower_bound(v.begin(), v.end(), s);
  if (it == v.end() || *it != s) v.insert(it, s);
}

// Orders a new interval member of `frame` against the frame's motivating
// step, its final step, and every frame it has been ordered with.
bool order_member(Plan& plan, const FrameOfCommitment& frame, StepId s) {
  bool ok = true;
  if (frame.motivating_step) ok = plan.ordering.add(*frame.motivating_step, s) && ok;
  if (s != frame.final_step) ok = plan.ordering.add(s, frame.final_step) && ok;
  for (const auto& [earlier, later] : plan.ordered_frames) {
    if (earlier == frame.id) {
      for (StepId x : plan.frame(later).interval) ok = plan.ordering.add(s, x) && ok;
    } else if (later == frame.id) {
      for (StepId x : plan.frame(earlier).interval) ok = plan.ordering.add(x, s) && ok;
    }
  }
  return ok;
}

bool in_service_of(const Plan& plan, const FrameOfCommitment& ci, const FrameOfCommitment& ck) {
  if (ci.id == ck.id) return false;
  return std::any_of(plan.links.begin(), plan.links.end(), [&](const CausalLink& l) {
    return l.source == ci.final_step && ck.contains(l.sink);
  });
}

}  // namespace

std::vector<Plan> discover_frames(const Plan& plan, StepId s_add) {
  const Step& step = plan.step(s_add);
  if (step.happening() || step.actors().empty()) return {plan};
  const auto& actors = step.actors();
  const auto choices = static_cast<int>(step.effects().size()) + 1;  // 0 = nil
  std::size_t total = 1;
  for (std::size_t i = 0; i < actors.size(); ++i) total *= static_cast<std::size_t>(choices);

  std::vector<Plan> out;
  out.reserve(total);
  std::vector<int> pick(actors.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t rest = n;
    for (std::size_t i = actors.size(); i-- > 0;) {
      pick[i] = static_cast<int>(rest % static_cast<std::size_t>(choices));
      rest /= static_cast<std::size_t>(choices);
    }
    Plan child = plan;
    // Later actors get the lower frame ids.
    for (std::size_t i = actors.size(); i-- > 0;) {
      if (pick[i] == 0) continue;
      FrameOfCommitment frame;
      frame.id = static_cast<FrameId>(child.frames.size() + 1);
      frame.character = actors[i];
      frame.goal = std::make_shared<const Literal>(step.effects()[static_cast<std::size_t>(pick[i] - 1)]);
      frame.interval = {s_add};
      frame.final_step = s_add;
      child.frames.push_back(std::move(frame));
      child.add_flaw(FlawKind::kOpenMotivation, child.frames.back().id);
    }
    out.push_back(std::move(child));
  }
  return out;
}

std::vector<FrameId> find_adoptable_frames(const Plan& plan, StepId s_add) {
  const Step& step = plan.step(s_add);
  std::vector<FrameId> direct;
  for (const auto& c : plan.frames) {
    if (!step.has_actor(c.character) || c.contains(s_add)) continue;
    bool linked = std::any_of(plan.links.begin(), plan.links.end(), [&](const CausalLink& l) {
      return l.source == s_add && c.contains(l.sink);
    });
    if (linked) direct.push_back(c.id);
  }
  std::vector<FrameId> out = direct;
  for (const auto& c : plan.frames) {
    if (!step.has_actor(c.character) || c.contains(s_add)) continue;
    if (std::find(direct.begin(), direct.end(), c.id) != direct.end()) continue;
    bool contracted = std::any_of(plan.frames.begin(), plan.frames.end(), [&](const FrameOfCommitment& ci) {
      return ci.motivating_step == s_add &&
             std::find(direct.begin(), direct.end(), ci.id) == direct.end() && in_service_of(plan, ci, c);
    });
    if (contracted) out.push_back(c.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void annotate_intent_flaws(Plan& plan) {
  if (plan.frames.empty()) return;
  for (StepId s = 2; s < static_cast<StepId>(plan.steps.size()); ++s) {
    const Step& step = plan.step(s);
    bool candidate = std::any_of(plan.frames.begin(), plan.frames.end(), [&](const FrameOfCommitment& c) {
      return step.has_actor(c.character) && !c.contains(s) && !plan.intent_flaw_proposed(s, c.id);
    });
    if (!candidate) continue;
    for (FrameId c : find_adoptable_frames(plan, s)) {
      if (plan.intent_flaw_proposed(s, c)) continue;
      plan.proposed_intent_flaws.emplace_back(s, c);
      plan.add_flaw(FlawKind::kIntentFlaw, s, c);
    }
  }
}

std::vector<Plan> resolve_open_motivation(const Plan& plan, const Flaw& flaw, const Task& task) {
  const FrameId fid = flaw.first;
  const Literal cond = plan.bindings.apply(plan.frame(fid).motivation_condition());
  std::vector<Plan> out;

  auto motivate = [&](Plan& child, StepId s, int effect) {
    auto& frame = child.frame(fid);
    frame.motivating_step = s;
    frame.motivating_effect = effect;
    bool ok = true;
    for (StepId member : frame.interval) ok = child.ordering.add(s, member) && ok;
    return ok;
  };

  for (StepId s = 0; s < static_cast<StepId>(plan.steps.size()); ++s) {
    if (s == kGoalStep) continue;
    const auto& effects = plan.step(s).effects();
    for (std::size_t e = 0; e < effects.size(); ++e) {
      if (effects[e].predicate != cond.predicate || effects[e].positive != cond.positive) continue;
      auto b = unify(effects[e], cond, plan.bindings);
      if (!b) continue;
      Plan child = child_of(plan, flaw);
      child.bindings = std::move(*b);
      child.reason = Refinement{Refinement::Kind::kReuseStep, s, -1, -1, fid, 0};
      if (motivate(child, s, static_cast<int>(e)) && finalize(child, Algorithm::kIpocl)) {
        out.push_back(std::move(child));
      }
    }
  }

  const auto new_id = static_cast<StepId>(plan.steps.size());
  for (const auto& est : task.establishers(cond)) {
    auto action = task.instantiate(est.schema, est.grounding, new_id);
    auto b = unify(action->effects[static_cast<std::size_t>(est.effect)], cond, plan.bindings);
    if (!b) continue;
    Plan child = child_of(plan, flaw);
    child.bindings = std::move(*b);
    StepId s = add_step(child, std::move(action));
    if (!motivate(child, s, est.effect)) continue;
    add_preconditions(child, s);
    note_step_threats(child, s);
    child.reason = Refinement{Refinement::Kind::kNewStep, s, -1, -1, fid, 0};
    for (auto& framed : discover_frames(child, s)) {
      if (finalize(framed, Algorithm::kIpocl)) out.push_back(std::move(framed));
    }
  }
  return out;
}

std::vector<Plan> resolve_intent_flaw(const Plan& plan, const Flaw& flaw) {
  const StepId s = flaw.first;
  const FrameId fid = flaw.second;
  std::vector<Plan> out;

  Plan adopt = child_of(plan, flaw);
  adopt.reason = Refinement{Refinement::Kind::kAdopt, s, -1, -1, fid, 0};
  insert_sorted(adopt.frame(fid).interval, s);
  const FrameOfCommitment frame = adopt.frame(fid);
  if (order_member(adopt, frame, s) && finalize(adopt, Algorithm::kIpocl)) out.push_back(std::move(adopt));

  Plan reject = child_of(plan, flaw);
  reject.reason = Refinement{Refinement::Kind::kReject, s, -1, -1, fid, 0};
  out.push_back(std::move(reject));
  return out;
}

std::vector<std::pair<FrameId, FrameId>> detect_intentional_threats(const Plan& plan) {
  std::vector<std::pair<FrameId, FrameId>> out;
  for (std::size_t i = 0; i < plan.frames.size(); ++i) {
    for (std::size_t j = i + 1; j < plan.frames.size(); ++j) {
      const auto& a = plan.frames[i];
      const auto& b = plan.frames[j];
      if (a.character != b.character || plan.frames_ordered(a.id, b.id)) continue;
      if (plan.frame_goal(a) == plan.frame_goal(b).negated()) out.emplace_back(a.id, b.id);
    }
  }
  return out;
}

std::vector<Plan> resolve_intentional_threat(const Plan& plan, const Flaw& flaw) {
  std::vector<Plan> out;
  auto order = [&](FrameId first, FrameId second) {
    Plan child = child_of(plan, flaw);
    child.reason = Refinement{Refinement::Kind::kOrderFrames, -1, -1, -1, first, second};
    bool ok = true;
    for (StepId a : plan.frame(first).interval) {
      for (StepId b : plan.frame(second).interval) ok = child.ordering.add(a, b) && ok;
    }
    child.ordered_frames.emplace_back(first, second);
    if (ok && finalize(child, Algorithm::kIpocl)) out.push_back(std::move(child));
  };
  order(flaw.first, flaw.second);
  order(flaw.second, flaw.first);
  return out;
}

std::vector<StepId> orphans(const Plan& plan) {
  std::vector<StepId> out;
  for (StepId s = 2; s < static_cast<StepId>(plan.steps.size()); ++s) {
    if (plan.step(s).happening()) continue;
    bool member = std::any_of(plan.frames.begin(), plan.frames.end(),
                              [&](const FrameOfCommitment& c) { return c.contains(s); });
    if (!member) out.push_back(s);
  }
  return out;
}

bool ipocl_complete(const Plan& plan) {
  return plan.flaws.empty() && consistent(plan) && detect_causal_threats(plan).empty() && orphans(plan).empty();
}

OrphanCheck::OrphanCheck(const Task& task) {
  for (std::size_t i = 0; i < task.domain().schemata.size(); ++i) {
    for (const auto& g : task.groundings(static_cast<int>(i))) {
      for (SymbolId who : g->actors) {
        for (const auto& p : g->preconditions) needs_[who].emplace(p.predicate, p.positive);
        if (g->happening) continue;
        for (const auto& e : g->effects) {
          auto& out = yields_[{who, {e.predicate, e.positive}}];
          for (const auto& other : g->effects) out.emplace(other.predicate, other.positive);
        }
      }
    }
  }
}

bool OrphanCheck::feeds(SymbolId who, const Literal& lit) const {
  auto it = needs_.find(who);
  return it != needs_.end() && it->second.contains({lit.predicate, lit.positive});
}

bool OrphanCheck::may_join(const Plan& plan, StepId s) const {
  if (std::any_of(plan.flaws.begin(), plan.flaws.end(),
                  [&](const Flaw& f) { return f.kind == FlawKind::kIntentFlaw && f.first == s; })) {
    return true;
  }
  const Step& step = plan.step(s);
  for (SymbolId who : step.actors()) {
    for (const auto& raw : step.effects()) {
      const Literal e = plan.bindings.apply(raw);
      if (feeds(who, e)) return true;
      if (e.predicate != intends_predicate() || !e.positive) continue;
      // s may motivate a frame whose final step then links into one of who's steps
      const Term& goal = e.args.at(1);
      const Term& owner = e.args.at(0);
      if (!goal.is_literal() || !owner.is_symbol()) return true;
      const Literal& g = goal.nested();
      auto it = yields_.find({owner.id(), {g.predicate, g.positive}});
      if (it == yields_.end()) continue;
      for (const auto& [pred, positive] : it->second) {
        auto need = needs_.find(who);
        if (need != needs_.end() && need->second.contains({pred, positive})) return true;
      }
    }
  }
  return false;
}

bool OrphanCheck::hopeless(const Plan& plan) const {
  for (StepId s : orphans(plan)) {
    if (!may_join(plan, s)) return true;
  }
  return false;
}

}  // namespace fabula
