#include "fabula/core/plan.hpp"

#include <algorithm>
#include <stdexcept>

namespace fabula {

bool ActionSchema::is_literal_param(SymbolId var) const {
  return std::find(literal_params.begin(), literal_params.end(), var) != literal_params.end();
}

int ActionSchema::param_index(SymbolId var) const {
  auto it = std::find(params.begin(), params.end(), var);
  return it == params.end() ? -1 : static_cast<int>(it - params.begin());
}

bool Step::has_actor(SymbolId character) const {
  const auto& a = action->actors;
  return std::find(a.begin(), a.end(), character) != a.end();
}

const std::string& Step::name() const {
  static const std::string kInit = "init";
  static const std::string kGoal = "goal";
  if (role == StepRole::kInitial) return kInit;
  if (role == StepRole::kGoal) return kGoal;
  return action->schema->name;
}

bool FrameOfCommitment::contains(StepId step) const {
  return std::binary_search(interval.begin(), interval.end(), step);
}

Literal FrameOfCommitment::motivation_condition() const { return make_intends(character, *goal); }

const Step& Plan::step(StepId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= steps.size()) {
    throw std::out_of_range("unknown step id " + std::to_string(id));
  }
  return *steps[static_cast<std::size_t>(id)];
}

const FrameOfCommitment& Plan::frame(FrameId id) const {
  if (id < 1 || static_cast<std::size_t>(id) > frames.size()) {
    throw std::out_of_range("unknown frame id " + std::to_string(id));
  }
  return frames[static_cast<std::size_t>(id - 1)];
}

FrameOfCommitment& Plan::frame(FrameId id) {
  return const_cast<FrameOfCommitment&>(static_cast<const Plan&>(*this).frame(id));
}

Literal Plan::precondition(StepId s, int index) const {
  return bindings.apply(step(s).preconditions().at(static_cast<std::size_t>(index)));
}

Literal Plan::effect(StepId s, int index) const {
  return bindings.apply(step(s).effects().at(static_cast<std::size_t>(index)));
}

Literal Plan::link_condition(const CausalLink& link) const {
  return precondition(link.sink, link.condition);
}

Literal Plan::link_effect(const CausalLink& link) const {
  if (link.effect == kClosedWorld) return link_condition(link);
  return effect(link.source, link.effect);
}

Literal Plan::frame_goal(const FrameOfCommitment& f) const { return bindings.apply(*f.goal); }

std::string Plan::step_label(StepId id) const {
  const Step& s = step(id);
  if (!s.ordinary()) return s.name();
  return action_label(*s.action, bindings);
}

void Plan::add_flaw(FlawKind kind, std::int32_t first, std::int32_t second) {
  flaws.push_back(Flaw{kind, first, second, next_flaw_seq++});
}

bool Plan::has_flaw(FlawKind kind, std::int32_t first, std::int32_t second) const {
  return std::any_of(flaws.begin(), flaws.end(), [&](const Flaw& f) {
    return f.kind == kind && f.first == first && f.second == second;
  });
}

bool Plan::intent_flaw_proposed(StepId s, FrameId f) const {
  return std::find(proposed_intent_flaws.begin(), proposed_intent_flaws.end(),
                   std::pair<StepId, FrameId>{s, f}) != proposed_intent_flaws.end();
}

bool Plan::frames_ordered(FrameId a, FrameId b) const {
  for (const auto& [x, y] : ordered_frames) {
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

bool consistent(const Plan& plan) { return plan.ordering.consistent() && plan.bindings.consistent(); }

std::string action_label(const GroundAction& action, const Bindings& bindings) {
  std::string out = action.schema != nullptr ? action.schema->name : "?";
  out += '(';
  for (std::size_t i = 0; i < action.args.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(bindings.resolve(action.args[i]));
  }
  out += ')';
  return out;
}

namespace {

std::string frame_text(const Plan& plan, FrameId id) {
  const auto& f = plan.frame(id);
  return "frame " + std::to_string(id) + ": " + symbol_name(f.character) + " intends " +
         to_string(plan.frame_goal(f));
}

}  // namespace

std::string describe_flaw(const Plan& plan, const Flaw& flaw) {
  switch (flaw.kind) {
    case FlawKind::kOpenCondition:
      return "open condition " + to_string(plan.precondition(flaw.first, flaw.second)) +
             " on step " + (flaw.first == kGoalStep ? std::string("goal") : std::to_string(flaw.first));
    case FlawKind::kCausalThreat: {
      const auto& link = plan.links.at(static_cast<std::size_t>(flaw.second));
      return "causal threat on " + to_string(plan.link_condition(link)) + " between " +
             std::to_string(link.source) + " and " +
             (link.sink == kGoalStep ? std::string("goal") : std::to_string(link.sink)) +
             ", clobbered by step " + std::to_string(flaw.first);
    }
    case FlawKind::kOpenMotivation: {
      const auto& f = plan.frame(flaw.first);
      return "open motivation " + to_string(plan.bindings.apply(f.motivation_condition())) +
             " on frame " + std::to_string(flaw.first);
    }
    case FlawKind::kIntentFlaw: {
      const auto& f = plan.frame(flaw.second);
      return "intent flaw for " + symbol_name(f.character) + ", to possibly link step " +
             std::to_string(flaw.first) + " to " + frame_text(plan, flaw.second);
    }
    case FlawKind::kIntentionalThreat:
      return "intentional threat between " + frame_text(plan, flaw.first) + " and " +
             frame_text(plan, flaw.second);
  }
  return "?";
}

std::string describe_refinement(const Plan& plan) {
  using K = Refinement::Kind;
  const Refinement& r = plan.reason;
  auto solved = [&]() {
    if (r.frame != 0) return to_string(plan.bindings.apply(plan.frame(r.frame).motivation_condition()));
    return to_string(plan.precondition(r.target, r.index));
  };
  switch (r.kind) {
    case K::kInitial:
      return "initial plan";
    case K::kNewStep:
      return "created new step " + std::to_string(r.step) + ": " + plan.step_label(r.step) +
             " to solve " + solved();
    case K::kReuseStep:
      return "reused step " + (r.step == kInitialStep ? std::string("0 (init)") : std::to_string(r.step)) +
             " to solve " + solved();
    case K::kPromotion:
    case K::kDemotion:
    case K::kSeparation: {
      const char* how = r.kind == K::kPromotion ? "promotion" : r.kind == K::kDemotion ? "demotion" : "separation";
      const auto& link = plan.links.at(static_cast<std::size_t>(r.target));
      return std::string(how) + " of step " + std::to_string(r.step) + " to protect " +
             to_string(plan.link_condition(link)) + " between " + std::to_string(link.source) + " and " +
             (link.sink == kGoalStep ? std::string("goal") : std::to_string(link.sink));
    }
    case K::kAdopt:
      return "adoption of step " + std::to_string(r.step) + " by " + frame_text(plan, r.frame);
    case K::kReject:
      return "no adoption of step " + std::to_string(r.step) + " by " + frame_text(plan, r.frame);
    case K::kOrderFrames:
      return "ordered frame " + std::to_string(r.frame) + " before frame " + std::to_string(r.other_frame);
  }
  return "?";
}

}  // namespace fabula
