#include "fabula/planning/heuristics.hpp"

#include <algorithm>
#include <map>

namespace fabula {

namespace {

int frames_containing(const Plan& plan, StepId s) {
  return static_cast<int>(std::count_if(plan.frames.begin(), plan.frames.end(),
                                        [&](const FrameOfCommitment& c) { return c.contains(s); }));
}

bool listed(const std::vector<std::pair<SymbolId, Literal>>& pairs, SymbolId who, const Literal& goal) {
  return std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) { return p.first == who && p.second == goal; });
}

// Same schema and same arguments once bindings are applied.
bool same_action(const Plan& plan, const Step& a, const Step& b) {
  if (a.action == b.action) return true;
  if (a.action->schema != b.action->schema) return false;
  for (std::size_t i = 0; i < a.action->args.size(); ++i) {
    if (plan.bindings.resolve(a.action->args[i]) != plan.bindings.resolve(b.action->args[i])) return false;
  }
  return true;
}

}  // namespace

std::int64_t h_classical(const Plan& plan) {
  return static_cast<std::int64_t>(plan.flaws.size() + plan.ordinary_step_count());
}

std::int64_t h_ipocl_di(const Plan& plan) {
  std::int64_t h = static_cast<std::int64_t>(plan.flaws.size() + plan.ordinary_step_count());
  std::map<SymbolId, int> per_character;
  for (const auto& c : plan.frames) ++per_character[c.character];
  for (const auto& [who, n] : per_character) {
    if (n > 1) h += 10 * (n - 1);
  }
  for (StepId s = 2; s < static_cast<StepId>(plan.steps.size()); ++s) {
    const Step& step = plan.step(s);
    if (step.happening() || frames_containing(plan, s) > 0) continue;
    bool frameless = std::none_of(step.actors().begin(), step.actors().end(),
                                  [&](SymbolId a) { return per_character.contains(a); });
    if (frameless) h += 1000;
  }
  return h;
}

std::int64_t h_rules(const Plan& plan, const RuleSet& rules) {
  std::int64_t h = 0;
  for (const auto& rule : rules.rules) {
    if (const auto* r = std::get_if<RepeatActionRule>(&rule)) {
      const auto n = static_cast<StepId>(plan.steps.size());
      for (StepId a = 2; a < n; ++a) {
        for (StepId b = a + 1; b < n; ++b) {
          if (same_action(plan, plan.step(a), plan.step(b))) h += r->weight;
        }
      }
    } else if (const auto* r = std::get_if<FrameAllowlistRule>(&rule)) {
      for (const auto& c : plan.frames) {
        if (!listed(r->allowed, c.character, plan.frame_goal(c))) h += r->weight;
      }
    } else if (const auto* r = std::get_if<FrameDenylistRule>(&rule)) {
      for (const auto& c : plan.frames) {
        if (listed(r->denied, c.character, plan.frame_goal(c))) h += r->weight;
      }
    } else if (const auto* r = std::get_if<ActionFrameCountRule>(&rule)) {
      for (StepId s = 2; s < static_cast<StepId>(plan.steps.size()); ++s) {
        if (plan.step(s).name() == r->action && frames_containing(plan, s) < r->frames) h += r->weight;
      }
    }
  }
  return h;
}

std::optional<HeuristicKind> parse_heuristic_kind(std::string_view name) {
  if (name == "classical") return HeuristicKind::kClassical;
  if (name == "ipocl-di") return HeuristicKind::kIpoclDi;
  if (name == "rules") return HeuristicKind::kRules;
  if (name == "combined") return HeuristicKind::kCombined;
  return std::nullopt;
}

const char* heuristic_name(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::kClassical:
      return "classical";
    case HeuristicKind::kIpoclDi:
      return "ipocl-di";
    case HeuristicKind::kRules:
      return "rules";
    case HeuristicKind::kCombined:
      return "combined";
  }
  return "?";
}

std::int64_t Heuristic::operator()(const Plan& plan) const {
  switch (kind) {
    case HeuristicKind::kClassical:
      return h_classical(plan);
    case HeuristicKind::kIpoclDi:
      return h_ipocl_di(plan);
    case HeuristicKind::kRules:
      return h_rules(plan, rules);
    case HeuristicKind::kCombined:
      return h_ipocl_di(plan) + h_rules(plan, rules);
  }
  return 0;
}

}  // namespace fabula
