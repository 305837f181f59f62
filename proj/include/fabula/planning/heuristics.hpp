#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fabula/core/plan.hpp"
#include "fabula/dsl/rules.hpp"

namespace fabula {

// Pending flaws plus ordinary steps.
std::int64_t h_classical(const Plan& plan);

// 1 per ordinary step, 1 per flaw, 10 per frame beyond a character's first,
// 1000 per orphan none of whose actors holds any frame.
std::int64_t h_ipocl_di(const Plan& plan);

std::int64_t h_rules(const Plan& plan, const RuleSet& rules);

enum class HeuristicKind { kClassical, kIpoclDi, kRules, kCombined };

std::optional<HeuristicKind> parse_heuristic_kind(std::string_view name);
const char* heuristic_name(HeuristicKind kind);

struct Heuristic {
  HeuristicKind kind = HeuristicKind::kClassical;
  RuleSet rules;

  std::int64_t operator()(const Plan& plan) const;
};

}  // namespace fabula
