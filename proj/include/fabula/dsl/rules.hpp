#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fabula/core/literal.hpp"

namespace fabula {

struct RepeatActionRule {
  std::int64_t weight = 0;
  friend bool operator==(const RepeatActionRule&, const RepeatActionRule&) = default;
};

// Penalizes every frame whose (character, goal) pair is not listed.
struct FrameAllowlistRule {
  std::int64_t weight = 0;
  std::vector<std::pair<SymbolId, Literal>> allowed;
  friend bool operator==(const FrameAllowlistRule&, const FrameAllowlistRule&) = default;
};

// Penalizes every step of `action` that sits in fewer than `frames` intervals.
struct ActionFrameCountRule {
  std::int64_t weight = 0;
  std::string action;
  int frames = 0;
  friend bool operator==(const ActionFrameCountRule&, const ActionFrameCountRule&) = default;
};

// Penalizes every frame whose (character, goal) pair is listed.
struct FrameDenylistRule {
  std::int64_t weight = 0;
  std::vector<std::pair<SymbolId, Literal>> denied;
  friend bool operator==(const FrameDenylistRule&, const FrameDenylistRule&) = default;
};

using Rule = std::variant<RepeatActionRule, FrameAllowlistRule, ActionFrameCountRule, FrameDenylistRule>;

struct RuleSet {
  std::vector<Rule> rules;
  bool empty() const { return rules.empty(); }
  friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

// One `(penalty KIND WEIGHT ...)` form per rule, optionally wrapped in
// `(rules NAME ...)`.
RuleSet parse_heuristic_rules(std::string_view text);
std::string print_rules(const RuleSet& rules);
RuleSet load_rules(const std::string& path);

}  // namespace fabula
