#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "fabula/core/plan.hpp"
#include "fabula/planning/refine.hpp"
#include "fabula/planning/task.hpp"

namespace fabula {

struct ValidationReport {
  std::vector<std::string> violations;
  std::uint64_t linearizations = 0;  // total, saturating
  std::uint64_t executed = 0;
  bool exhaustive = true;

  bool ok() const { return violations.empty(); }
};

// Structural invariants, then execution of topological orders of the steps
// from the initial state. Up to `max_linearizations` orders every order is
// run; above that a fixed-seed sample of that many.
// The intentional mode adds the frame checks: no orphans, motivating steps
// before their intervals, final steps achieving their goals, interval members
// performed by the frame's character, same-character opposed frames ordered.
ValidationReport validate(const Plan& plan, const Task& task, Algorithm mode,
                          std::uint64_t max_linearizations = 10'000);

// Topological orders of the ordinary steps, at most `limit` of them, in
// lexicographic order.
std::vector<std::vector<StepId>> linearizations(const Plan& plan, std::uint64_t limit);

// Number of topological orders of the ordinary steps, saturating at
// UINT64_MAX. Exact for up to 22 ordinary steps.
std::uint64_t count_linearizations(const Plan& plan);

// Label used to compare plan steps with oracle sequences. Literal-valued
// arguments are printed as `_`: they never affect executability.
std::string ground_label(const GroundAction& action, const Bindings& bindings);

// Every executable sequence of ground actions of length <= max_length that
// ends in a goal state, by exhaustive forward search.
std::set<std::vector<std::string>> oracle_solve(const Task& task, int max_length);

}  // namespace fabula
