#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fabula/core/plan.hpp"
#include "fabula/planning/search.hpp"
#include "fabula/planning/task.hpp"

namespace fabula {

class PlanFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON document for a finished plan: steps with resolved arguments, the
// reduced ordering, causal links, bindings and frames. `stats` is optional.
std::string plan_to_json(const Plan& plan, const Task& task, Algorithm algorithm, const SearchStats* stats = nullptr);

// Rebuilds a plan against the same domain and problem. Flaws are not
// stored; run the validator on the result. Orderings that close a cycle
// leave the plan inconsistent and, when `problems` is given, are reported
// there with the steps of the cycle.
Plan plan_from_json(const std::string& text, const Task& task, std::vector<std::string>* problems = nullptr);

// Graphviz rendering: causal links solid, bare orderings dashed, frames as
// boxes tied to their interval members with dotted edges.
std::string plan_to_dot(const Plan& plan);

}  // namespace fabula
