#pragma once

#include <memory>

#include "fabula/planning/refine.hpp"

namespace fabula::detail {

// Copy of `parent` with `flaw` removed and lineage fields advanced.
Plan child_of(const Plan& parent, const Flaw& flaw);

// Appends an ordinary step ordered between init and goal.
StepId add_step(Plan& plan, std::shared_ptr<const GroundAction> action);

// Appends a link and flags every step that threatens it.
void add_link(Plan& plan, const CausalLink& link);

void add_preconditions(Plan& plan, StepId step);

// Flags every existing link that `step` threatens.
void note_step_threats(Plan& plan, StepId step);

// Drops stale threats and, for the intentional engine, adds intentional
// threats and intent flaws. False when the plan is inconsistent.
bool finalize(Plan& plan, Algorithm algorithm);

}  // namespace fabula::detail
