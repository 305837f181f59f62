#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fabula/core/plan.hpp"
#include "fabula/dsl/templates.hpp"
#include "fabula/planning/task.hpp"

namespace fabula {

class NarrateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Narrative {
  std::vector<StepId> order;                  // ordinary steps as told
  std::vector<std::string> event_sentences;   // main sentence per step, same order
  std::vector<std::vector<std::string>> paragraphs;  // intro, preamble, events, outro

  std::string text() const;  // paragraphs joined by blank lines
};

// Topological order of the ordinary steps, lowest ready id first.
std::vector<StepId> story_order(const Plan& plan);

// Tells the plan. Frames supply intention sentences right after their
// motivating step (at the start of the events when the initial state
// motivates them). Throws NarrateError when a step has no matching event
// template.
Narrative render(const Plan& plan, const TemplateSet& templates, const Task& task);

// Phrases used by question generation; nullopt when no template matches.
std::optional<std::string> question_text(const Plan& plan, StepId step, const TemplateSet& templates);
std::optional<std::string> answer_text(const Plan& plan, StepId step, const TemplateSet& templates);
std::optional<std::string> goal_answer_text(SymbolId who, const Literal& goal, const TemplateSet& templates);

// First character upper-cased.
std::string sentence_case(std::string text);

}  // namespace fabula
