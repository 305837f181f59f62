#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fabula/core/plan.hpp"
#include "fabula/dsl/templates.hpp"
#include "fabula/planning/refine.hpp"

namespace fabula {

class QuestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class QuestNodeKind { kEvent, kGoal };
enum class QuestArcKind { kConsequence, kReason, kInitiate, kOutcome, kImplies };

const char* quest_arc_name(QuestArcKind kind);

struct QuestNode {
  QuestNodeKind kind = QuestNodeKind::kEvent;
  StepId step = -1;    // events
  FrameId frame = -1;  // goals
  SymbolId character = 0;
  Literal goal;
  std::vector<StepId> interval;  // goals: the frame's steps
  std::string description;
};

struct QuestArc {
  QuestArcKind kind;
  int from;
  int to;
  friend bool operator==(const QuestArc&, const QuestArc&) = default;
};

struct QuestGraph {
  std::vector<QuestNode> nodes;
  std::vector<QuestArc> arcs;

  int event_node(StepId step) const;   // -1 if absent
  int goal_node(FrameId frame) const;  // -1 if absent
};

// One event per ordinary step, one goal per frame. Outcome: goal -> final
// step. Initiate: motivating step -> goal. Consequence: along causal links
// between ordinary steps. Reason: from a frame's goal to the goal of each
// frame it serves, i.e. whose interval its final step links into, so that
// forward Reason arcs climb to superordinate goals.
// Throws QuestError when the plan is not complete under `algorithm`.
QuestGraph plan_to_quest(const Plan& plan, Algorithm algorithm);

// Legal answers to "why did <event> happen?": starting from the goals whose
// intervals hold the event, the closure over forward Reason, backward
// Initiate and backward Outcome arcs.
std::vector<int> why_arc_search(const QuestGraph& graph, int event);

enum class Goodness { kGood, kPoor };
Goodness predict_goa(const QuestGraph& graph, int question_event, int answer);

struct QuestionPair {
  int question;  // event node
  int answer;    // goal node or the event that initiated it
  std::string question_text;
  std::string answer_text;
  Goodness predicted = Goodness::kPoor;
};

// Why-questions about every frame's final step, each paired with every goal
// node and every event that initiates a goal, self-pairs skipped. Phrasing
// comes from the templates when given and from step labels otherwise.
std::vector<QuestionPair> emit_questionnaire(const QuestGraph& graph, const Plan& plan,
                                             const TemplateSet* templates = nullptr);

std::string quest_to_json(const QuestGraph& graph);
std::string questionnaire_to_text(const std::vector<QuestionPair>& pairs);
std::string questionnaire_to_csv(const std::vector<QuestionPair>& pairs);
std::string questionnaire_to_json(const std::vector<QuestionPair>& pairs);

}  // namespace fabula
