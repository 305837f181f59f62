#pragma once

#include <map>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fabula/core/plan.hpp"
#include "fabula/planning/task.hpp"

namespace fabula {

enum class Algorithm { kPocl, kIpocl };

const char* algorithm_name(Algorithm algorithm);

// Initial and goal steps, init < goal, one open condition per goal literal.
// Goal conditions are pushed last-to-first so the first goal literal is the
// first one popped.
Plan initial_plan(const Task& task);

// Expands `flaw` (which must be pending in `plan`) into every child plan.
// Children never share mutable state with the parent.
std::vector<Plan> refine(const Plan& plan, const Flaw& flaw, const Task& task, Algorithm algorithm);

// --- causal planning -------------------------------------------------------

std::vector<Plan> resolve_open_condition(const Plan& plan, const Flaw& flaw, const Task& task, Algorithm algorithm);

struct ThreatRef {
  StepId step = 0;
  int link = 0;
  friend bool operator==(const ThreatRef&, const ThreatRef&) = default;
};

// True if `step` may fall between the link's endpoints and has an effect
// that can clobber its condition.
bool threatens(const Plan& plan, StepId step, const CausalLink& link);
std::vector<ThreatRef> detect_causal_threats(const Plan& plan);

// Promotion, demotion, then one separation child per new codesignation.
std::vector<Plan> resolve_causal_threat(const Plan& plan, const Flaw& flaw, Algorithm algorithm);

bool pocl_complete(const Plan& plan);

// --- intentional planning --------------------------------------------------

// One child per combination of (effect or nil) choices across the step's
// actors; frames are created for each non-nil choice with an open
// motivation. Happenings yield the plan unchanged. No adoption scanning.
std::vector<Plan> discover_frames(const Plan& plan, StepId s_add);

// Frames that `s_add` could serve, by the causal-link rule or the
// contracted-out rule. Ignores the proposed-intent-flaw record.
std::vector<FrameId> find_adoptable_frames(const Plan& plan, StepId s_add);

// Records an intent flaw for every not-yet-proposed adoptable (step, frame)
// pair in the plan.
void annotate_intent_flaws(Plan& plan);

std::vector<Plan> resolve_open_motivation(const Plan& plan, const Flaw& flaw, const Task& task);
std::vector<Plan> resolve_intent_flaw(const Plan& plan, const Flaw& flaw);

std::vector<std::pair<FrameId, FrameId>> detect_intentional_threats(const Plan& plan);
std::vector<Plan> resolve_intentional_threat(const Plan& plan, const Flaw& flaw);

// Ordinary non-happening steps in no frame interval.
std::vector<StepId> orphans(const Plan& plan);

bool ipocl_complete(const Plan& plan);

// Spots orphans that no sequence of refinements can ever adopt. A step joins
// an interval only through a causal link into a step its character performs,
// directly or through the final step of a frame it motivates, so it is
// enough to know, per character, which (predicate, polarity) pairs appear as
// preconditions of the groundings that character performs. The test is
// conservative: a plan it rejects has no complete descendant.
class OrphanCheck {
 public:
  explicit OrphanCheck(const Task& task);

  // True if some orphan of `plan` can never join a frame.
  bool hopeless(const Plan& plan) const;

 private:
  using Key = std::pair<SymbolId, bool>;  // predicate, polarity
  bool feeds(SymbolId who, const Literal& lit) const;
  bool may_join(const Plan& plan, StepId s) const;

  std::unordered_map<SymbolId, std::set<Key>> needs_;  // preconditions per performer
  // effects of the non-happening groundings a character performs that have
  // an effect with the given key
  std::map<std::pair<SymbolId, Key>, std::set<Key>> yields_;
};

bool complete(const Plan& plan, Algorithm algorithm);

}  // namespace fabula
