#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fabula/core/bindings.hpp"
#include "fabula/core/literal.hpp"
#include "fabula/core/ordering.hpp"
#include "fabula/core/schema.hpp"

namespace fabula {

using FrameId = std::int32_t;

inline constexpr StepId kInitialStep = 0;
inline constexpr StepId kGoalStep = 1;

enum class StepRole : std::uint8_t { kInitial, kGoal, kOrdinary };

// A schema instance. Entity parameters are ground; literal-valued parameters
// may still be (step-scoped) variables resolved through plan bindings.
struct GroundAction {
  const ActionSchema* schema = nullptr;  // null for the initial and goal steps
  std::vector<Term> args;
  std::vector<SymbolId> actors;
  bool happening = false;
  std::vector<Literal> preconditions;
  std::vector<Literal> effects;
};

struct Step {
  StepId id = 0;
  StepRole role = StepRole::kOrdinary;
  std::shared_ptr<const GroundAction> action;

  const std::vector<Literal>& preconditions() const { return action->preconditions; }
  const std::vector<Literal>& effects() const { return action->effects; }
  const std::vector<SymbolId>& actors() const { return action->actors; }
  bool happening() const { return action->happening; }
  bool ordinary() const { return role == StepRole::kOrdinary; }
  bool has_actor(SymbolId character) const;
  const std::string& name() const;
};

// Source effect index kClosedWorld marks a negative condition supported by
// the initial step's implicit closed-world negation.
inline constexpr int kClosedWorld = -1;

struct CausalLink {
  StepId source = 0;
  int effect = 0;
  StepId sink = 0;
  int condition = 0;

  friend bool operator==(const CausalLink&, const CausalLink&) = default;
};

struct FrameOfCommitment {
  FrameId id = 0;
  SymbolId character = 0;
  std::shared_ptr<const Literal> goal;
  std::vector<StepId> interval;  // sorted
  StepId final_step = 0;
  std::optional<StepId> motivating_step;
  int motivating_effect = -1;

  bool contains(StepId step) const;
  // intends(character, goal)
  Literal motivation_condition() const;
};

enum class FlawKind : std::uint8_t {
  kCausalThreat,
  kIntentionalThreat,
  kOpenMotivation,
  kOpenCondition,
  kIntentFlaw,
};

// Tagged flaw record. Field meaning by kind:
//   open condition      first = step,        second = precondition index
//   causal threat       first = threat step, second = link index
//   open motivation     first = frame id
//   intent flaw         first = step,        second = frame id
//   intentional threat  first = frame id,    second = frame id
struct Flaw {
  FlawKind kind = FlawKind::kOpenCondition;
  std::int32_t first = 0;
  std::int32_t second = 0;
  std::uint32_t seq = 0;  // creation order within the plan lineage

  friend bool operator==(const Flaw&, const Flaw&) = default;
};

// Why a plan node exists, in compact form; rendered by describe_refinement().
struct Refinement {
  enum class Kind : std::uint8_t {
    kInitial,
    kNewStep,
    kReuseStep,
    kPromotion,
    kDemotion,
    kSeparation,
    kAdopt,
    kReject,
    kOrderFrames,
  };
  Kind kind = Kind::kInitial;
  StepId step = -1;
  StepId target = -1;  // sink step, or link index for threat repairs
  int index = -1;      // precondition index
  FrameId frame = 0;   // motivated frame, adopting frame, or first ordered frame
  FrameId other_frame = 0;
};

struct Plan {
  std::vector<std::shared_ptr<const Step>> steps;  // index == step id
  Bindings bindings;
  Ordering ordering;
  std::vector<CausalLink> links;
  std::vector<FrameOfCommitment> frames;  // index == id - 1
  std::vector<Flaw> flaws;
  std::vector<std::pair<StepId, FrameId>> proposed_intent_flaws;
  std::vector<std::pair<FrameId, FrameId>> ordered_frames;  // (earlier, later)
  std::uint32_t next_flaw_seq = 0;
  int depth = 0;
  std::int64_t id = 0;
  std::int64_t parent = -1;
  Refinement reason;

  const Step& step(StepId id) const;
  const FrameOfCommitment& frame(FrameId id) const;
  FrameOfCommitment& frame(FrameId id);
  std::size_t ordinary_step_count() const { return steps.size() - 2; }

  // Literals with plan bindings applied.
  Literal precondition(StepId step, int index) const;
  Literal effect(StepId step, int index) const;
  Literal link_condition(const CausalLink& link) const;
  Literal link_effect(const CausalLink& link) const;
  Literal frame_goal(const FrameOfCommitment& frame) const;

  std::string step_label(StepId id) const;

  void add_flaw(FlawKind kind, std::int32_t first, std::int32_t second = 0);
  bool has_flaw(FlawKind kind, std::int32_t first, std::int32_t second) const;
  bool intent_flaw_proposed(StepId step, FrameId frame) const;
  bool frames_ordered(FrameId a, FrameId b) const;
};

// Ordering acyclic and bindings consistent.
bool consistent(const Plan& plan);

// "marry(jafar, jasmine, castle)" style label; literal args printed as
// s-expressions.
std::string action_label(const GroundAction& action, const Bindings& bindings);

std::string describe_flaw(const Plan& plan, const Flaw& flaw);
std::string describe_refinement(const Plan& plan);

}  // namespace fabula
