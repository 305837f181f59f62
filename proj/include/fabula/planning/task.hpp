#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "fabula/core/plan.hpp"
#include "fabula/dsl/domain.hpp"

namespace fabula {

// A (schema, grounding, effect) triple able to establish some condition.
struct Establisher {
  int schema = 0;
  int grounding = 0;
  int effect = 0;
};

// Domain plus problem with everything the engines precompute once: the
// symbol universe, every legal entity grounding of every schema, and an
// effect index for finding establishers.
class Task {
 public:
  Task(DomainTheory domain, Problem problem);

  const DomainTheory& domain() const { return *domain_; }
  const Problem& problem() const { return problem_; }
  const std::vector<SymbolId>& objects() const { return objects_; }

  // Closed-world truth of a ground literal in the initial state.
  bool initially(const Literal& ground) const;
  int initial_index(const Literal& positive_ground) const;  // -1 if absent

  const std::vector<std::shared_ptr<const GroundAction>>& groundings(int schema) const {
    return groundings_[static_cast<std::size_t>(schema)];
  }

  // New-step candidates whose effect may unify with `condition`, in schema,
  // grounding, effect order. Unification still has to be checked by the
  // caller for lifted effects.
  std::vector<Establisher> establishers(const Literal& condition) const;

  // The action a new step with this id performs. Literal-valued parameters
  // are renamed apart as `?name#id`.
  std::shared_ptr<const GroundAction> instantiate(int schema, int grounding, StepId id) const;

  const std::shared_ptr<const GroundAction>& initial_action() const { return initial_; }
  const std::shared_ptr<const GroundAction>& goal_action() const { return goal_; }

 private:
  void ground_schema(int index);

  std::shared_ptr<const DomainTheory> domain_;
  Problem problem_;
  std::vector<SymbolId> objects_;
  std::unordered_map<Literal, int, LiteralHash> initial_index_;
  std::vector<std::vector<std::shared_ptr<const GroundAction>>> groundings_;
  std::unordered_map<Literal, std::vector<Establisher>, LiteralHash> ground_effects_;
  std::unordered_map<SymbolId, std::vector<Establisher>> lifted_effects_;  // by predicate
  std::shared_ptr<const GroundAction> initial_;
  std::shared_ptr<const GroundAction> goal_;
};

// Substitutes `?var` terms (nested literals included) from a parallel
// variable/value list.
Literal substitute(const Literal& lit, const std::vector<SymbolId>& vars, const std::vector<Term>& values);

}  // namespace fabula
