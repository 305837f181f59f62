#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fabula/core/literal.hpp"

namespace fabula {

// An operator template. `params` and `actors` hold `?variable` ids.
// Literal-valued parameters are never enumerated by the grounder; they are
// bound by unification against an `intends` condition.
struct ActionSchema {
  std::string name;
  std::vector<SymbolId> params;
  std::vector<SymbolId> literal_params;
  std::vector<SymbolId> actors;
  bool happening = false;
  std::vector<Literal> constraints;
  std::vector<Literal> precondition;
  std::vector<Literal> effect;
  // Pairs of parameters that must bind to distinct values.
  std::vector<std::pair<SymbolId, SymbolId>> inequalities;

  bool is_literal_param(SymbolId var) const;
  int param_index(SymbolId var) const;

  friend bool operator==(const ActionSchema&, const ActionSchema&) = default;
};

}  // namespace fabula
