#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fabula/core/literal.hpp"

namespace fabula {

// Codesignation and non-codesignation constraints over plan variables.
// Values are symbols, nested literals (for literal-valued parameters), or
// other variables.
class Bindings {
 public:
  bool empty() const { return codesignations_.empty() && non_codesignations_.empty(); }

  // Follows variable chains; leaves unbound variables and ground terms as is.
  // Nested literals come back with bindings applied.
  Term resolve(const Term& term) const;
  Literal apply(const Literal& literal) const;

  // Records `var = value` without any checking. Prefer unify().
  void assign(SymbolId var, Term value);
  // Records that `a` and `b` must never denote the same value.
  void forbid(Term a, Term b);

  bool consistent() const;

  const std::vector<std::pair<SymbolId, Term>>& codesignations() const { return codesignations_; }
  const std::vector<std::pair<Term, Term>>& non_codesignations() const {
    return non_codesignations_;
  }

  friend bool operator==(const Bindings& a, const Bindings& b) {
    return a.codesignations_ == b.codesignations_ && a.non_codesignations_ == b.non_codesignations_;
  }

 private:
  const Term* lookup(SymbolId var) const;

  std::vector<std::pair<SymbolId, Term>> codesignations_;  // sorted by variable
  std::vector<std::pair<Term, Term>> non_codesignations_;
};

// Most general extension of `bindings` that makes `a` and `b` identical, or
// nullopt. Predicate, polarity and arity must agree.
std::optional<Bindings> unify(const Literal& a, const Literal& b, const Bindings& bindings);

// Unification of a literal against the negation of another.
std::optional<Bindings> unify_negated(const Literal& a, const Literal& b, const Bindings& bindings);

bool unify_terms(const Term& a, const Term& b, Bindings& bindings);

}  // namespace fabula
