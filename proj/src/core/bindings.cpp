#include "fabula/core/bindings.hpp"

#include <algorithm>

namespace fabula {

const Term* Bindings::lookup(SymbolId var) const {
  auto it = std::lower_bound(codesignations_.begin(), codesignations_.end(), var,
                             [](const auto& entry, SymbolId v) { return entry.first < v; });
  if (it == codesignations_.end() || it->first != var) return nullptr;
  return &it->second;
}

Term Bindings::resolve(const Term& term) const {
  if (term.is_literal()) {
    if (term.is_ground() || codesignations_.empty()) return term;
    return Term::literal(apply(term.nested()));
  }
  Term current = term;
  while (current.is_variable()) {
    const Term* next = lookup(current.id());
    if (next == nullptr) return current;
    current = *next;
  }
  if (current.is_literal()) return resolve(current);
  return current;
}

Literal Bindings::apply(const Literal& literal) const {
  if (codesignations_.empty() || literal.is_ground()) return literal;
  Literal out = literal;
  for (auto& arg : out.args) arg = resolve(arg);
  return out;
}

void Bindings::assign(SymbolId var, Term value) {
  auto it = std::lower_bound(codesignations_.begin(), codesignations_.end(), var,
                             [](const auto& entry, SymbolId v) { return entry.first < v; });
  if (it != codesignations_.end() && it->first == var) {
    it->second = std::move(value);
  } else {
    codesignations_.emplace(it, var, std::move(value));
  }
}

void Bindings::forbid(Term a, Term b) {
  std::pair<Term, Term> entry{std::move(a), std::move(b)};
  if (std::find(non_codesignations_.begin(), non_codesignations_.end(), entry) ==
      non_codesignations_.end()) {
    non_codesignations_.push_back(std::move(entry));
  }
}

bool Bindings::consistent() const {
  for (const auto& [a, b] : non_codesignations_) {
    Term ra = resolve(a);
    Term rb = resolve(b);
    if (ra == rb) return false;
  }
  return true;
}

namespace {

bool occurs(SymbolId var, const Term& term, const Bindings& bindings) {
  Term t = bindings.resolve(term);
  if (t.is_variable()) return t.id() == var;
  if (t.is_literal()) {
    for (const auto& arg : t.nested().args) {
      if (occurs(var, arg, bindings)) return true;
    }
  }
  return false;
}

bool unify_args(const Literal& a, const Literal& b, Bindings& bindings) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!unify_terms(a.args[i], b.args[i], bindings)) return false;
  }
  return true;
}

}  // namespace

bool unify_terms(const Term& a, const Term& b, Bindings& bindings) {
  Term ra = bindings.resolve(a);
  Term rb = bindings.resolve(b);
  if (ra == rb) return true;
  if (ra.is_variable()) {
    if (occurs(ra.id(), rb, bindings)) return false;
    bindings.assign(ra.id(), rb);
    return true;
  }
  if (rb.is_variable()) {
    if (occurs(rb.id(), ra, bindings)) return false;
    bindings.assign(rb.id(), ra);
    return true;
  }
  if (ra.is_literal() && rb.is_literal()) {
    const Literal& la = ra.nested();
    const Literal& lb = rb.nested();
    if (la.positive != lb.positive) return false;
    return unify_args(la, lb, bindings);
  }
  return false;
}

std::optional<Bindings> unify(const Literal& a, const Literal& b, const Bindings& bindings) {
  if (a.predicate != b.predicate || a.positive != b.positive || a.args.size() != b.args.size()) {
    return std::nullopt;
  }
  if (a.is_ground() && b.is_ground()) {
    if (a == b) return bindings;
    return std::nullopt;
  }
  Bindings out = bindings;
  if (!unify_args(a, b, out)) return std::nullopt;
  if (!out.consistent()) return std::nullopt;
  return out;
}

std::optional<Bindings> unify_negated(const Literal& a, const Literal& b,
                                      const Bindings& bindings) {
  if (a.predicate != b.predicate || a.positive == b.positive) return std::nullopt;
  if (a.is_ground() && b.is_ground()) {
    if (a.args == b.args) return bindings;
    return std::nullopt;
  }
  Bindings out = bindings;
  if (!unify_args(a, b, out)) return std::nullopt;
  if (!out.consistent()) return std::nullopt;
  return out;
}

}  // namespace fabula
