#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fabula/symbol.hpp"

namespace fabula {

struct Literal;

// A literal argument: a ground symbol, a `?variable`, or (only as the second
// argument of `intends`) a nested literal.
class Term {
 public:
  enum class Kind : std::uint8_t { kSymbol, kVariable, kLiteral };

  Term() = default;

  static Term symbol(SymbolId id) { return Term(Kind::kSymbol, id); }
  static Term symbol(std::string_view name) { return symbol(intern(name)); }
  static Term variable(SymbolId id) { return Term(Kind::kVariable, id); }
  static Term variable(std::string_view name);
  static Term literal(Literal lit);

  Kind kind() const { return kind_; }
  bool is_symbol() const { return kind_ == Kind::kSymbol; }
  bool is_variable() const { return kind_ == Kind::kVariable; }
  bool is_literal() const { return kind_ == Kind::kLiteral; }

  // Symbol or variable name id. Meaningless for nested literals.
  SymbolId id() const { return id_; }
  const Literal& nested() const { return *nested_; }

  bool is_ground() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b);

 private:
  Term(Kind kind, SymbolId id) : kind_(kind), id_(id) {}

  Kind kind_ = Kind::kSymbol;
  SymbolId id_ = 0;
  std::shared_ptr<const Literal> nested_;
};

struct Literal {
  SymbolId predicate = 0;
  bool positive = true;
  std::vector<Term> args;

  Literal() = default;
  Literal(SymbolId pred, std::vector<Term> arguments, bool is_positive = true)
      : predicate(pred), positive(is_positive), args(std::move(arguments)) {}

  bool is_ground() const;
  bool is_intends() const;
  Literal negated() const;

  friend bool operator==(const Literal& a, const Literal& b);
  friend bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }
  friend bool operator<(const Literal& a, const Literal& b);
};

SymbolId intends_predicate();

// Canonical s-expression form: `(pred a b)`, `(not (pred a))`,
// `(intends agent (pred ...))`.
std::string to_string(const Term& term);
std::string to_string(const Literal& literal);

// Builds `(intends character goal)`.
Literal make_intends(SymbolId character, const Literal& goal);

// Collects every variable occurring in the literal, nested literals included.
void collect_variables(const Literal& literal, std::vector<SymbolId>& out);

struct LiteralHash {
  std::size_t operator()(const Literal& literal) const;
};

}  // namespace fabula
