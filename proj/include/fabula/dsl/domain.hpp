#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fabula/core/literal.hpp"
#include "fabula/core/schema.hpp"
#include "fabula/dsl/sexpr.hpp"

namespace fabula {

struct DomainTheory {
  std::string name;
  std::vector<ActionSchema> schemata;

  const ActionSchema* find(std::string_view schema_name) const;

  friend bool operator==(const DomainTheory&, const DomainTheory&) = default;
};

struct Problem {
  std::string name;
  std::string domain;  // may be empty
  std::vector<SymbolId> agents;
  std::vector<Literal> initial;  // positive and ground
  std::vector<Literal> goal;     // ground

  friend bool operator==(const Problem&, const Problem&) = default;
};

// Literal syntax shared by every file kind: `(pred a ?b)`, `(not (pred ...))`,
// `(intends agent (pred ...))`.
Literal parse_literal(const SExpr& expr);

DomainTheory parse_domain(std::string_view text);
Problem parse_problem(std::string_view text);

std::string print_domain(const DomainTheory& domain);
std::string print_problem(const Problem& problem);

DomainTheory load_domain(const std::string& path);
Problem load_problem(const std::string& path);

}  // namespace fabula
