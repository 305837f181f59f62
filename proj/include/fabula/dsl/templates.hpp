#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fabula/core/literal.hpp"
#include "fabula/dsl/domain.hpp"
#include "fabula/dsl/sexpr.hpp"

namespace fabula {

// A sentence fragment that depends on how a step is supported or used.
//   (before LIT "text")  emitted before the step when LIT is a precondition
//                        supported by the initial state
//   (after LIT "text")   emitted after the step when LIT is an effect that
//                        supports a later ordinary step
struct EventPart {
  bool before = true;
  Literal literal;
  std::string text;
};

struct EventTemplate {
  std::string schema;
  std::vector<Term> args;  // one pattern per schema parameter
  std::string text;
  std::vector<EventPart> parts;
};

// Question or answer phrasing for a step, matched like an event template.
struct StepPhrase {
  std::string schema;
  std::vector<Term> args;
  std::string text;
};

struct GoalClause {
  Literal pattern;
  std::string text;
  std::vector<SymbolId> mentions;  // variables to introduce first, in order
};

struct CharacterGoalPhrase {
  Term who;
  Literal pattern;
  std::string text;
};

struct PreambleItem {
  std::optional<SymbolId> introduce;  // else a fixed sentence
  std::string text;
};

// Everything needed to tell a plan as prose. File form:
//
//   (templates NAME
//     (name SYM "Display Name") ...
//     (introduce SYM "There is ...") ...
//     (opening "This is a story about how" "This is also a story about how")
//     (goal PATTERN "clause" :mentions (?v ...))
//     (outcome PATTERN "sentence")
//     (closing "The end.")
//     (intention ?who PATTERN "sentence")
//     (preamble (introduce SYM) "sentence" ...)
//     (event SCHEMA (ARG ...) "sentence" (before LIT "text") (after LIT "text"))
//     (question SCHEMA (ARG ...) "Why did ...?")
//     (answer SCHEMA (ARG ...) "clause")
//     (goal-answer ?who PATTERN "clause"))
//
// ARG is a variable, a symbol, or a literal pattern for literal-valued
// parameters. Entries of one kind are tried in file order.
struct TemplateSet {
  std::string name;
  std::map<SymbolId, std::string> names;
  std::map<SymbolId, std::string> introductions;
  std::string opening_first = "This is a story about how";
  std::string opening_more = "This is also a story about how";
  std::vector<GoalClause> goals;
  std::vector<GoalClause> outcomes;
  std::string closing;
  std::vector<CharacterGoalPhrase> intentions;
  std::vector<PreambleItem> preamble;
  std::vector<EventTemplate> events;
  std::vector<StepPhrase> questions;
  std::vector<StepPhrase> answers;
  std::vector<CharacterGoalPhrase> goal_answers;

  // Display form of a symbol.
  std::string display(SymbolId symbol) const;
};

TemplateSet parse_templates(std::string_view text);
TemplateSet load_templates(const std::string& path);

// Schemata of `domain` that have no event template.
std::vector<std::string> missing_event_templates(const TemplateSet& templates, const DomainTheory& domain);

// One-way match of a pattern against a ground term or literal, extending
// `binding`. Variables in the pattern bind to anything; symbols must agree.
using PatternBinding = std::map<SymbolId, Term>;
bool match_term(const Term& pattern, const Term& value, PatternBinding& binding);
bool match_literal(const Literal& pattern, const Literal& value, PatternBinding& binding);

// Fills `{?var}` placeholders. Symbols print through the display names,
// literals in canonical form. Unbound placeholders are an error.
std::string fill(const std::string& text, const PatternBinding& binding, const TemplateSet& templates);

// Symbols named by the placeholders of `text`, in order of appearance.
std::vector<SymbolId> mentioned(const std::string& text, const PatternBinding& binding);

}  // namespace fabula
