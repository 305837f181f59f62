#include "fabula/dsl/templates.hpp"

#include <algorithm>
#include <set>

namespace fabula {

namespace {

const std::string& string_at(const SExpr& form, std::size_t i, const std::string& what) {
  if (i >= form.items.size() || !form.items[i].is_string()) form.fail("expected " + what + " as a quoted string");
  return form.items[i].text;
}

SymbolId symbol_at(const SExpr& form, std::size_t i) {
  if (i >= form.items.size() || !form.items[i].is_atom() || form.items[i].text.front() == '?') {
    form.fail("expected a symbol");
  }
  return intern(form.items[i].text);
}

Term pattern_term(const SExpr& e) {
  if (e.is_list()) return Term::literal(parse_literal(e));
  if (!e.is_atom()) e.fail("expected a variable, symbol or literal pattern");
  if (e.text.front() == '?') return Term::variable(intern(e.text));
  return Term::symbol(intern(e.text));
}

Literal pattern_literal(const SExpr& e) {
  if (!e.is_list()) e.fail("expected a literal pattern");
  return parse_literal(e);
}

// Checks that every placeholder of `text` names a variable the pattern binds.
void check_placeholders(const SExpr& where, const std::string& text, const std::set<SymbolId>& bound) {
  std::size_t pos = 0;
  while ((pos = text.find('{', pos)) != std::string::npos) {
    auto end = text.find('}', pos);
    if (end == std::string::npos) where.fail("unclosed placeholder in \"" + text + "\"");
    std::string var = text.substr(pos + 1, end - pos - 1);
    if (var.empty() || var.front() != '?') where.fail("placeholder {" + var + "} must name a variable");
    if (!bound.contains(intern(var))) where.fail("placeholder {" + var + "} is not bound by the pattern");
    pos = end + 1;
  }
}

void add_variables(const Term& t, std::set<SymbolId>& out) {
  if (t.is_variable()) out.insert(t.id());
  if (t.is_literal()) {
    for (const auto& a : t.nested().args) add_variables(a, out);
  }
}

void add_variables(const Literal& l, std::set<SymbolId>& out) {
  for (const auto& a : l.args) add_variables(a, out);
}

StepPhrase parse_step_phrase(const SExpr& form) {
  if (form.items.size() != 4) form.fail("expected (" + form.items[0].text + " SCHEMA (ARG ...) \"text\")");
  StepPhrase p;
  if (!form.items[1].is_atom()) form.items[1].fail("expected an action name");
  p.schema = form.items[1].text;
  if (!form.items[2].is_list()) form.items[2].fail("expected an argument pattern list");
  std::set<SymbolId> bound;
  for (const auto& a : form.items[2].items) {
    p.args.push_back(pattern_term(a));
    add_variables(p.args.back(), bound);
  }
  p.text = string_at(form, 3, "the phrase");
  check_placeholders(form, p.text, bound);
  return p;
}

CharacterGoalPhrase parse_character_goal(const SExpr& form) {
  if (form.items.size() != 4) form.fail("expected (" + form.items[0].text + " WHO PATTERN \"text\")");
  CharacterGoalPhrase p;
  p.who = pattern_term(form.items[1]);
  p.pattern = pattern_literal(form.items[2]);
  p.text = string_at(form, 3, "the phrase");
  std::set<SymbolId> bound;
  add_variables(p.who, bound);
  add_variables(p.pattern, bound);
  check_placeholders(form, p.text, bound);
  return p;
}

GoalClause parse_goal_clause(const SExpr& form) {
  if (form.items.size() != 3 && form.items.size() != 5) {
    form.fail("expected (" + form.items[0].text + " PATTERN \"text\" [:mentions (?v ...)])");
  }
  GoalClause g;
  g.pattern = pattern_literal(form.items[1]);
  g.text = string_at(form, 2, "the clause");
  std::set<SymbolId> bound;
  add_variables(g.pattern, bound);
  check_placeholders(form, g.text, bound);
  if (form.items.size() == 5) {
    if (!form.items[3].is_atom(":mentions") || !form.items[4].is_list()) form.items[3].fail("expected :mentions (?v ...)");
    for (const auto& v : form.items[4].items) {
      if (!v.is_atom() || v.text.front() != '?' || !bound.contains(intern(v.text))) {
        v.fail(":mentions entries must be pattern variables");
      }
      g.mentions.push_back(intern(v.text));
    }
  }
  return g;
}

EventTemplate parse_event(const SExpr& form) {
  if (form.items.size() < 4) form.fail("expected (event SCHEMA (ARG ...) \"sentence\" PART ...)");
  EventTemplate t;
  if (!form.items[1].is_atom()) form.items[1].fail("expected an action name");
  t.schema = form.items[1].text;
  if (!form.items[2].is_list()) form.items[2].fail("expected an argument pattern list");
  std::set<SymbolId> bound;
  for (const auto& a : form.items[2].items) {
    t.args.push_back(pattern_term(a));
    add_variables(t.args.back(), bound);
  }
  t.text = string_at(form, 3, "the sentence");
  check_placeholders(form, t.text, bound);
  for (std::size_t i = 4; i < form.items.size(); ++i) {
    const SExpr& part = form.items[i];
    if (!part.is_list() || part.items.size() != 3 || !(part.items[0].is_atom("before") || part.items[0].is_atom("after"))) {
      part.fail("expected (before LIT \"text\") or (after LIT \"text\")");
    }
    EventPart p;
    p.before = part.items[0].is_atom("before");
    p.literal = pattern_literal(part.items[1]);
    p.text = string_at(part, 2, "the sentence");
    std::set<SymbolId> part_vars;
    add_variables(p.literal, part_vars);
    for (SymbolId v : part_vars) {
      if (!bound.contains(v)) part.items[1].fail("variable " + symbol_name(v) + " is not an argument of the event");
    }
    check_placeholders(part, p.text, bound);
    t.parts.push_back(std::move(p));
  }
  return t;
}

}  // namespace

std::string TemplateSet::display(SymbolId symbol) const {
  auto it = names.find(symbol);
  return it != names.end() ? it->second : symbol_name(symbol);
}

TemplateSet parse_templates(std::string_view text) {
  auto forms = read_sexprs(text);
  if (forms.size() != 1) throw ParseError("a template file holds exactly one (templates ...) form");
  const SExpr& top = forms[0];
  if (!top.is_list() || top.items.size() < 2 || !top.items[0].is_atom("templates") || !top.items[1].is_atom()) {
    top.fail("expected (templates NAME ...)");
  }
  TemplateSet t;
  t.name = top.items[1].text;
  for (std::size_t i = 2; i < top.items.size(); ++i) {
    const SExpr& form = top.items[i];
    if (!form.is_list() || form.items.empty() || !form.items[0].is_atom()) form.fail("expected a template entry");
    const std::string& kind = form.items[0].text;
    if (kind == "name" || kind == "introduce") {
      if (form.items.size() != 3) form.fail("expected (" + kind + " SYMBOL \"text\")");
      auto& table = kind == "name" ? t.names : t.introductions;
      SymbolId who = symbol_at(form, 1);
      if (table.contains(who)) form.fail("duplicate " + kind + " for " + symbol_name(who));
      table[who] = string_at(form, 2, "the text");
    } else if (kind == "opening") {
      if (form.items.size() != 3) form.fail("expected (opening \"first\" \"more\")");
      t.opening_first = string_at(form, 1, "the first opening");
      t.opening_more = string_at(form, 2, "the later opening");
    } else if (kind == "goal") {
      t.goals.push_back(parse_goal_clause(form));
    } else if (kind == "outcome") {
      t.outcomes.push_back(parse_goal_clause(form));
    } else if (kind == "closing") {
      if (form.items.size() != 2) form.fail("expected (closing \"text\")");
      t.closing = string_at(form, 1, "the closing");
    } else if (kind == "intention") {
      t.intentions.push_back(parse_character_goal(form));
    } else if (kind == "goal-answer") {
      t.goal_answers.push_back(parse_character_goal(form));
    } else if (kind == "preamble") {
      for (std::size_t k = 1; k < form.items.size(); ++k) {
        const SExpr& item = form.items[k];
        PreambleItem p;
        if (item.is_string()) {
          p.text = item.text;
        } else if (item.is_list() && item.items.size() == 2 && item.items[0].is_atom("introduce")) {
          p.introduce = symbol_at(item, 1);
        } else {
          item.fail("preamble items are sentences or (introduce SYMBOL)");
        }
        t.preamble.push_back(std::move(p));
      }
    } else if (kind == "event") {
      t.events.push_back(parse_event(form));
    } else if (kind == "question") {
      t.questions.push_back(parse_step_phrase(form));
    } else if (kind == "answer") {
      t.answers.push_back(parse_step_phrase(form));
    } else {
      form.items[0].fail("unknown template entry `" + kind + "`");
    }
  }
  for (const auto& p : t.preamble) {
    if (p.introduce && !t.introductions.contains(*p.introduce)) {
      throw ParseError("preamble introduces " + symbol_name(*p.introduce) + " which has no introduce entry");
    }
  }
  return t;
}

TemplateSet load_templates(const std::string& path) { return parse_templates(read_file(path)); }

std::vector<std::string> missing_event_templates(const TemplateSet& templates, const DomainTheory& domain) {
  std::vector<std::string> out;
  for (const auto& s : domain.schemata) {
    bool covered = std::any_of(templates.events.begin(), templates.events.end(),
                               [&](const EventTemplate& e) { return e.schema == s.name; });
    if (!covered) out.push_back(s.name);
  }
  return out;
}

bool match_term(const Term& pattern, const Term& value, PatternBinding& binding) {
  if (pattern.is_variable()) {
    auto [it, fresh] = binding.emplace(pattern.id(), value);
    return fresh || it->second == value;
  }
  if (pattern.is_symbol()) return value.is_symbol() && value.id() == pattern.id();
  return value.is_literal() && match_literal(pattern.nested(), value.nested(), binding);
}

bool match_literal(const Literal& pattern, const Literal& value, PatternBinding& binding) {
  if (pattern.predicate != value.predicate || pattern.positive != value.positive ||
      pattern.args.size() != value.args.size()) {
    return false;
  }
  PatternBinding trial = binding;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!match_term(pattern.args[i], value.args[i], trial)) return false;
  }
  binding = std::move(trial);
  return true;
}

std::string fill(const std::string& text, const PatternBinding& binding, const TemplateSet& templates) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    auto open = text.find('{', pos);
    if (open == std::string::npos) break;
    auto close = text.find('}', open);
    if (close == std::string::npos) throw ParseError("unclosed placeholder in \"" + text + "\"");
    out.append(text, pos, open - pos);
    const std::string var = text.substr(open + 1, close - open - 1);
    auto it = binding.find(intern(var));
    if (it == binding.end()) throw ParseError("placeholder {" + var + "} is unbound in \"" + text + "\"");
    out += it->second.is_symbol() ? templates.display(it->second.id()) : to_string(it->second);
    pos = close + 1;
  }
  out.append(text, pos, std::string::npos);
  return out;
}

std::vector<SymbolId> mentioned(const std::string& text, const PatternBinding& binding) {
  std::vector<SymbolId> out;
  std::size_t pos = 0;
  while ((pos = text.find('{', pos)) != std::string::npos) {
    auto close = text.find('}', pos);
    if (close == std::string::npos) break;
    auto it = binding.find(intern(text.substr(pos + 1, close - pos - 1)));
    if (it != binding.end() && it->second.is_symbol() &&
        std::find(out.begin(), out.end(), it->second.id()) == out.end()) {
      out.push_back(it->second.id());
    }
    pos = close + 1;
  }
  return out;
}

}  // namespace fabula
