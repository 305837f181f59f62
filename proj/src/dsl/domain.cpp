#include "fabula/dsl/domain.hpp"

#include <algorithm>
#include <set>

namespace fabula {

const ActionSchema* DomainTheory::find(std::string_view schema_name) const {
  for (const auto& s : schemata) {
    if (s.name == schema_name) return &s;
  }
  return nullptr;
}

namespace {

Term parse_term(const SExpr& e) {
  if (!e.is_atom()) e.fail("expected a symbol or variable");
  if (e.text.front() == '?') {
    if (e.text.size() == 1) e.fail("empty variable name");
    return Term::variable(intern(e.text));
  }
  return Term::symbol(intern(e.text));
}

Literal parse_literal_at(const SExpr& e, bool allow_nested) {
  if (!e.is_list() || e.items.empty()) e.fail("expected a literal");
  if (e.items[0].is_atom("not")) {
    if (e.items.size() != 2) e.fail("`not` takes exactly one literal");
    Literal inner = parse_literal_at(e.items[1], allow_nested);
    if (!inner.positive) e.items[1].fail("double negation");
    return inner.negated();
  }
  if (!e.items[0].is_atom()) e.items[0].fail("expected a predicate name");
  const std::string& pred = e.items[0].text;
  if (pred.front() == '?') e.items[0].fail("predicate cannot be a variable");
  Literal lit;
  lit.predicate = intern(pred);
  bool intends = pred == "intends";
  if (intends && e.items.size() != 3) e.fail("`intends` takes an agent and a goal");
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& arg = e.items[i];
    if (arg.is_list()) {
      if (!intends || i != 2 || !allow_nested) arg.fail("nested literal allowed only as the goal of `intends`");
      lit.args.push_back(Term::literal(parse_literal_at(arg, false)));
    } else {
      lit.args.push_back(parse_term(arg));
    }
  }
  return lit;
}

std::vector<SymbolId> parse_variables(const SExpr& e, const std::string& slot) {
  if (!e.is_list()) e.fail(slot + " expects a list");
  std::vector<SymbolId> out;
  for (const auto& item : e.items) {
    if (!item.is_atom() || item.text.size() < 2 || item.text.front() != '?') {
      item.fail(slot + " entries must be variables");
    }
    SymbolId id = intern(item.text);
    if (std::find(out.begin(), out.end(), id) != out.end()) item.fail("duplicate variable " + item.text);
    out.push_back(id);
  }
  return out;
}

std::vector<Literal> parse_literals(const SExpr& e, const std::string& slot) {
  if (!e.is_list()) e.fail(slot + " expects a list of literals");
  std::vector<Literal> out;
  for (const auto& item : e.items) out.push_back(parse_literal(item));
  return out;
}

// Keyword arguments `:key value` following `skip` leading items.
std::vector<std::pair<const SExpr*, const SExpr*>> keyword_pairs(const SExpr& form, std::size_t skip) {
  std::vector<std::pair<const SExpr*, const SExpr*>> out;
  for (std::size_t i = skip; i < form.items.size(); i += 2) {
    const SExpr& key = form.items[i];
    if (!key.is_atom() || key.text.empty() || key.text.front() != ':') key.fail("expected a :keyword");
    if (i + 1 >= form.items.size()) key.fail("missing value for " + key.text);
    out.emplace_back(&key, &form.items[i + 1]);
  }
  return out;
}

void add_symbols(const Literal& lit, std::set<SymbolId>& out) {
  for (const auto& arg : lit.args) {
    if (arg.is_symbol()) out.insert(arg.id());
    if (arg.is_literal()) add_symbols(arg.nested(), out);
  }
}

[[noreturn]] void schema_error(const ActionSchema& s, const SExpr& at, const std::string& message) {
  at.fail("action " + s.name + ": " + message);
}

void check_vars(const ActionSchema& s, const SExpr& at, const Literal& lit) {
  std::vector<SymbolId> vars;
  collect_variables(lit, vars);
  for (SymbolId v : vars) {
    if (s.param_index(v) < 0) schema_error(s, at, "variable " + symbol_name(v) + " is not a parameter");
  }
}

ActionSchema parse_action(const SExpr& form) {
  if (form.items.size() < 2 || !form.items[1].is_atom()) form.fail("action needs a name");
  ActionSchema s;
  s.name = form.items[1].text;
  bool saw_actors = false;
  std::set<std::string> seen;
  for (auto [key, value] : keyword_pairs(form, 2)) {
    if (!seen.insert(key->text).second) schema_error(s, *key, "duplicate slot " + key->text);
    if (key->text == ":parameters") {
      s.params = parse_variables(*value, ":parameters");
    } else if (key->text == ":literal-params") {
      s.literal_params = parse_variables(*value, ":literal-params");
    } else if (key->text == ":actors") {
      s.actors = parse_variables(*value, ":actors");
      saw_actors = true;
    } else if (key->text == ":happening") {
      if (value->is_atom("t")) {
        s.happening = true;
      } else if (value->is_atom("nil")) {
        s.happening = false;
      } else {
        schema_error(s, *value, ":happening expects t or nil");
      }
    } else if (key->text == ":constraints") {
      s.constraints = parse_literals(*value, ":constraints");
      for (const auto& c : s.constraints) {
        if (c.is_intends()) schema_error(s, *value, "`intends` is not allowed in constraints");
      }
    } else if (key->text == ":precondition") {
      if (!value->is_list()) schema_error(s, *value, ":precondition expects a list");
      for (const auto& item : value->items) {
        if (item.is_list() && !item.items.empty() && item.items[0].is_atom("neq")) {
          if (item.items.size() != 3) schema_error(s, item, "`neq` takes two variables");
          auto a = parse_term(item.items[1]);
          auto b = parse_term(item.items[2]);
          if (!a.is_variable() || !b.is_variable()) schema_error(s, item, "`neq` takes two variables");
          s.inequalities.emplace_back(a.id(), b.id());
          continue;
        }
        Literal lit = parse_literal(item);
        if (lit.is_intends()) schema_error(s, item, "`intends` is not allowed in preconditions");
        s.precondition.push_back(std::move(lit));
      }
    } else if (key->text == ":effect") {
      s.effect = parse_literals(*value, ":effect");
    } else {
      schema_error(s, *key, "unknown slot " + key->text);
    }
  }
  // Slots may come in any order, so variable checks wait until the end.
  for (const auto* group : {&s.constraints, &s.precondition, &s.effect}) {
    for (const auto& lit : *group) check_vars(s, form, lit);
  }
  for (std::size_t i = 0; i < s.effect.size(); ++i) {
    for (std::size_t j = i + 1; j < s.effect.size(); ++j) {
      if (s.effect[j] == s.effect[i].negated()) {
        schema_error(s, form, "effects " + to_string(s.effect[i]) + " and " + to_string(s.effect[j]) + " contradict");
      }
    }
  }
  for (const auto& [a, b] : s.inequalities) {
    if (s.param_index(a) < 0 || s.param_index(b) < 0) schema_error(s, form, "`neq` names a non-parameter");
  }
  for (SymbolId v : s.literal_params) {
    if (s.param_index(v) < 0) schema_error(s, form, "literal parameter " + symbol_name(v) + " is not a parameter");
  }
  for (SymbolId v : s.actors) {
    if (s.param_index(v) < 0) schema_error(s, form, "actor " + symbol_name(v) + " is not a parameter");
    if (s.is_literal_param(v)) schema_error(s, form, "actor " + symbol_name(v) + " is literal-valued");
  }
  if (!saw_actors && !s.happening) schema_error(s, form, "missing :actors (only happenings may omit them)");
  return s;
}

void print_vars(std::string& out, const std::vector<SymbolId>& vars) {
  out += '(';
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i > 0) out += ' ';
    out += symbol_name(vars[i]);
  }
  out += ')';
}

void print_literals(std::string& out, const std::vector<Literal>& lits, const std::string& indent) {
  out += '(';
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i > 0) out += "\n" + indent;
    out += to_string(lits[i]);
  }
  out += ')';
}

}  // namespace

Literal parse_literal(const SExpr& expr) { return parse_literal_at(expr, true); }

DomainTheory parse_domain(std::string_view text) {
  auto forms = read_sexprs(text);
  if (forms.empty()) throw ParseError("empty domain");
  if (forms.size() != 1) forms[1].fail("expected a single (domain ...) form");
  const SExpr& top = forms[0];
  if (!top.is_list() || top.items.size() < 2 || !top.items[0].is_atom("domain") || !top.items[1].is_atom()) {
    top.fail("expected (domain NAME ...)");
  }
  DomainTheory d;
  d.name = top.items[1].text;
  for (std::size_t i = 2; i < top.items.size(); ++i) {
    const SExpr& form = top.items[i];
    if (!form.is_list() || form.items.empty() || !form.items[0].is_atom("action")) {
      form.fail("expected (action ...)");
    }
    ActionSchema s = parse_action(form);
    if (d.find(s.name) != nullptr) form.fail("duplicate action " + s.name);
    d.schemata.push_back(std::move(s));
  }
  if (d.schemata.empty()) top.fail("empty domain: no actions");
  return d;
}

Problem parse_problem(std::string_view text) {
  auto forms = read_sexprs(text);
  if (forms.empty()) throw ParseError("empty problem");
  if (forms.size() != 1) forms[1].fail("expected a single (problem ...) form");
  const SExpr& top = forms[0];
  if (!top.is_list() || top.items.size() < 2 || !top.items[0].is_atom("problem") || !top.items[1].is_atom()) {
    top.fail("expected (problem NAME ...)");
  }
  Problem p;
  p.name = top.items[1].text;
  const SExpr* goal_form = &top;
  for (auto [key, value] : keyword_pairs(top, 2)) {
    if (key->text == ":domain") {
      if (!value->is_atom()) value->fail(":domain expects a name");
      p.domain = value->text;
    } else if (key->text == ":agents") {
      if (!value->is_list()) value->fail(":agents expects a list");
      for (const auto& a : value->items) {
        Term t = parse_term(a);
        if (!t.is_symbol()) a.fail("agents must be symbols");
        p.agents.push_back(t.id());
      }
    } else if (key->text == ":init") {
      p.initial = parse_literals(*value, ":init");
      for (std::size_t i = 0; i < p.initial.size(); ++i) {
        const auto& lit = p.initial[i];
        if (!lit.positive) value->items[i].fail("initial state literals must be positive (closed world)");
        if (!lit.is_ground()) value->items[i].fail("initial state literals must be ground");
      }
    } else if (key->text == ":goal") {
      goal_form = value;
      p.goal = parse_literals(*value, ":goal");
      for (std::size_t i = 0; i < p.goal.size(); ++i) {
        if (!p.goal[i].is_ground()) value->items[i].fail("goal literals must be ground");
      }
    } else {
      key->fail("unknown problem slot " + key->text);
    }
  }
  std::set<SymbolId> universe;
  for (const auto& lit : p.initial) add_symbols(lit, universe);
  static const SymbolId kCharacter = intern("character");
  for (SymbolId a : p.agents) {
    bool found = std::any_of(p.initial.begin(), p.initial.end(), [&](const Literal& l) {
      return l.predicate == kCharacter && l.args.size() == 1 && l.args[0].is_symbol() && l.args[0].id() == a;
    });
    if (!found) top.fail("agent " + symbol_name(a) + " has no (character ...) literal in :init");
  }
  std::vector<Literal> stack(p.goal.begin(), p.goal.end());
  while (!stack.empty()) {
    Literal lit = std::move(stack.back());
    stack.pop_back();
    for (const auto& arg : lit.args) {
      if (arg.is_literal()) {
        stack.push_back(arg.nested());
      } else if (arg.is_symbol() && !universe.contains(arg.id())) {
        goal_form->fail("goal mentions unknown symbol " + symbol_name(arg.id()));
      }
    }
  }
  return p;
}

std::string print_domain(const DomainTheory& d) {
  std::string out = "(domain " + d.name;
  for (const auto& s : d.schemata) {
    out += "\n  (action " + s.name;
    out += "\n    :parameters ";
    print_vars(out, s.params);
    if (!s.literal_params.empty()) {
      out += "\n    :literal-params ";
      print_vars(out, s.literal_params);
    }
    out += "\n    :actors ";
    print_vars(out, s.actors);
    if (s.happening) out += "\n    :happening t";
    out += "\n    :constraints ";
    print_literals(out, s.constraints, "                  ");
    out += "\n    :precondition ";
    std::vector<std::string> parts;
    for (const auto& l : s.precondition) parts.push_back(to_string(l));
    for (const auto& [a, b] : s.inequalities) parts.push_back("(neq " + symbol_name(a) + " " + symbol_name(b) + ")");
    out += '(';
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) out += "\n                   ";
      out += parts[i];
    }
    out += ')';
    out += "\n    :effect ";
    print_literals(out, s.effect, "             ");
    out += ')';
  }
  out += ")\n";
  return out;
}

std::string print_problem(const Problem& p) {
  std::string out = "(problem " + p.name;
  if (!p.domain.empty()) out += "\n  :domain " + p.domain;
  out += "\n  :agents ";
  out += '(';
  for (std::size_t i = 0; i < p.agents.size(); ++i) {
    if (i > 0) out += ' ';
    out += symbol_name(p.agents[i]);
  }
  out += ')';
  out += "\n  :init ";
  print_literals(out, p.initial, "         ");
  out += "\n  :goal ";
  print_literals(out, p.goal, "         ");
  out += ")\n";
  return out;
}

DomainTheory load_domain(const std::string& path) { return parse_domain(read_file(path)); }
Problem load_problem(const std::string& path) { return parse_problem(read_file(path)); }

}  // namespace fabula
