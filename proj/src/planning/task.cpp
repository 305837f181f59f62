#include "fabula/planning/task.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <unordered_set>

namespace fabula {

namespace {

Term substitute_term(const Term& t, const std::vector<SymbolId>& vars, const std::vector<Term>& values) {
  if (t.is_variable()) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i] == t.id()) return values[i];
    }
    return t;
  }
  if (t.is_literal()) return Term::literal(substitute(t.nested(), vars, values));
  return t;
}

void collect_symbols(const Literal& lit, std::vector<SymbolId>& out, std::unordered_set<SymbolId>& seen) {
  for (const auto& arg : lit.args) {
    if (arg.is_symbol() && seen.insert(arg.id()).second) out.push_back(arg.id());
    if (arg.is_literal()) collect_symbols(arg.nested(), out, seen);
  }
}

}  // namespace

Literal substitute(const Literal& lit, const std::vector<SymbolId>& vars, const std::vector<Term>& values) {
  Literal out = lit;
  for (auto& arg : out.args) arg = substitute_term(arg, vars, values);
  return out;
}

Task::Task(DomainTheory domain, Problem problem)
    : domain_(std::make_shared<const DomainTheory>(std::move(domain))), problem_(std::move(problem)) {
  std::unordered_set<SymbolId> seen;
  for (std::size_t i = 0; i < problem_.initial.size(); ++i) {
    const Literal& lit = problem_.initial[i];
    initial_index_.emplace(lit, static_cast<int>(i));
    collect_symbols(lit, objects_, seen);
  }
  for (SymbolId a : problem_.agents) {
    if (seen.insert(a).second) objects_.push_back(a);
  }

  auto init = std::make_shared<GroundAction>();
  init->effects = problem_.initial;
  initial_ = init;
  auto goal = std::make_shared<GroundAction>();
  goal->preconditions = problem_.goal;
  goal_ = goal;

  groundings_.resize(domain_->schemata.size());
  for (std::size_t s = 0; s < domain_->schemata.size(); ++s) ground_schema(static_cast<int>(s));
}

void Task::ground_schema(int index) {
  const ActionSchema& schema = domain_->schemata[static_cast<std::size_t>(index)];
  std::vector<int> entity;  // positions of enumerated params
  for (std::size_t i = 0; i < schema.params.size(); ++i) {
    if (!schema.is_literal_param(schema.params[i])) entity.push_back(static_cast<int>(i));
  }
  std::vector<Term> values(schema.params.size());
  for (std::size_t i = 0; i < schema.params.size(); ++i) values[i] = Term::variable(schema.params[i]);
  std::vector<bool> bound(schema.params.size(), false);

  auto ready = [&](const Literal& lit) {
    std::vector<SymbolId> vars;
    collect_variables(lit, vars);
    return std::all_of(vars.begin(), vars.end(), [&](SymbolId v) {
      int p = schema.param_index(v);
      return p >= 0 && bound[static_cast<std::size_t>(p)];
    });
  };
  // Checks only the constraints and inequalities that involve param `just`.
  auto admissible = [&](int just) {
    SymbolId var = schema.params[static_cast<std::size_t>(just)];
    for (const auto& c : schema.constraints) {
      std::vector<SymbolId> vars;
      collect_variables(c, vars);
      if (std::find(vars.begin(), vars.end(), var) == vars.end() || !ready(c)) continue;
      if (!initially(substitute(c, schema.params, values))) return false;
    }
    for (const auto& [a, b] : schema.inequalities) {
      if (a != var && b != var) continue;
      int pa = schema.param_index(a);
      int pb = schema.param_index(b);
      if (!bound[static_cast<std::size_t>(pa)] || !bound[static_cast<std::size_t>(pb)]) continue;
      if (values[static_cast<std::size_t>(pa)] == values[static_cast<std::size_t>(pb)]) return false;
    }
    return true;
  };

  auto& out = groundings_[static_cast<std::size_t>(index)];
  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == entity.size()) {
      auto action = std::make_shared<GroundAction>();
      action->schema = &schema;
      action->args = values;
      action->happening = schema.happening;
      for (SymbolId actor : schema.actors) {
        action->actors.push_back(values[static_cast<std::size_t>(schema.param_index(actor))].id());
      }
      for (const auto& p : schema.precondition) action->preconditions.push_back(substitute(p, schema.params, values));
      for (const auto& e : schema.effect) action->effects.push_back(substitute(e, schema.params, values));
      // an action that would both add and delete a fact is not legal
      for (std::size_t i = 0; i < action->effects.size(); ++i) {
        for (std::size_t j = i + 1; j < action->effects.size(); ++j) {
          if (action->effects[i].is_ground() && action->effects[j] == action->effects[i].negated()) return;
        }
      }
      int g = static_cast<int>(out.size());
      for (std::size_t e = 0; e < action->effects.size(); ++e) {
        const Literal& eff = action->effects[e];
        Establisher est{index, g, static_cast<int>(e)};
        if (eff.is_ground()) {
          ground_effects_[eff].push_back(est);
        } else {
          lifted_effects_[eff.predicate].push_back(est);
        }
      }
      out.push_back(std::move(action));
      return;
    }
    auto p = static_cast<std::size_t>(entity[depth]);
    bound[p] = true;
    for (SymbolId obj : objects_) {
      values[p] = Term::symbol(obj);
      if (admissible(static_cast<int>(p))) extend(depth + 1);
    }
    values[p] = Term::variable(schema.params[p]);
    bound[p] = false;
  };
  extend(0);
}

bool Task::initially(const Literal& ground) const {
  if (ground.positive) return initial_index_.contains(ground);
  return !initial_index_.contains(ground.negated());
}

int Task::initial_index(const Literal& positive_ground) const {
  auto it = initial_index_.find(positive_ground);
  return it == initial_index_.end() ? -1 : it->second;
}

std::vector<Establisher> Task::establishers(const Literal& condition) const {
  std::vector<Establisher> out;
  if (condition.is_ground()) {
    auto it = ground_effects_.find(condition);
    if (it != ground_effects_.end()) out = it->second;
  } else {
    for (const auto& [lit, ests] : ground_effects_) {
      if (lit.predicate == condition.predicate && lit.positive == condition.positive) {
        out.insert(out.end(), ests.begin(), ests.end());
      }
    }
  }
  auto it = lifted_effects_.find(condition.predicate);
  if (it != lifted_effects_.end()) {
    for (const auto& est : it->second) {
      const auto& eff = groundings_[static_cast<std::size_t>(est.schema)][static_cast<std::size_t>(est.grounding)]
                            ->effects[static_cast<std::size_t>(est.effect)];
      if (eff.positive == condition.positive) out.push_back(est);
    }
  }
  std::sort(out.begin(), out.end(), [](const Establisher& a, const Establisher& b) {
    return std::tie(a.schema, a.grounding, a.effect) < std::tie(b.schema, b.grounding, b.effect);
  });
  return out;
}

std::shared_ptr<const GroundAction> Task::instantiate(int schema, int grounding, StepId id) const {
  const auto& base = groundings_[static_cast<std::size_t>(schema)][static_cast<std::size_t>(grounding)];
  const ActionSchema& s = *base->schema;
  if (s.literal_params.empty()) return base;
  std::vector<SymbolId> vars;
  std::vector<Term> fresh;
  for (SymbolId v : s.literal_params) {
    vars.push_back(v);
    fresh.push_back(Term::variable(intern(symbol_name(v) + "#" + std::to_string(id))));
  }
  auto action = std::make_shared<GroundAction>(*base);
  for (auto& arg : action->args) {
    if (arg.is_variable()) arg = substitute_term(arg, vars, fresh);
  }
  for (auto& p : action->preconditions) p = substitute(p, vars, fresh);
  for (auto& e : action->effects) e = substitute(e, vars, fresh);
  return action;
}

}  // namespace fabula
