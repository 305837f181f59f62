#include "fabula/dsl/rules.hpp"

#include <charconv>

#include "fabula/dsl/domain.hpp"
#include "fabula/dsl/sexpr.hpp"

namespace fabula {

namespace {

std::int64_t parse_int(const SExpr& e, const char* what) {
  if (!e.is_atom()) e.fail(std::string("expected ") + what);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(e.text.data(), e.text.data() + e.text.size(), value);
  if (ec != std::errc() || ptr != e.text.data() + e.text.size()) e.fail(std::string("expected ") + what);
  if (value < 0) e.fail(std::string(what) + " must be non-negative");
  return value;
}

std::vector<std::pair<SymbolId, Literal>> parse_pairs(const SExpr& form, std::size_t from) {
  std::vector<std::pair<SymbolId, Literal>> out;
  for (std::size_t i = from; i < form.items.size(); ++i) {
    const SExpr& entry = form.items[i];
    if (!entry.is_list() || entry.items.size() < 2 || !entry.items[0].is_atom()) {
      entry.fail("expected (character goal ...)");
    }
    SymbolId who = intern(entry.items[0].text);
    for (std::size_t j = 1; j < entry.items.size(); ++j) {
      Literal goal = parse_literal(entry.items[j]);
      if (!goal.is_ground()) entry.items[j].fail("listed goals must be ground");
      out.emplace_back(who, std::move(goal));
    }
  }
  return out;
}

Rule parse_rule(const SExpr& form) {
  if (!form.is_list() || form.items.size() < 3 || !form.items[0].is_atom("penalty") || !form.items[1].is_atom()) {
    form.fail("expected (penalty KIND WEIGHT ...)");
  }
  const std::string& kind = form.items[1].text;
  std::int64_t weight = parse_int(form.items[2], "weight");
  if (kind == "repeat-action") {
    if (form.items.size() != 3) form.fail("repeat-action takes only a weight");
    return RepeatActionRule{weight};
  }
  if (kind == "frame-allowlist") return FrameAllowlistRule{weight, parse_pairs(form, 3)};
  if (kind == "frame-denylist") return FrameDenylistRule{weight, parse_pairs(form, 3)};
  if (kind == "action-frame-count") {
    if (form.items.size() != 5 || !form.items[3].is_atom()) form.fail("expected (penalty action-frame-count W ACTION N)");
    return ActionFrameCountRule{weight, form.items[3].text, static_cast<int>(parse_int(form.items[4], "frame count"))};
  }
  form.items[1].fail("unknown rule kind " + kind);
}

std::string print_pairs(const std::vector<std::pair<SymbolId, Literal>>& pairs) {
  std::string out;
  for (const auto& [who, goal] : pairs) out += "\n  (" + symbol_name(who) + " " + to_string(goal) + ")";
  return out;
}

}  // namespace

RuleSet parse_heuristic_rules(std::string_view text) {
  RuleSet set;
  for (const auto& form : read_sexprs(text)) {
    if (form.is_list() && !form.items.empty() && form.items[0].is_atom("rules")) {
      for (std::size_t i = 2; i < form.items.size(); ++i) set.rules.push_back(parse_rule(form.items[i]));
    } else {
      set.rules.push_back(parse_rule(form));
    }
  }
  return set;
}

std::string print_rules(const RuleSet& rules) {
  std::string out;
  for (const auto& rule : rules.rules) {
    if (const auto* r = std::get_if<RepeatActionRule>(&rule)) {
      out += "(penalty repeat-action " + std::to_string(r->weight) + ")\n";
    } else if (const auto* r = std::get_if<FrameAllowlistRule>(&rule)) {
      out += "(penalty frame-allowlist " + std::to_string(r->weight) + print_pairs(r->allowed) + ")\n";
    } else if (const auto* r = std::get_if<FrameDenylistRule>(&rule)) {
      out += "(penalty frame-denylist " + std::to_string(r->weight) + print_pairs(r->denied) + ")\n";
    } else if (const auto* r = std::get_if<ActionFrameCountRule>(&rule)) {
      out += "(penalty action-frame-count " + std::to_string(r->weight) + " " + r->action + " " +
             std::to_string(r->frames) + ")\n";
    }
  }
  return out;
}

RuleSet load_rules(const std::string& path) { return parse_heuristic_rules(read_file(path)); }

}  // namespace fabula
