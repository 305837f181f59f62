#pragma once

// Random micro-domains: at most 5 schemata over at most 6 symbols, small
// enough for exhaustive search yet with happenings and intentions in play.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fabula::test {

struct MicroCase {
  std::string domain;
  std::string problem;
};

inline MicroCase generate_micro(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  auto coin = [&](int percent) { return pick(100) < percent; };

  const int characters = 2 + pick(2);
  const std::vector<std::string> preds = {"calm", "rich", "free"};
  std::vector<std::string> chars;
  for (int c = 0; c < characters; ++c) chars.push_back("c" + std::to_string(c));

  auto var_literal = [&](const std::vector<std::string>& vars, bool allow_negative) {
    std::string lit = "(" + preds[pick(3)] + " " + vars[pick(static_cast<int>(vars.size()))] + ")";
    return allow_negative && coin(35) ? "(not " + lit + ")" : lit;
  };

  std::string domain = "(domain micro" + std::to_string(seed) + "\n";
  const int schemata = 2 + pick(3);
  for (int k = 0; k < schemata; ++k) {
    const bool two = coin(60);
    std::vector<std::string> vars = two ? std::vector<std::string>{"?x", "?y"} : std::vector<std::string>{"?x"};
    const bool happening = coin(25);
    std::string params = two ? "?x ?y" : "?x";
    std::string actors = two && !happening && coin(30) ? "?x ?y" : "?x";
    std::string cons = two ? "(character ?x) (character ?y)" : "(character ?x)";
    std::string pre = two ? "(neq ?x ?y)" : "";
    for (int i = pick(3); i > 0; --i) pre += " " + var_literal(vars, true);
    std::string eff;
    std::vector<std::string> chosen;
    for (int i = 1 + pick(2); i > 0; --i) {
      std::string lit = var_literal(vars, true);
      std::string opposite = lit.rfind("(not ", 0) == 0 ? lit.substr(5, lit.size() - 6) : "(not " + lit + ")";
      if (std::find(chosen.begin(), chosen.end(), opposite) != chosen.end()) continue;
      chosen.push_back(lit);
      eff += " " + lit;
    }
    if (happening || coin(15)) {
      // someone comes to want something
      std::string who = vars[pick(static_cast<int>(vars.size()))];
      eff += " (intends " + who + " " + var_literal(vars, true) + ")";
    }
    domain += "  (action a" + std::to_string(k) + " :parameters (" + params + ") :actors (" + actors + ")" +
              (happening ? " :happening t" : "") + " :constraints (" + cons + ") :precondition (" + pre +
              ") :effect (" + eff + "))\n";
  }
  domain += ")\n";

  std::string init;
  for (const auto& c : chars) {
    init += " (character " + c + ")";
    for (const auto& p : preds) {
      if (coin(40)) init += " (" + p + " " + c + ")";
    }
  }
  std::string goal;
  const int goals = 1 + pick(2);
  for (int g = 0; g < goals; ++g) {
    std::string lit = "(" + preds[pick(3)] + " " + chars[pick(characters)] + ")";
    if (coin(35)) lit = "(not " + lit + ")";
    goal += " " + lit;
    if (coin(50)) init += " (intends " + chars[pick(characters)] + " " + lit + ")";
  }
  std::string agents;
  for (const auto& c : chars) agents += " " + c;
  std::string problem = "(problem p" + std::to_string(seed) + " :domain micro" + std::to_string(seed) + " :agents (" +
                        agents + ") :init (" + init + ") :goal (" + goal + "))\n";
  return {domain, problem};
}

}  // namespace fabula::test
