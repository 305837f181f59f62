#include "fabula/quest/quest.hpp"

#include <algorithm>
#include <deque>

#include "fabula/narrate/narrate.hpp"
#include "json.hpp"

namespace fabula {

using nlohmann::json;

const char* quest_arc_name(QuestArcKind kind) {
  switch (kind) {
    case QuestArcKind::kConsequence:
      return "consequence";
    case QuestArcKind::kReason:
      return "reason";
    case QuestArcKind::kInitiate:
      return "initiate";
    case QuestArcKind::kOutcome:
      return "outcome";
    case QuestArcKind::kImplies:
      return "implies";
  }
  return "?";
}

int QuestGraph::event_node(StepId step) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == QuestNodeKind::kEvent && nodes[i].step == step) return static_cast<int>(i);
  }
  return -1;
}

int QuestGraph::goal_node(FrameId frame) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == QuestNodeKind::kGoal && nodes[i].frame == frame) return static_cast<int>(i);
  }
  return -1;
}

QuestGraph plan_to_quest(const Plan& plan, Algorithm algorithm) {
  if (!complete(plan, algorithm)) {
    throw QuestError(std::string("plan is not complete under ") + algorithm_name(algorithm));
  }
  QuestGraph g;
  for (StepId s = 2; s < static_cast<StepId>(plan.steps.size()); ++s) {
    QuestNode n;
    n.kind = QuestNodeKind::kEvent;
    n.step = s;
    n.description = plan.step_label(s);
    g.nodes.push_back(std::move(n));
  }
  for (const auto& c : plan.frames) {
    QuestNode n;
    n.kind = QuestNodeKind::kGoal;
    n.frame = c.id;
    n.character = c.character;
    n.goal = plan.frame_goal(c);
    n.interval = c.interval;
    n.description = symbol_name(c.character) + " intends " + to_string(n.goal);
    g.nodes.push_back(std::move(n));
  }
  auto arc = [&](QuestArcKind kind, int from, int to) {
    QuestArc a{kind, from, to};
    if (from >= 0 && to >= 0 && std::find(g.arcs.begin(), g.arcs.end(), a) == g.arcs.end()) g.arcs.push_back(a);
  };
  for (const auto& l : plan.links) {
    if (plan.step(l.source).ordinary() && plan.step(l.sink).ordinary()) {
      arc(QuestArcKind::kConsequence, g.event_node(l.source), g.event_node(l.sink));
    }
  }
  for (const auto& c : plan.frames) {
    arc(QuestArcKind::kOutcome, g.goal_node(c.id), g.event_node(c.final_step));
    if (c.motivating_step && plan.step(*c.motivating_step).ordinary()) {
      arc(QuestArcKind::kInitiate, g.event_node(*c.motivating_step), g.goal_node(c.id));
    }
  }
  for (const auto& ci : plan.frames) {
    for (const auto& ck : plan.frames) {
      if (ci.id == ck.id) continue;
      bool serves = std::any_of(plan.links.begin(), plan.links.end(), [&](const CausalLink& l) {
        return l.source == ci.final_step && ck.contains(l.sink) && !ci.contains(l.sink);
      });
      if (serves) arc(QuestArcKind::kReason, g.goal_node(ci.id), g.goal_node(ck.id));
    }
  }
  return g;
}

std::vector<int> why_arc_search(const QuestGraph& graph, int event) {
  if (event < 0 || event >= static_cast<int>(graph.nodes.size()) || graph.nodes[event].kind != QuestNodeKind::kEvent) {
    throw QuestError("why-questions are asked about event nodes");
  }
  const StepId step = graph.nodes[event].step;
  std::vector<char> seen(graph.nodes.size(), 0);
  std::deque<int> queue;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& n = graph.nodes[i];
    if (n.kind == QuestNodeKind::kGoal && std::binary_search(n.interval.begin(), n.interval.end(), step)) {
      seen[i] = 1;
      queue.push_back(static_cast<int>(i));
    }
  }
  auto visit = [&](int n) {
    if (!seen[n]) {
      seen[n] = 1;
      queue.push_back(n);
    }
  };
  while (!queue.empty()) {
    int n = queue.front();
    queue.pop_front();
    bool goal = graph.nodes[n].kind == QuestNodeKind::kGoal;
    for (const auto& a : graph.arcs) {
      if (goal && a.kind == QuestArcKind::kReason && a.from == n) visit(a.to);
      if (goal && a.kind == QuestArcKind::kInitiate && a.to == n) visit(a.from);
      if (!goal && a.kind == QuestArcKind::kOutcome && a.to == n) visit(a.from);
    }
  }
  seen[event] = 0;
  std::vector<int> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

Goodness predict_goa(const QuestGraph& graph, int question_event, int answer) {
  auto legal = why_arc_search(graph, question_event);
  return std::binary_search(legal.begin(), legal.end(), answer) ? Goodness::kGood : Goodness::kPoor;
}

namespace {

std::string capitalized(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string node_answer(const QuestGraph& graph, int node, const Plan& plan, const TemplateSet* templates) {
  const auto& n = graph.nodes[node];
  std::optional<std::string> text;
  if (templates) {
    text = n.kind == QuestNodeKind::kEvent ? answer_text(plan, n.step, *templates)
                                           : goal_answer_text(n.character, n.goal, *templates);
  }
  if (!text) text = n.description;
  return "Because " + *text + ".";
}

}  // namespace

std::vector<QuestionPair> emit_questionnaire(const QuestGraph& graph, const Plan& plan, const TemplateSet* templates) {
  std::vector<int> questions;
  std::vector<int> answers;
  for (const auto& n : graph.nodes) {
    if (n.kind != QuestNodeKind::kGoal) continue;
    for (const auto& a : graph.arcs) {
      if (a.kind == QuestArcKind::kOutcome && a.from == graph.goal_node(n.frame)) questions.push_back(a.to);
    }
  }
  std::sort(questions.begin(), questions.end());
  questions.erase(std::unique(questions.begin(), questions.end()), questions.end());
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    if (graph.nodes[i].kind != QuestNodeKind::kGoal) continue;
    answers.push_back(static_cast<int>(i));
    for (const auto& a : graph.arcs) {
      if (a.kind == QuestArcKind::kInitiate && a.to == static_cast<int>(i) &&
          std::find(answers.begin(), answers.end(), a.from) == answers.end()) {
        answers.push_back(a.from);
      }
    }
  }
  std::vector<QuestionPair> out;
  for (int q : questions) {
    auto legal = why_arc_search(graph, q);
    std::optional<std::string> qtext;
    if (templates) qtext = question_text(plan, graph.nodes[q].step, *templates);
    if (!qtext) qtext = "why did " + graph.nodes[q].description + " happen?";
    for (int a : answers) {
      if (a == q) continue;
      QuestionPair p;
      p.question = q;
      p.answer = a;
      p.question_text = capitalized(*qtext);
      p.answer_text = node_answer(graph, a, plan, templates);
      p.predicted = std::binary_search(legal.begin(), legal.end(), a) ? Goodness::kGood : Goodness::kPoor;
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::string quest_to_json(const QuestGraph& graph) {
  json nodes = json::array();
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& n = graph.nodes[i];
    json j{{"id", i}, {"description", n.description}};
    if (n.kind == QuestNodeKind::kEvent) {
      j["type"] = "event";
      j["step"] = n.step;
    } else {
      j["type"] = "goal";
      j["frame"] = n.frame;
      j["character"] = symbol_name(n.character);
      j["goal"] = to_string(n.goal);
      j["interval"] = n.interval;
    }
    nodes.push_back(std::move(j));
  }
  json arcs = json::array();
  for (const auto& a : graph.arcs) arcs.push_back({{"type", quest_arc_name(a.kind)}, {"from", a.from}, {"to", a.to}});
  return json{{"nodes", nodes}, {"arcs", arcs}}.dump(2) + "\n";
}

static const char* goodness_name(Goodness g) { return g == Goodness::kGood ? "good" : "poor"; }

std::string questionnaire_to_text(const std::vector<QuestionPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    out += "Q: " + p.question_text + "\nA: " + p.answer_text + "\npredicted: " + goodness_name(p.predicted) + "\n\n";
  }
  return out;
}

std::string questionnaire_to_csv(const std::vector<QuestionPair>& pairs) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::string out = "question,answer,predicted\n";
  for (const auto& p : pairs) {
    out += quote(p.question_text) + "," + quote(p.answer_text) + "," + goodness_name(p.predicted) + "\n";
  }
  return out;
}

std::string questionnaire_to_json(const std::vector<QuestionPair>& pairs) {
  json out = json::array();
  for (const auto& p : pairs) {
    out.push_back({{"question_node", p.question},
                   {"answer_node", p.answer},
                   {"question", p.question_text},
                   {"answer", p.answer_text},
                   {"predicted", goodness_name(p.predicted)}});
  }
  return out.dump(2) + "\n";
}

}  // namespace fabula
