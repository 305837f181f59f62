#include "fabula/narrate/narrate.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace fabula {

namespace {

// Resolved arguments of a step, literal-valued ones included.
std::vector<Term> step_args(const Plan& plan, StepId s) {
  std::vector<Term> out;
  for (const auto& a : plan.step(s).action->args) out.push_back(plan.bindings.resolve(a));
  return out;
}

template <typename T>
const T* match_step(const std::vector<T>& entries, const Plan& plan, StepId s, PatternBinding& binding) {
  const std::string name(plan.step(s).name());
  const auto args = step_args(plan, s);
  for (const auto& e : entries) {
    if (e.schema != name || e.args.size() != args.size()) continue;
    PatternBinding trial;
    bool ok = true;
    for (std::size_t i = 0; i < args.size() && ok; ++i) ok = match_term(e.args[i], args[i], trial);
    if (ok) {
      binding = std::move(trial);
      return &e;
    }
  }
  return nullptr;
}

const CharacterGoalPhrase* match_character_goal(const std::vector<CharacterGoalPhrase>& entries, SymbolId who,
                                                const Literal& goal, PatternBinding& binding) {
  for (const auto& e : entries) {
    PatternBinding trial;
    if (match_term(e.who, Term::symbol(who), trial) && match_literal(e.pattern, goal, trial)) {
      binding = std::move(trial);
      return &e;
    }
  }
  return nullptr;
}

const GoalClause* match_goal(const std::vector<GoalClause>& entries, const Literal& goal, PatternBinding& binding) {
  for (const auto& e : entries) {
    PatternBinding trial;
    if (match_literal(e.pattern, goal, trial)) {
      binding = std::move(trial);
      return &e;
    }
  }
  return nullptr;
}

Literal instantiate(const Literal& pattern, const PatternBinding& binding);

Term instantiate(const Term& t, const PatternBinding& binding) {
  if (t.is_variable()) {
    auto it = binding.find(t.id());
    return it != binding.end() ? it->second : t;
  }
  if (t.is_literal()) return Term::literal(instantiate(t.nested(), binding));
  return t;
}

Literal instantiate(const Literal& pattern, const PatternBinding& binding) {
  Literal out = pattern;
  for (auto& a : out.args) a = instantiate(a, binding);
  return out;
}

// Tracks which entities the reader has met.
class Teller {
 public:
  explicit Teller(const TemplateSet& templates) : templates_(templates) {}

  void introduce(SymbolId who, std::vector<std::string>& out) {
    if (met_.contains(who)) return;
    met_.insert(who);
    auto it = templates_.introductions.find(who);
    if (it != templates_.introductions.end()) out.push_back(sentence_case(it->second));
  }

  // Introduces whoever the sentence mentions, then says it.
  void say(const std::string& text, const PatternBinding& binding, std::vector<std::string>& out) {
    for (SymbolId who : mentioned(text, binding)) introduce(who, out);
    out.push_back(sentence_case(fill(text, binding, templates_)));
  }

 private:
  const TemplateSet& templates_;
  std::set<SymbolId> met_;
};

}  // namespace

std::string sentence_case(std::string text) {
  if (!text.empty()) text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  return text;
}

std::string Narrative::text() const {
  std::string out;
  for (const auto& paragraph : paragraphs) {
    if (paragraph.empty()) continue;
    if (!out.empty()) out += "\n";
    for (std::size_t i = 0; i < paragraph.size(); ++i) out += (i > 0 ? " " : "") + paragraph[i];
    out += "\n";
  }
  return out;
}

std::vector<StepId> story_order(const Plan& plan) {
  const auto n = static_cast<StepId>(plan.steps.size());
  std::vector<StepId> out;
  std::vector<int> done(plan.steps.size(), 0);
  while (static_cast<StepId>(out.size()) < n - 2) {
    StepId next = -1;
    for (StepId s = 2; s < n && next < 0; ++s) {
      if (done[static_cast<std::size_t>(s)]) continue;
      bool ready = true;
      for (StepId p = 2; p < n && ready; ++p) {
        if (!done[static_cast<std::size_t>(p)] && p != s && plan.ordering.precedes(p, s)) ready = false;
      }
      if (ready) next = s;
    }
    if (next < 0) throw NarrateError("plan ordering is cyclic");
    done[static_cast<std::size_t>(next)] = 1;
    out.push_back(next);
  }
  return out;
}

Narrative render(const Plan& plan, const TemplateSet& templates, const Task& task) {
  Narrative story;
  story.order = story_order(plan);
  Teller teller(templates);

  auto intention = [&](const FrameOfCommitment& c, std::vector<std::string>& out) {
    PatternBinding b;
    const auto* phrase = match_character_goal(templates.intentions, c.character, plan.frame_goal(c), b);
    if (phrase == nullptr) {
      throw NarrateError("no intention template for " + symbol_name(c.character) + " intends " +
                         to_string(plan.frame_goal(c)));
    }
    teller.say(phrase->text, b, out);
  };

  std::vector<std::string> intro;
  const auto& goal = task.problem().goal;
  for (std::size_t i = 0; i < goal.size(); ++i) {
    PatternBinding b;
    const auto* clause = match_goal(templates.goals, goal[i], b);
    if (clause == nullptr) throw NarrateError("no goal template for " + to_string(goal[i]));
    for (SymbolId v : clause->mentions) {
      const Term& t = b.at(v);
      if (t.is_symbol()) teller.introduce(t.id(), intro);
    }
    const std::string& opening = i == 0 ? templates.opening_first : templates.opening_more;
    teller.say(opening + " " + clause->text + ".", b, intro);
  }
  story.paragraphs.push_back(std::move(intro));

  std::vector<std::string> preamble;
  for (const auto& item : templates.preamble) {
    if (item.introduce) {
      teller.introduce(*item.introduce, preamble);
    } else {
      preamble.push_back(sentence_case(item.text));
    }
  }
  story.paragraphs.push_back(std::move(preamble));

  std::vector<std::string> events;
  for (const auto& c : plan.frames) {
    if (c.motivating_step == kInitialStep) intention(c, events);
  }
  for (StepId s : story.order) {
    PatternBinding b;
    const EventTemplate* t = match_step(templates.events, plan, s, b);
    if (t == nullptr) throw NarrateError("no event template matches step " + std::to_string(s) + " " + plan.step_label(s));
    for (const auto& part : t->parts) {
      if (!part.before) continue;
      const Literal want = instantiate(part.literal, b);
      for (const auto& l : plan.links) {
        if (l.sink == s && l.source == kInitialStep && plan.link_condition(l) == want) {
          teller.say(part.text, b, events);
          break;
        }
      }
    }
    teller.say(t->text, b, events);
    story.event_sentences.push_back(events.back());
    for (const auto& part : t->parts) {
      if (part.before) continue;
      const Literal want = instantiate(part.literal, b);
      for (const auto& l : plan.links) {
        if (l.source == s && l.effect >= 0 && plan.step(l.sink).ordinary() && plan.link_effect(l) == want) {
          teller.say(part.text, b, events);
          break;
        }
      }
    }
    for (const auto& c : plan.frames) {
      if (c.motivating_step == s) intention(c, events);
    }
  }
  story.paragraphs.push_back(std::move(events));

  std::vector<std::string> outro;
  for (const auto& o : templates.outcomes) {
    for (const auto& g : goal) {
      PatternBinding b;
      if (match_literal(o.pattern, g, b)) {
        outro.push_back(sentence_case(fill(o.text, b, templates)));
        break;
      }
    }
  }
  if (!templates.closing.empty()) outro.push_back(sentence_case(templates.closing));
  story.paragraphs.push_back(std::move(outro));
  return story;
}

std::optional<std::string> question_text(const Plan& plan, StepId step, const TemplateSet& templates) {
  PatternBinding b;
  const auto* p = match_step(templates.questions, plan, step, b);
  if (p == nullptr) return std::nullopt;
  return sentence_case(fill(p->text, b, templates));
}

std::optional<std::string> answer_text(const Plan& plan, StepId step, const TemplateSet& templates) {
  PatternBinding b;
  const auto* p = match_step(templates.answers, plan, step, b);
  if (p == nullptr) return std::nullopt;
  return fill(p->text, b, templates);
}

std::optional<std::string> goal_answer_text(SymbolId who, const Literal& goal, const TemplateSet& templates) {
  PatternBinding b;
  const auto* p = match_character_goal(templates.goal_answers, who, goal, b);
  if (p == nullptr) return std::nullopt;
  return fill(p->text, b, templates);
}

}  // namespace fabula
