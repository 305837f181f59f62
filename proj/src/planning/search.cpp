#include "fabula/planning/search.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <unordered_map>

namespace fabula {

std::optional<FlawStrategy> parse_flaw_strategy(std::string_view name) {
  if (name == "default") return FlawStrategy::kDefault;
  if (name == "oc-fifo") return FlawStrategy::kOpenConditionFifo;
  return std::nullopt;
}

const char* flaw_strategy_name(FlawStrategy strategy) {
  return strategy == FlawStrategy::kDefault ? "default" : "oc-fifo";
}

const char* outcome_name(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::kSolved:
      return "solved";
    case SearchOutcome::kExhausted:
      return "exhausted";
    case SearchOutcome::kNodeLimit:
      return "node-limit";
  }
  return "?";
}

Flaw select_flaw(const Plan& plan, FlawStrategy strategy) {
  if (plan.flaws.empty()) throw std::logic_error("select_flaw on a flawless plan");
  auto rank = [](FlawKind k) {
    switch (k) {
      case FlawKind::kCausalThreat:
        return 0;
      case FlawKind::kIntentionalThreat:
        return 1;
      case FlawKind::kOpenMotivation:
        return 2;
      case FlawKind::kOpenCondition:
        return 3;
      case FlawKind::kIntentFlaw:
        return 4;
    }
    return 5;
  };
  // True if a should be chosen over b.
  auto better = [&](const Flaw& a, const Flaw& b) {
    if (rank(a.kind) != rank(b.kind)) return rank(a.kind) < rank(b.kind);
    switch (a.kind) {
      case FlawKind::kOpenMotivation:
        return a.first > b.first;
      case FlawKind::kOpenCondition:
        return strategy == FlawStrategy::kDefault ? a.seq > b.seq : a.seq < b.seq;
      default:
        return a.seq < b.seq;
    }
  };
  const Flaw* best = &plan.flaws.front();
  for (const auto& f : plan.flaws) {
    if (better(f, *best)) best = &f;
  }
  return *best;
}

namespace {

// An expanded node, kept alive while any of its children waits in the
// frontier. Children are regenerated on demand from (parent, index), which
// costs one extra refine() per pop but keeps only expanded plans in memory.
struct Expanded {
  Plan plan;
  Flaw flaw;
};

struct Entry {
  std::int64_t h;
  std::int64_t id;
  std::shared_ptr<const Expanded> parent;  // null for the root
  std::uint32_t index;
};

// Min-heap order on (h, id).
struct Later {
  bool operator()(const Entry& a, const Entry& b) const { return a.h != b.h ? a.h > b.h : a.id > b.id; }
};

}  // namespace

SearchResult plan_search(const Task& task, const SearchConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  SearchResult result;
  SearchStats& stats = result.stats;

  std::vector<std::int64_t> parent;
  std::vector<std::uint8_t> visited;
  std::vector<std::uint32_t> child_index;  // position in the parent's refine() output
  // Per expanded node: id of its first pushed child and how many were pushed.
  // Pushed children get consecutive ids, so this finds which were visited.
  std::unordered_map<std::int64_t, std::pair<std::int64_t, std::int64_t>> pushed;
  std::vector<Entry> frontier;
  std::int64_t children_total = 0;

  auto push = [&](const Plan& plan, std::shared_ptr<const Expanded> from, std::uint32_t index) {
    const std::int64_t id = stats.nodes_generated++;
    parent.push_back(from ? from->plan.id : -1);
    visited.push_back(0);
    child_index.push_back(index);
    frontier.push_back(Entry{config.heuristic(plan), id, std::move(from), index});
    std::push_heap(frontier.begin(), frontier.end(), Later{});
    stats.max_frontier = std::max(stats.max_frontier, static_cast<std::int64_t>(frontier.size()));
  };

  auto admissible = [&](const Plan& child) {
    if (child.depth > config.max_depth) return false;
    return config.max_steps <= 0 || static_cast<int>(child.ordinary_step_count()) <= config.max_steps;
  };

  std::optional<OrphanCheck> orphan_check;
  if (config.prune_hopeless && config.algorithm == Algorithm::kIpocl) orphan_check.emplace(task);

  const Plan root = initial_plan(task);
  push(root, nullptr, 0);
  bool limit_hit = false;

  while (!frontier.empty()) {
    std::pop_heap(frontier.begin(), frontier.end(), Later{});
    Entry entry = std::move(frontier.back());
    frontier.pop_back();

    Plan node;
    if (entry.parent) {
      std::vector<Plan> siblings = refine(entry.parent->plan, entry.parent->flaw, task, config.algorithm);
      node = std::move(siblings.at(entry.index));
      entry.parent.reset();
    } else {
      node = root;
    }
    node.id = entry.id;
    node.parent = parent[static_cast<std::size_t>(entry.id)];
    ++stats.nodes_visited;
    visited[static_cast<std::size_t>(node.id)] = 1;

    if (complete(node, config.algorithm)) {
      result.outcome = SearchOutcome::kSolved;
      stats.solution_depth = node.depth;
      result.plan = std::move(node);
      break;
    }
    if (node.flaws.empty()) {
      continue;  // dead end: orphans with nothing left to adopt them
    }

    Flaw flaw = select_flaw(node, config.flaw_strategy);
    std::vector<Plan> children = refine(node, flaw, task, config.algorithm);
    ++stats.nodes_expanded;
    const std::int64_t first_child = stats.nodes_generated;
    std::int64_t count = 0;
    auto expanded = std::make_shared<Expanded>(Expanded{std::move(node), flaw});
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (!admissible(children[i])) continue;
      if (orphan_check && orphan_check->hopeless(children[i])) {
        ++stats.nodes_pruned;
        continue;
      }
      if (stats.nodes_generated >= config.max_nodes) {
        limit_hit = true;
        break;
      }
      push(children[i], expanded, static_cast<std::uint32_t>(i));
      ++count;
    }
    children_total += count;
    if (config.trace) pushed[expanded->plan.id] = {first_child, count};
    if (limit_hit) break;
  }

  if (!result.plan) result.outcome = limit_hit ? SearchOutcome::kNodeLimit : SearchOutcome::kExhausted;
  stats.mean_branching =
      stats.nodes_expanded > 0 ? static_cast<double>(children_total) / static_cast<double>(stats.nodes_expanded) : 0.0;
  stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  stats.micros_per_node =
      stats.nodes_visited > 0 ? stats.wall_seconds * 1e6 / static_cast<double>(stats.nodes_visited) : 0.0;

  if (config.trace) {
    std::string& out = result.trace;
    if (result.plan) {
      std::vector<std::int64_t> path;
      for (std::int64_t id = result.plan->id; id >= 0; id = parent[static_cast<std::size_t>(id)]) path.push_back(id);
      std::reverse(path.begin(), path.end());
      // Replay the path; refinement is deterministic so this reproduces the
      // plans the search saw.
      Plan node = root;
      for (std::size_t i = 0; i < path.size(); ++i) {
        out += "plan " + std::to_string(path[i]) + "\n";
        out += "reason: " + describe_refinement(node) + "\n";
        if (i + 1 == path.size()) {
          out += "solution found\n\n";
          break;
        }
        const Flaw flaw = select_flaw(node, config.flaw_strategy);
        const auto [first, count] = pushed.at(path[i]);
        std::int64_t seen = 0;
        for (std::int64_t c = first; c < first + count; ++c) seen += visited[static_cast<std::size_t>(c)];
        // every refinement counts here, including those cut by limits or pruning
        std::vector<Plan> children = refine(node, flaw, task, config.algorithm);
        out += "now working on: " + describe_flaw(node, flaw) + "\n";
        out += "children: " + std::to_string(children.size()) + " (visited " + std::to_string(seen) +
               "; selecting " + std::to_string(path[i + 1]) + ")\n\n";
        node = std::move(children.at(child_index[static_cast<std::size_t>(path[i + 1])]));
        node.id = path[i + 1];
        node.parent = path[i];
      }
    } else {
      out += "no solution (" + std::string(outcome_name(result.outcome)) + ")\n";
    }
  }
  return result;
}

}  // namespace fabula
