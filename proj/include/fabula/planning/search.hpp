#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fabula/core/plan.hpp"
#include "fabula/planning/heuristics.hpp"
#include "fabula/planning/refine.hpp"
#include "fabula/planning/task.hpp"

namespace fabula {

enum class FlawStrategy {
  // threats, intentional threats, open motivations (newest frame first),
  // open conditions (LIFO), intent flaws (oldest first)
  kDefault,
  // as kDefault but open conditions FIFO
  kOpenConditionFifo,
};

std::optional<FlawStrategy> parse_flaw_strategy(std::string_view name);
const char* flaw_strategy_name(FlawStrategy strategy);

struct SearchConfig {
  Algorithm algorithm = Algorithm::kPocl;
  Heuristic heuristic;
  std::int64_t max_nodes = 5'000'000;  // generated nodes, root included
  int max_depth = 1000;                // refinements from the root
  int max_steps = 0;                   // ordinary steps per plan, 0 = unbounded
  FlawStrategy flaw_strategy = FlawStrategy::kDefault;
  // Intentional engine only: discard children holding an orphan that no
  // refinement can ever adopt. Never changes which plan is returned, only
  // how many nodes it takes.
  bool prune_hopeless = true;
  bool trace = false;
};

struct SearchStats {
  std::int64_t nodes_generated = 0;
  std::int64_t nodes_visited = 0;
  std::int64_t nodes_expanded = 0;  // visited nodes that produced a flaw choice
  std::int64_t max_frontier = 0;
  std::int64_t nodes_pruned = 0;  // children discarded as hopeless, not counted as generated
  int solution_depth = -1;
  double mean_branching = 0.0;
  double wall_seconds = 0.0;
  double micros_per_node = 0.0;
};

enum class SearchOutcome { kSolved, kExhausted, kNodeLimit };

const char* outcome_name(SearchOutcome outcome);

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::kExhausted;
  std::optional<Plan> plan;
  SearchStats stats;
  std::string trace;  // empty unless requested
};

Flaw select_flaw(const Plan& plan, FlawStrategy strategy = FlawStrategy::kDefault);

// Greedy best-first on the heuristic, ties broken by lowest node id.
SearchResult plan_search(const Task& task, const SearchConfig& config);

}  // namespace fabula
