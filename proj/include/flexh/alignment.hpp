#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flexh/event_log.hpp"
#include "flexh/petri_net.hpp"

namespace flexh {

struct MoveCosts {
  double sync = 0.0;
  double log_move = 1.0;
  double model_move = 1.0;  // visible; silent model moves cost 0
};

struct AlignmentBudget {
  std::size_t max_expansions = 500'000;  // per trace
  std::int64_t time_budget_ms = 60'000;  // per model, shared by its traces
  int token_cap = 2;
};

struct AlignmentMove {
  enum class Kind { Sync, Model, Log };
  Kind kind;
  std::string label;          // activity (Sync/Log) or transition label (Model, empty if silent)
  std::string transition_id;  // Sync/Model only
};

struct Alignment {
  std::vector<AlignmentMove> moves;
  double total_cost = 0.0;
  bool reliable = true;  // false: budget exhausted or final marking unreachable
  // Model-run transition indices (sync + model moves, silent included).
  std::vector<int> fired;
};

// Minimal-cost alignment of one trace against the net, via best-first
// (uniform-cost) search over the synchronous product. An exhausted budget
// yields an unreliable result instead of an error.
Alignment align(const Trace& trace, const PetriNet& net, const MoveCosts& costs = {},
                const AlignmentBudget& budget = {});

}  // namespace flexh
