#include "flexh/alignment.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <limits>
#include <queue>
#include <unordered_map>

#include "flexh/error.hpp"

namespace flexh {

namespace {

using Clock = std::chrono::steady_clock;

std::string state_key(int pos, const Marking& m) {
  std::string key(sizeof(int) + m.size(), '\0');
  std::memcpy(key.data(), &pos, sizeof(int));
  std::memcpy(key.data() + sizeof(int), m.data(), m.size());
  return key;
}

struct SearchState {
  int pos;
  Marking marking;
  double cost;
  int prev;           // arena index, -1 for the root
  AlignmentMove::Kind kind;
  int transition;     // -1 for log moves
};

}  // namespace

Alignment align(const Trace& trace, const PetriNet& net, const MoveCosts& costs,
                const AlignmentBudget& budget) {
  net.check();
  const int n = static_cast<int>(trace.activities.size());
  const auto deadline = Clock::now() + std::chrono::milliseconds(budget.time_budget_ms);

  std::vector<SearchState> arena;
  std::unordered_map<std::string, int> index;
  using QEntry = std::pair<double, int>;
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> open;

  arena.push_back({0, net.initial, 0.0, -1, AlignmentMove::Kind::Log, -1});
  index[state_key(0, net.initial)] = 0;
  open.push({0.0, 0});

  Alignment result;
  result.reliable = false;
  result.total_cost = std::numeric_limits<double>::infinity();

  auto relax = [&](int pos, Marking marking, double cost, int prev,
                   AlignmentMove::Kind kind, int transition) {
    for (auto c : marking)
      if (c > budget.token_cap) return;  // beyond the exploration bound
    std::string key = state_key(pos, marking);
    auto it = index.find(key);
    if (it == index.end()) {
      arena.push_back({pos, std::move(marking), cost, prev, kind, transition});
      index.emplace(std::move(key), static_cast<int>(arena.size()) - 1);
      open.push({cost, static_cast<int>(arena.size()) - 1});
    } else if (cost < arena[it->second].cost) {
      SearchState& s = arena[it->second];
      s.cost = cost;
      s.prev = prev;
      s.kind = kind;
      s.transition = transition;
      open.push({cost, it->second});
    }
  };

  std::size_t expansions = 0;
  while (!open.empty()) {
    auto [cost, idx] = open.top();
    open.pop();
    if (cost > arena[idx].cost) continue;  // stale queue entry

    const int pos = arena[idx].pos;
    const Marking marking = arena[idx].marking;  // copy: arena may reallocate

    if (pos == n && marking == net.final) {
      // Walk the predecessor chain backwards.
      std::vector<AlignmentMove> moves;
      std::vector<int> fired;
      for (int i = idx; arena[i].prev != -1; i = arena[i].prev) {
        const SearchState& s = arena[i];
        AlignmentMove m;
        m.kind = s.kind;
        if (s.kind == AlignmentMove::Kind::Log) {
          m.label = trace.activities[arena[s.prev].pos];
        } else {
          const auto& t = net.transitions[s.transition];
          m.label = t.label.value_or("");
          m.transition_id = t.id;
          fired.push_back(s.transition);
        }
        moves.push_back(std::move(m));
      }
      std::reverse(moves.begin(), moves.end());
      std::reverse(fired.begin(), fired.end());
      result.moves = std::move(moves);
      result.fired = std::move(fired);
      result.total_cost = cost;
      result.reliable = true;
      return result;
    }

    if (++expansions > budget.max_expansions) return result;
    if ((expansions & 1023) == 0 && Clock::now() > deadline) return result;

    if (pos < n) relax(pos + 1, marking, cost + costs.log_move, idx, AlignmentMove::Kind::Log, -1);
    for (int t = 0; t < net.transition_count(); ++t) {
      if (!is_enabled(net, marking, t)) continue;
      Marking next = fire(net, marking, t);
      const auto& tr = net.transitions[t];
      double model_cost = tr.silent() ? 0.0 : costs.model_move;
      relax(pos, next, cost + model_cost, idx, AlignmentMove::Kind::Model, t);
      if (pos < n && !tr.silent() && *tr.label == trace.activities[pos])
        relax(pos + 1, std::move(next), cost + costs.sync, idx, AlignmentMove::Kind::Sync, t);
    }
  }
  return result;  // final marking unreachable
}

}  // namespace flexh
