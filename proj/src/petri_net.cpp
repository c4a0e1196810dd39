#include "flexh/petri_net.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>

#include "flexh/error.hpp"

namespace flexh {

void PetriNet::check() const {
  std::set<std::string> ids;
  for (const auto& p : places)
    if (!ids.insert(p).second) throw InvalidArgument("duplicate node id '" + p + "'");
  for (const auto& t : transitions)
    if (!ids.insert(t.id).second) throw InvalidArgument("duplicate node id '" + t.id + "'");
  auto check_arcs = [&](const std::vector<int>& v, const std::string& tid) {
    for (int p : v)
      if (p < 0 || p >= place_count())
        throw InvalidArgument("transition '" + tid + "' references missing place");
  };
  for (const auto& t : transitions) {
    check_arcs(t.pre, t.id);
    check_arcs(t.post, t.id);
  }
  auto check_marking = [&](const Marking& m, const char* which) {
    if (m.size() != places.size())
      throw InvalidArgument(std::string(which) + " marking size differs from place count");
    bool any = false;
    for (auto c : m) any = any || c > 0;
    if (!any) throw InvalidArgument(std::string(which) + " marking is empty");
  };
  check_marking(initial, "initial");
  check_marking(final, "final");
}

bool is_enabled(const PetriNet& net, const Marking& marking, int t) {
  for (int p : net.transitions[t].pre)
    if (marking[p] == 0) return false;
  return true;
}

std::vector<int> enabled(const PetriNet& net, const Marking& marking) {
  std::vector<int> result;
  for (int t = 0; t < net.transition_count(); ++t)
    if (is_enabled(net, marking, t)) result.push_back(t);
  return result;
}

Marking fire(const PetriNet& net, const Marking& marking, int t) {
  if (!is_enabled(net, marking, t))
    throw InvalidArgument("transition '" + net.transitions[t].id + "' is not enabled");
  Marking next = marking;
  for (int p : net.transitions[t].pre) --next[p];
  for (int p : net.transitions[t].post) ++next[p];
  return next;
}

int size(const PetriNet& net) { return net.place_count() + net.transition_count(); }

int cfc(const PetriNet& net) {
  std::vector<int> place_in(net.places.size(), 0), place_out(net.places.size(), 0);
  int total = 0;
  for (const auto& t : net.transitions) {
    for (int p : t.pre) ++place_out[p];
    for (int p : t.post) ++place_in[p];
    if (t.pre.size() > 1 || t.post.size() > 1) ++total;
  }
  for (std::size_t p = 0; p < net.places.size(); ++p)
    if (place_in[p] > 1 || place_out[p] > 1) total += place_out[p];
  return total;
}

namespace {

struct MarkingHash {
  std::size_t operator()(const Marking& m) const {
    std::size_t h = 1469598103934665603ull;
    for (auto c : m) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

double shortest_accepting_path_cost(const PetriNet& net,
                                    const std::vector<double>& transition_costs,
                                    const PathSearchConfig& config) {
  net.check();
  if (transition_costs.size() != net.transitions.size())
    throw InvalidArgument("one cost per transition required");
  for (double c : transition_costs)
    if (c < 0.0) throw InvalidArgument("transition costs must be non-negative");

  using Entry = std::pair<double, Marking>;
  auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> open(cmp);
  std::unordered_map<Marking, double, MarkingHash> best;

  open.push({0.0, net.initial});
  best[net.initial] = 0.0;
  std::size_t expansions = 0;

  while (!open.empty()) {
    auto [cost, marking] = open.top();
    open.pop();
    auto it = best.find(marking);
    if (it != best.end() && cost > it->second) continue;
    if (marking == net.final) return cost;
    if (++expansions > config.max_expansions)
      throw UnreachableFinalMarking("path search budget exhausted");
    for (int t = 0; t < net.transition_count(); ++t) {
      if (!is_enabled(net, marking, t)) continue;
      Marking next = fire(net, marking, t);
      for (auto c : next)
        if (c > config.token_cap)
          throw MarkingOverflow("marking exceeds token cap of " +
                                std::to_string(config.token_cap));
      double next_cost = cost + transition_costs[t];
      auto found = best.find(next);
      if (found == best.end() || next_cost < found->second) {
        best[next] = next_cost;
        open.push({next_cost, std::move(next)});
      }
    }
  }
  throw UnreachableFinalMarking("final marking is not reachable");
}

double shortest_accepting_path_cost(const PetriNet& net, double visible_cost,
                                    const PathSearchConfig& config) {
  std::vector<double> costs(net.transitions.size(), 0.0);
  for (std::size_t t = 0; t < net.transitions.size(); ++t)
    if (!net.transitions[t].silent()) costs[t] = visible_cost;
  return shortest_accepting_path_cost(net, costs, config);
}

}  // namespace flexh
