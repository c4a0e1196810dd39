#include "flexh/quality.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "flexh/error.hpp"
#include "flexh/parallel.hpp"
#include "flexh/petri_net.hpp"
#include "flexh/rng.hpp"

namespace flexh {

namespace {

struct MarkingOrder {
  bool operator()(const Marking& a, const Marking& b) const { return a < b; }
};

using MarkingSet = std::set<Marking, MarkingOrder>;

constexpr std::size_t kClosureLimit = 65536;

// All markings reachable via silent transitions (input included).
MarkingSet tau_closure(const PetriNet& net, MarkingSet from, int token_cap, bool& overflow) {
  MarkingSet closed = std::move(from);
  std::vector<Marking> stack(closed.begin(), closed.end());
  while (!stack.empty()) {
    Marking m = std::move(stack.back());
    stack.pop_back();
    for (int t = 0; t < net.transition_count(); ++t) {
      if (!net.transitions[t].silent() || !is_enabled(net, m, t)) continue;
      Marking next = fire(net, m, t);
      bool capped = false;
      for (auto c : next) capped = capped || c > token_cap;
      if (capped) continue;
      if (closed.insert(next).second) {
        if (closed.size() > kClosureLimit) {
          overflow = true;
          return closed;
        }
        stack.push_back(std::move(next));
      }
    }
  }
  return closed;
}

MarkingSet visible_step(const PetriNet& net, const MarkingSet& from, const std::string& label,
                        int token_cap, bool& overflow) {
  MarkingSet result;
  for (const auto& m : from) {
    for (int t = 0; t < net.transition_count(); ++t) {
      const auto& tr = net.transitions[t];
      if (tr.silent() || *tr.label != label || !is_enabled(net, m, t)) continue;
      Marking next = fire(net, m, t);
      bool capped = false;
      for (auto c : next) capped = capped || c > token_cap;
      if (!capped) result.insert(std::move(next));
    }
  }
  return tau_closure(net, std::move(result), token_cap, overflow);
}

std::set<std::string> enabled_visible(const PetriNet& net, const MarkingSet& markings) {
  std::set<std::string> labels;
  for (const auto& m : markings)
    for (int t = 0; t < net.transition_count(); ++t)
      if (!net.transitions[t].silent() && is_enabled(net, m, t))
        labels.insert(*net.transitions[t].label);
  return labels;
}

// Shares one model-level time budget across a sequence of align() calls.
class BudgetClock {
 public:
  explicit BudgetClock(const AlignmentBudget& budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  // Remaining-budget view for the next call; nullopt when spent.
  std::optional<AlignmentBudget> next() const {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
    if (elapsed >= budget_.time_budget_ms) return std::nullopt;
    AlignmentBudget b = budget_;
    b.time_budget_ms = budget_.time_budget_ms - elapsed;
    return b;
  }

 private:
  AlignmentBudget budget_;
  std::chrono::steady_clock::time_point start_;
};

// Aligned model runs, one per distinct trace, as visible label sequences
// plus their multiset counts. nullopt when any alignment is unreliable.
std::optional<std::map<std::vector<std::string>, std::size_t>> aligned_visible_runs(
    const EventLog& log, const PetriNet& net, const MoveCosts& costs,
    const AlignmentBudget& budget) {
  std::map<std::vector<std::string>, std::size_t> runs;
  BudgetClock clock(budget);
  for (const auto& [acts, count] : language(log)) {
    auto remaining = clock.next();
    if (!remaining) return std::nullopt;
    Trace t{"", acts};
    Alignment a = align(t, net, costs, *remaining);
    if (!a.reliable) return std::nullopt;
    std::vector<std::string> visible;
    for (int ti : a.fired)
      if (!net.transitions[ti].silent()) visible.push_back(*net.transitions[ti].label);
    runs[visible] += count;
  }
  return runs;
}

struct PrefixNode {
  std::map<std::string, int> children;
  std::size_t weight = 0;  // traces passing through this prefix
};

}  // namespace

Metric fitness(const EventLog& log, const PetriNet& net, const MoveCosts& costs,
               const AlignmentBudget& budget) {
  double shortest;
  try {
    PathSearchConfig psc;
    psc.token_cap = budget.token_cap;
    shortest = shortest_accepting_path_cost(net, costs.model_move, psc);
  } catch (const Error&) {
    return std::nullopt;  // unsound for evaluation
  }

  double numerator = 0.0, denominator = 0.0;
  BudgetClock clock(budget);
  for (const auto& [acts, count] : language(log)) {
    auto remaining = clock.next();
    if (!remaining) return std::nullopt;
    Trace t{"", acts};
    Alignment a = align(t, net, costs, *remaining);
    if (!a.reliable) return std::nullopt;
    numerator += static_cast<double>(count) * a.total_cost;
    denominator += static_cast<double>(count) *
                   (static_cast<double>(acts.size()) * costs.log_move + shortest);
  }
  if (denominator <= 0.0) return 1.0;
  double value = 1.0 - numerator / denominator;
  return std::min(1.0, std::max(0.0, value));
}

Metric precision(const EventLog& log, const PetriNet& net, const MoveCosts& costs,
                 const AlignmentBudget& budget) {
  auto runs = aligned_visible_runs(log, net, costs, budget);
  if (!runs) return std::nullopt;

  std::vector<PrefixNode> trie(1);
  for (const auto& [run, count] : *runs) {
    int node = 0;
    trie[node].weight += count;
    for (const auto& label : run) {
      auto [it, inserted] = trie[node].children.try_emplace(label, 0);
      if (inserted) {
        it->second = static_cast<int>(trie.size());
        trie.emplace_back();
      }
      node = it->second;
      trie[node].weight += count;
    }
  }

  bool overflow = false;
  double escaping = 0.0, allowed = 0.0;
  // Iterative DFS pairing each trie node with its model state set.
  std::vector<std::pair<int, MarkingSet>> stack;
  stack.emplace_back(0, tau_closure(net, {net.initial}, budget.token_cap, overflow));
  while (!stack.empty() && !overflow) {
    auto [node, states] = std::move(stack.back());
    stack.pop_back();
    std::set<std::string> en = enabled_visible(net, states);
    std::set<std::string> taken;
    for (const auto& [label, child] : trie[node].children) (void)child, taken.insert(label);
    std::size_t esc = 0;
    for (const auto& label : en)
      if (!taken.count(label)) ++esc;
    double w = static_cast<double>(trie[node].weight);
    escaping += w * static_cast<double>(esc);
    allowed += w * static_cast<double>(en.size());
    for (const auto& [label, child] : trie[node].children)
      stack.emplace_back(child, visible_step(net, states, label, budget.token_cap, overflow));
  }
  if (overflow) return std::nullopt;
  if (allowed <= 0.0) return 1.0;
  return 1.0 - escaping / allowed;
}

Metric f1(Metric fi, Metric pr) {
  if (!fi || !pr) return std::nullopt;
  if (*fi == 0.0 && *pr == 0.0) return 0.0;
  return 2.0 * (*fi) * (*pr) / (*fi + *pr);
}

Metric generalization(const EventLog& log, const DiscoveryFn& miner, int k,
                      std::uint64_t seed, const MoveCosts& costs,
                      const AlignmentBudget& budget) {
  if (k < 2) throw InvalidArgument("generalization needs k >= 2 folds");
  std::size_t n = log.traces.size();
  if (n < static_cast<std::size_t>(k))
    throw InvalidArgument("generalization needs at least k traces");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  std::vector<int> fold_of(n);
  for (std::size_t i = 0; i < n; ++i) fold_of[order[i]] = static_cast<int>(i % k);

  double total = 0.0;
  for (int fold = 0; fold < k; ++fold) {
    std::vector<Trace> held, rest;
    for (std::size_t i = 0; i < n; ++i)
      (fold_of[i] == fold ? held : rest).push_back(log.traces[i]);
    PetriNet model;
    try {
      model = miner(make_log(std::move(rest)));
    } catch (const std::exception&) {
      return std::nullopt;
    }
    Metric fi = fitness(make_log(std::move(held)), model, costs, budget);
    Metric pr = precision(log, model, costs, budget);
    Metric term = f1(fi, pr);
    if (!term) return std::nullopt;
    total += *term;
  }
  return total / static_cast<double>(k);
}

QualityAverages aggregate(const std::map<std::string, SubprocessQuality>& entries) {
  QualityAverages avg;
  auto mean_of = [&](auto pick) -> Metric {
    double sum = 0.0;
    int count = 0;
    for (const auto& [name, e] : entries) {
      (void)name;
      auto v = pick(e);
      if (v) {
        sum += static_cast<double>(*v);
        ++count;
      }
    }
    if (count == 0) return std::nullopt;
    return sum / count;
  };
  avg.fi = mean_of([](const SubprocessQuality& e) { return e.fi; });
  avg.pr = mean_of([](const SubprocessQuality& e) { return e.pr; });
  avg.f1 = mean_of([](const SubprocessQuality& e) { return e.f1; });
  avg.ge = mean_of([](const SubprocessQuality& e) { return e.ge; });
  avg.cfc = mean_of([](const SubprocessQuality& e) -> Metric {
    if (!e.cfc) return std::nullopt;
    return static_cast<double>(*e.cfc);
  });
  avg.size = mean_of([](const SubprocessQuality& e) -> Metric {
    if (!e.size) return std::nullopt;
    return static_cast<double>(*e.size);
  });
  return avg;
}

QualityReport evaluate_hierarchical(const HierarchicalModel& hmodel,
                                    const EvaluationConfig& config) {
  std::vector<std::string> subprocesses = hmodel.tree.non_leaves();
  std::vector<SubprocessQuality> slots(subprocesses.size());

  parallel_for(subprocesses.size(), config.jobs, [&](std::size_t i) {
    const std::string& sp = subprocesses[i];
    SubprocessQuality q;
    q.activity_count = static_cast<int>(hmodel.tree.children_of(sp).size());

    auto log_it = hmodel.log_map.find(sp);
    auto model_it = hmodel.model_map.find(sp);
    if (log_it == hmodel.log_map.end() || model_it == hmodel.model_map.end()) {
      slots[i] = q;  // discovery failed: everything unreliable
      return;
    }
    const EventLog& sublog = log_it->second;
    const PetriNet& model = model_it->second;

    q.cfc = cfc(model);
    q.size = size(model);
    if (config.with_fitness) q.fi = fitness(sublog, model, config.costs, config.budget);
    if (config.with_precision) q.pr = precision(sublog, model, config.costs, config.budget);
    if (config.with_fitness && config.with_precision) q.f1 = f1(q.fi, q.pr);
    if (config.with_generalization && config.fold_miner) {
      try {
        q.ge = generalization(sublog, config.fold_miner, config.k_folds,
                              config.seed ^ stable_hash(sp), config.costs, config.budget);
      } catch (const InvalidArgument&) {
        q.ge = std::nullopt;  // too few traces for the fold count
      }
    }
    slots[i] = std::move(q);
  });

  QualityReport report;
  for (std::size_t i = 0; i < subprocesses.size(); ++i)
    report.per_subprocess[subprocesses[i]] = std::move(slots[i]);
  report.subprocess_count = static_cast<int>(subprocesses.size());
  for (const auto& [sp, q] : report.per_subprocess) {
    (void)sp;
    bool unreliable = (config.with_fitness && !q.fi) || (config.with_precision && !q.pr) ||
                      (config.with_fitness && config.with_precision && !q.f1) ||
                      (config.with_generalization && config.fold_miner && !q.ge);
    report.unreliable_count += unreliable ? 1 : 0;
  }
  report.averages = aggregate(report.per_subprocess);
  return report;
}

namespace {

std::string fmt_metric(const Metric& m, bool integral = false) {
  if (!m) return "-";
  char buf[32];
  if (integral && std::abs(*m - std::round(*m)) < 1e-9)
    std::snprintf(buf, sizeof buf, "%.0f", *m);
  else
    std::snprintf(buf, sizeof buf, "%.2f", *m);
  return buf;
}

std::string fmt_count(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string("-");
}

}  // namespace

void render_report(const QualityReport& report, std::ostream& out) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Subprocess", "Fi", "Pr", "F1", "Ge", "CFC", "Size", "#SPs", "#Act"});
  double act_sum = 0.0;
  for (const auto& [sp, q] : report.per_subprocess) {
    rows.push_back({sp, fmt_metric(q.fi), fmt_metric(q.pr), fmt_metric(q.f1), fmt_metric(q.ge),
                    fmt_count(q.cfc), fmt_count(q.size), "", std::to_string(q.activity_count)});
    act_sum += q.activity_count;
  }
  const auto& a = report.averages;
  Metric mean_act = report.subprocess_count
                        ? Metric(act_sum / report.subprocess_count)
                        : std::nullopt;
  rows.push_back({"average", fmt_metric(a.fi), fmt_metric(a.pr), fmt_metric(a.f1),
                  fmt_metric(a.ge), fmt_metric(a.cfc, true), fmt_metric(a.size, true),
                  std::to_string(report.subprocess_count), fmt_metric(mean_act, true)});

  std::vector<std::size_t> widths(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size()) out << std::string(widths[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
  if (report.unreliable_count > 0)
    out << "(" << report.unreliable_count
        << " subprocess(es) with unreliable metrics, excluded from averages)\n";
}

std::string report_to_json(const QualityReport& report) {
  nlohmann::json j;
  auto metric_json = [](const Metric& m) {
    return m ? nlohmann::json(*m) : nlohmann::json(nullptr);
  };
  nlohmann::json subs = nlohmann::json::object();
  for (const auto& [sp, q] : report.per_subprocess) {
    nlohmann::json e;
    e["fi"] = metric_json(q.fi);
    e["pr"] = metric_json(q.pr);
    e["f1"] = metric_json(q.f1);
    e["ge"] = metric_json(q.ge);
    e["cfc"] = q.cfc ? nlohmann::json(*q.cfc) : nlohmann::json(nullptr);
    e["size"] = q.size ? nlohmann::json(*q.size) : nlohmann::json(nullptr);
    e["activities"] = q.activity_count;
    subs[sp] = e;
  }
  j["subprocesses"] = subs;
  j["averages"] = {{"fi", metric_json(report.averages.fi)},
                   {"pr", metric_json(report.averages.pr)},
                   {"f1", metric_json(report.averages.f1)},
                   {"ge", metric_json(report.averages.ge)},
                   {"cfc", metric_json(report.averages.cfc)},
                   {"size", metric_json(report.averages.size)}};
  j["subprocess_count"] = report.subprocess_count;
  j["unreliable_count"] = report.unreliable_count;
  return j.dump(2) + "\n";
}

}  // namespace flexh
