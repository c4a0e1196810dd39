#include "flexh/abstraction.hpp"

#include <algorithm>
#include <optional>

#include "flexh/error.hpp"
#include "flexh/markers.hpp"
#include "flexh/parallel.hpp"

namespace flexh {

namespace {

void require_subprocess(const ActivityTree& tree, const std::string& sp) {
  if (!tree.contains(sp)) throw InvalidArgument("unknown tree node '" + sp + "'");
  if (tree.is_leaf(sp)) throw InvalidArgument("'" + sp + "' is a leaf, not a subprocess");
}

std::string violations_text(const TreeValidity& v) {
  std::string msg;
  for (const auto& [kind, text] : v.violations) {
    (void)kind;
    if (!msg.empty()) msg += "; ";
    msg += text;
  }
  return msg;
}

}  // namespace

Trace project(const Trace& trace, const std::set<std::string>& activities) {
  Trace result;
  result.case_id = trace.case_id;
  for (const auto& act : trace.activities)
    if (activities.count(act) != 0) result.activities.push_back(act);
  return result;
}

EventLog project_log(const EventLog& log, const ActivityTree& tree, const std::string& sp) {
  require_subprocess(tree, sp);
  std::set<std::string> keep;
  for (const auto& c : tree.children_of(sp)) {
    keep.insert(c);
    if (!tree.is_leaf(c)) {
      keep.insert(start_marker(c));
      keep.insert(end_marker(c));
    }
  }
  std::vector<Trace> projected;
  for (const auto& trace : log.traces) {
    Trace p = project(trace, keep);
    if (!p.activities.empty()) projected.push_back(std::move(p));
  }
  return make_log(std::move(projected));
}

Trace abstract(const Trace& trace, const std::string& sp,
               const std::set<std::string>& sp_activities) {
  std::size_t first = trace.activities.size(), last = 0;
  bool any = false;
  for (std::size_t i = 0; i < trace.activities.size(); ++i) {
    if (label_matches(trace.activities[i], sp_activities)) {
      if (!any) first = i;
      last = i;
      any = true;
    }
  }
  if (!any) return trace;

  Trace result;
  result.case_id = trace.case_id;
  result.activities.reserve(trace.activities.size());
  for (std::size_t i = 0; i < trace.activities.size(); ++i) {
    const std::string& act = trace.activities[i];
    if (!label_matches(act, sp_activities)) {
      result.activities.push_back(act);
      continue;
    }
    if (i == first) result.activities.push_back(start_marker(sp));
    // A lone subprocess event still opens and closes the span, so both
    // markers are emitted back to back.
    if (i == last) result.activities.push_back(end_marker(sp));
  }
  return result;
}

EventLog abstract_log(const EventLog& log, const ActivityTree& tree, const std::string& sp) {
  require_subprocess(tree, sp);
  std::set<std::string> sp_activities = tree.descendants(sp);
  std::vector<Trace> abstracted;
  abstracted.reserve(log.traces.size());
  for (const auto& trace : log.traces) abstracted.push_back(abstract(trace, sp, sp_activities));
  return make_log(std::move(abstracted));
}

HierarchicalModel build_hierarchy(const EventLog& log, const ActivityTree& tree,
                                  const DiscoveryFn& miner, int jobs) {
  TreeValidity validity = validate(tree, log.alphabet);
  if (!validity.ok)
    throw InvalidArgument("tree is not valid for the log: " + violations_text(validity));
  for (const auto& act : log.alphabet)
    if (has_reserved_suffix(act))
      throw InvalidArgument("activity '" + act + "' uses a reserved marker suffix");

  HierarchicalModel hm;
  hm.tree = tree;

  auto discover_level = [&](const std::vector<std::string>& subprocesses,
                            const std::vector<EventLog>& sublogs) {
    std::vector<std::optional<PetriNet>> models(subprocesses.size());
    std::vector<std::string> errors(subprocesses.size());
    parallel_for(subprocesses.size(), jobs, [&](std::size_t i) {
      try {
        models[i] = miner(sublogs[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
    for (std::size_t i = 0; i < subprocesses.size(); ++i) {
      hm.log_map[subprocesses[i]] = sublogs[i];
      if (models[i])
        hm.model_map[subprocesses[i]] = std::move(*models[i]);
      else
        hm.failures[subprocesses[i]] = errors[i];
    }
  };

  EventLog abstracted = log;
  int max_height = tree.max_height();
  std::map<std::string, int> heights = tree.heights();
  for (int i = 1; i <= max_height - 1; ++i) {
    std::vector<std::string> level;
    for (const auto& [n, h] : heights)
      if (h == i) level.push_back(n);  // std::map iteration: sorted labels

    // Sibling subtrees are disjoint: projecting every subprocess of the
    // level from the same snapshot equals interleaving projection with the
    // abstraction fold below.
    std::vector<EventLog> sublogs;
    sublogs.reserve(level.size());
    for (const auto& p : level) sublogs.push_back(project_log(abstracted, tree, p));
    discover_level(level, sublogs);
    for (const auto& p : level) abstracted = abstract_log(abstracted, tree, p);
  }
  discover_level({tree.root}, {abstracted});
  return hm;
}

EventLog collapse_markers(const EventLog& log) {
  std::vector<Trace> traces;
  traces.reserve(log.traces.size());
  for (const auto& trace : log.traces) {
    Trace t;
    t.case_id = trace.case_id;
    t.activities.reserve(trace.activities.size());
    for (const auto& a : trace.activities) t.activities.push_back(decode_label(a).base);
    traces.push_back(std::move(t));
  }
  return make_log(std::move(traces));
}

EventLog selective_abstract(const EventLog& log, const ActivityTree& tree,
                            const std::set<std::string>& hide) {
  for (const auto& sp : hide) require_subprocess(tree, sp);
  for (auto a = hide.begin(); a != hide.end(); ++a)
    for (auto b = std::next(a); b != hide.end(); ++b)
      if (!tree.non_related(*a, *b))
        throw InvalidArgument("'" + *a + "' and '" + *b + "' are related; cannot hide both");

  EventLog result = log;
  for (const auto& sp : hide) result = abstract_log(result, tree, sp);
  return result;
}

}  // namespace flexh
