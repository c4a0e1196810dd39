#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>

#include "flexh/activity_tree.hpp"
#include "flexh/event_log.hpp"
#include "flexh/petri_net.hpp"

namespace flexh {

// Flat discovery algorithm plugged into the hierarchy recursion.
using DiscoveryFn = std::function<PetriNet(const EventLog&)>;

// Per-subprocess sublogs and models over an activity tree. log_map and
// model_map share the domain {non-leaf nodes}; subprocesses whose discovery
// failed appear in failures instead of model_map.
struct HierarchicalModel {
  ActivityTree tree;
  std::map<std::string, EventLog> log_map;
  std::map<std::string, PetriNet> model_map;
  std::map<std::string, std::string> failures;
};

// Subsequence of `trace` with exactly the events whose label is in
// `activities`, order preserved.
Trace project(const Trace& trace, const std::set<std::string>& activities);

// Per-trace projection onto the children of `sp` (matching their start/end
// markers as well); traces whose projection is empty are dropped. Throws
// when sp is a leaf or unknown.
EventLog project_log(const EventLog& log, const ActivityTree& tree, const std::string& sp);

// Replaces the span of SP-events by start/end markers: the first SP-event
// becomes sp+start, the last becomes sp+end, interior SP-events disappear,
// non-SP events pass through. A trace with a single SP-event yields both
// markers consecutively; a trace with none is returned unchanged. Labels
// match `sp_activities` via label_matches (marker-aware).
Trace abstract(const Trace& trace, const std::string& sp,
               const std::set<std::string>& sp_activities);

// Whole-log abstraction of subprocess `sp`, matching all of its strict
// descendants. No traces are dropped: a trace of only SP-events becomes
// <sp+start, sp+end>. Throws when sp is a leaf or unknown.
EventLog abstract_log(const EventLog& log, const ActivityTree& tree, const std::string& sp);

// Bottom-up recursion over the tree: at each height, every subprocess is
// projected out of the running abstracted log, mined, then abstracted away;
// the root keeps the final abstracted log. Miner failures are recorded
// per subprocess and do not abort the rest. Throws InvalidArgument when the
// tree is invalid for the log's alphabet or the alphabet uses the reserved
// marker suffixes.
//
// Same-height subprocesses have disjoint subtrees, so their projections and
// discovery calls are independent; `jobs` > 1 runs the miners of one level
// concurrently. The abstraction fold between levels stays sequential, and
// the result does not depend on jobs.
HierarchicalModel build_hierarchy(const EventLog& log, const ActivityTree& tree,
                                  const DiscoveryFn& miner, int jobs = 1);

// Folds abstraction over `hide` (pairwise non-related non-leaf nodes, any
// order; the fold commutes). Throws on related, leaf, or unknown entries.
EventLog selective_abstract(const EventLog& log, const ActivityTree& tree,
                            const std::set<std::string>& hide);

// Rewrites sp+start / sp+end marker labels back to the bare subprocess
// label, for consumers that do not distinguish the two.
EventLog collapse_markers(const EventLog& log);

}  // namespace flexh
