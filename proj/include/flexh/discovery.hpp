#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "flexh/abstraction.hpp"
#include "flexh/event_log.hpp"
#include "flexh/petri_net.hpp"
#include "flexh/process_tree.hpp"

namespace flexh {

// Directly-follows relation with artificial start/end. Edge counts are
// occurrence counts over the whole log (multiset-weighted).
struct DirectlyFollowsGraph {
  std::set<std::string> activities;
  std::map<std::pair<std::string, std::string>, std::size_t> edges;
  std::map<std::string, std::size_t> start_counts;  // first events of traces
  std::map<std::string, std::size_t> end_counts;    // last events of traces

  bool has_edge(const std::string& a, const std::string& b) const {
    return edges.count({a, b}) != 0;
  }
};

DirectlyFollowsGraph build_dfg(const EventLog& log);

// Drops edges rarer than `threshold` times the strongest outgoing edge of
// their source (start/end sets filtered the same way against their maxima).
DirectlyFollowsGraph filter_dfg(const DirectlyFollowsGraph& dfg, double threshold);

// Inductive-miner base recursion: exclusive/sequence/parallel/loop cuts on
// the (filtered) DFG, flower-model fall-through. At threshold 0 the result
// replays every trace of the log.
ProcessTree discover_inductive(const EventLog& log, double noise_threshold = 0.0);

// Compositional workflow-net construction; language of the net equals the
// language of the tree. Single marked source, single final sink.
PetriNet tree_to_petri(const ProcessTree& tree);

// Baseline miner: the filtered DFG as a state-machine net. One labeled
// transition per retained activity, one place per retained edge, silent
// routing transitions where an activity has several in- or out-edges, unique
// initial/final places. Activities left without a start-to-end path by the
// filter are dropped, so the net stays connected via start/end.
PetriNet discover_dfg(const EventLog& log, double edge_filter = 0.0);

struct MinerConfig {
  std::string name = "inductive";  // inductive | dfg
  double noise_threshold = 0.0;    // inductive path filtering / dfg edge filter
};

// Dispatches to the configured miner. Throws InvalidArgument on an unknown
// name or an empty log.
PetriNet mine(const EventLog& log, const MinerConfig& config);

// The D parameter for build_hierarchy.
DiscoveryFn make_miner(const MinerConfig& config);

}  // namespace flexh
