#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "flexh/event_log.hpp"
#include "flexh/process_tree.hpp"
#include "flexh/rng.hpp"

namespace flexh::testing {

inline std::vector<std::string> make_alphabet(std::size_t n, const std::string& prefix = "a") {
  std::vector<std::string> acts;
  for (std::size_t i = 0; i < n; ++i) acts.push_back(prefix + std::to_string(i));
  return acts;
}

// Uniform random traces over a fresh alphabet; not guaranteed to use every
// letter, so the log's own alphabet is what matters downstream.
inline EventLog random_log(Rng& rng, std::size_t max_activities, std::size_t max_traces,
                           std::size_t max_len, std::size_t min_len = 1) {
  std::vector<std::string> acts = make_alphabet(1 + rng.below(max_activities));
  std::size_t n_traces = 1 + rng.below(max_traces);
  std::vector<Trace> traces;
  for (std::size_t i = 0; i < n_traces; ++i) {
    std::size_t len = min_len + rng.below(max_len - min_len + 1);
    Trace t;
    t.case_id = "c" + std::to_string(i);
    for (std::size_t j = 0; j < len; ++j) t.activities.push_back(acts[rng.below(acts.size())]);
    traces.push_back(std::move(t));
  }
  return make_log(std::move(traces));
}

// Random block-structured model over a fresh alphabet slice. Each activity
// appears exactly once, which keeps the language well-behaved for sampling.
inline ProcessTree random_process_tree(Rng& rng, std::vector<std::string>& pool, int depth) {
  if (pool.empty()) return silent();
  if (depth <= 0 || pool.size() == 1 || rng.below(4) == 0) {
    std::string a = pool.back();
    pool.pop_back();
    return activity(std::move(a));
  }
  std::size_t kind = rng.below(4);
  std::size_t arity = 2 + rng.below(2);
  std::vector<ProcessTree> children;
  for (std::size_t i = 0; i < arity && !pool.empty(); ++i)
    children.push_back(random_process_tree(rng, pool, depth - 1));
  if (children.size() < 2) return std::move(children.front());
  switch (kind) {
    case 0: return sequence(std::move(children));
    case 1: return choice(std::move(children));
    case 2: return parallel(std::move(children));
    default: return loop(std::move(children));
  }
}

inline ProcessTree random_process_tree(Rng& rng, std::size_t n_activities, int depth = 3) {
  std::vector<std::string> pool = make_alphabet(n_activities);
  std::reverse(pool.begin(), pool.end());
  return random_process_tree(rng, pool, depth);
}

inline std::vector<std::string> sample_word(const ProcessTree& tree, Rng& rng,
                                            int loop_bias = 3) {
  switch (tree.kind) {
    case ProcessTree::Kind::Activity: return {tree.label};
    case ProcessTree::Kind::Silent: return {};
    case ProcessTree::Kind::Sequence: {
      std::vector<std::string> w;
      for (const auto& c : tree.children) {
        auto part = sample_word(c, rng, loop_bias);
        w.insert(w.end(), part.begin(), part.end());
      }
      return w;
    }
    case ProcessTree::Kind::Choice:
      return sample_word(tree.children[rng.below(tree.children.size())], rng, loop_bias);
    case ProcessTree::Kind::Parallel: {
      std::vector<std::vector<std::string>> parts;
      for (const auto& c : tree.children) parts.push_back(sample_word(c, rng, loop_bias));
      std::vector<std::string> w;
      std::vector<std::size_t> at(parts.size(), 0);
      for (;;) {
        std::vector<std::size_t> open;
        for (std::size_t i = 0; i < parts.size(); ++i)
          if (at[i] < parts[i].size()) open.push_back(i);
        if (open.empty()) break;
        std::size_t pick = open[rng.below(open.size())];
        w.push_back(parts[pick][at[pick]++]);
      }
      return w;
    }
    case ProcessTree::Kind::Loop: {
      std::vector<std::string> w = sample_word(tree.children[0], rng, loop_bias);
      while (rng.below(loop_bias) == 0) {
        std::size_t redo = 1 + rng.below(tree.children.size() - 1);
        auto r = sample_word(tree.children[redo], rng, loop_bias);
        auto d = sample_word(tree.children[0], rng, loop_bias);
        w.insert(w.end(), r.begin(), r.end());
        w.insert(w.end(), d.begin(), d.end());
      }
      return w;
    }
  }
  return {};
}

inline EventLog sample_log(const ProcessTree& tree, Rng& rng, std::size_t n_traces) {
  std::vector<Trace> traces;
  for (std::size_t i = 0; i < n_traces; ++i)
    traces.push_back({"c" + std::to_string(i), sample_word(tree, rng)});
  return make_log(std::move(traces));
}

// Ground-truth hierarchical workload: a few subprocesses, each a fixed
// activity sequence, randomly interleaved per case. Labels carry the
// subprocess prefix so the label parser recovers the tree.
struct HierarchicalGroundTruth {
  EventLog log;
  int subprocess_count = 0;
};

inline HierarchicalGroundTruth hierarchical_ground_truth(std::uint64_t seed,
                                                         std::size_t n_traces = 30) {
  Rng rng(seed);
  int n_sp = 3 + static_cast<int>(rng.below(3));  // 3..5 subprocesses
  std::vector<std::vector<std::string>> sequences;
  for (int s = 0; s < n_sp; ++s) {
    int n_act = 4 + static_cast<int>(rng.below(5));  // 4..8 activities each
    std::vector<std::string> seq;
    for (int a = 0; a < n_act; ++a)
      seq.push_back("sp" + std::to_string(s) + "_a" + std::to_string(a));
    sequences.push_back(std::move(seq));
  }

  std::vector<Trace> traces;
  for (std::size_t i = 0; i < n_traces; ++i) {
    std::vector<std::size_t> at(sequences.size(), 0);
    Trace t;
    t.case_id = "c" + std::to_string(i);
    for (;;) {
      std::vector<std::size_t> open;
      for (std::size_t s = 0; s < sequences.size(); ++s)
        if (at[s] < sequences[s].size()) open.push_back(s);
      if (open.empty()) break;
      std::size_t pick = open[rng.below(open.size())];
      t.activities.push_back(sequences[pick][at[pick]++]);
    }
    traces.push_back(std::move(t));
  }
  return {make_log(std::move(traces)), n_sp};
}

}  // namespace flexh::testing
