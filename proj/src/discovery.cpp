#include "flexh/discovery.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "flexh/error.hpp"

namespace flexh {

DirectlyFollowsGraph build_dfg(const EventLog& log) {
  DirectlyFollowsGraph dfg;
  dfg.activities = log.alphabet;
  for (const auto& trace : log.traces) {
    const auto& acts = trace.activities;
    if (acts.empty()) continue;
    ++dfg.start_counts[acts.front()];
    ++dfg.end_counts[acts.back()];
    for (std::size_t i = 0; i + 1 < acts.size(); ++i) ++dfg.edges[{acts[i], acts[i + 1]}];
  }
  return dfg;
}

DirectlyFollowsGraph filter_dfg(const DirectlyFollowsGraph& dfg, double threshold) {
  if (threshold <= 0.0) return dfg;
  DirectlyFollowsGraph out;
  out.activities = dfg.activities;

  std::map<std::string, std::size_t> max_out;
  for (const auto& [edge, count] : dfg.edges)
    max_out[edge.first] = std::max(max_out[edge.first], count);
  for (const auto& [edge, count] : dfg.edges)
    if (static_cast<double>(count) >= threshold * static_cast<double>(max_out[edge.first]))
      out.edges[edge] = count;

  auto filter_counts = [&](const std::map<std::string, std::size_t>& in) {
    std::map<std::string, std::size_t> kept;
    std::size_t max_count = 0;
    for (const auto& [a, c] : in) max_count = std::max(max_count, c);
    for (const auto& [a, c] : in)
      if (static_cast<double>(c) >= threshold * static_cast<double>(max_count)) kept[a] = c;
    return kept;
  };
  out.start_counts = filter_counts(dfg.start_counts);
  out.end_counts = filter_counts(dfg.end_counts);
  return out;
}

namespace {

using Group = std::set<std::string>;

struct Adjacency {
  std::set<std::string> nodes;
  std::map<std::string, std::set<std::string>> succ, pred, undirected;
  std::set<std::string> starts, ends;
};

Adjacency adjacency_of(const DirectlyFollowsGraph& dfg) {
  Adjacency adj;
  adj.nodes = dfg.activities;
  for (const auto& [edge, count] : dfg.edges) {
    (void)count;
    adj.succ[edge.first].insert(edge.second);
    adj.pred[edge.second].insert(edge.first);
    adj.undirected[edge.first].insert(edge.second);
    adj.undirected[edge.second].insert(edge.first);
  }
  for (const auto& [a, c] : dfg.start_counts) (void)c, adj.starts.insert(a);
  for (const auto& [a, c] : dfg.end_counts) (void)c, adj.ends.insert(a);
  return adj;
}

// Connected components over an undirected relation restricted to `universe`,
// ordered by smallest member.
std::vector<Group> components(const std::set<std::string>& universe,
                              const std::map<std::string, std::set<std::string>>& edges) {
  std::vector<Group> comps;
  std::set<std::string> seen;
  for (const auto& seed : universe) {
    if (seen.count(seed)) continue;
    Group comp;
    std::vector<std::string> stack{seed};
    seen.insert(seed);
    while (!stack.empty()) {
      std::string n = std::move(stack.back());
      stack.pop_back();
      comp.insert(n);
      auto it = edges.find(n);
      if (it == edges.end()) continue;
      for (const auto& m : it->second)
        if (universe.count(m) && seen.insert(m).second) stack.push_back(m);
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::vector<Group> exclusive_cut(const Adjacency& adj) {
  std::vector<Group> comps = components(adj.nodes, adj.undirected);
  if (comps.size() < 2) return {};
  return comps;
}

// Tarjan strongly connected components, then classes merged until totally
// ordered by reachability.
std::vector<Group> sequence_cut(const Adjacency& adj) {
  std::vector<std::string> order(adj.nodes.begin(), adj.nodes.end());
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = static_cast<int>(i);
  int n = static_cast<int>(order.size());

  std::vector<int> low(n, -1), disc(n, -1), comp_of(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int timer = 0, comp_count = 0;

  std::function<void(int)> tarjan = [&](int u) {
    disc[u] = low[u] = timer++;
    stack.push_back(u);
    on_stack[u] = true;
    auto it = adj.succ.find(order[u]);
    if (it != adj.succ.end()) {
      for (const auto& vs : it->second) {
        int v = index[vs];
        if (disc[v] == -1) {
          tarjan(v);
          low[u] = std::min(low[u], low[v]);
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], disc[v]);
        }
      }
    }
    if (low[u] == disc[u]) {
      while (true) {
        int v = stack.back();
        stack.pop_back();
        on_stack[v] = false;
        comp_of[v] = comp_count;
        if (v == u) break;
      }
      ++comp_count;
    }
  };
  for (int u = 0; u < n; ++u)
    if (disc[u] == -1) tarjan(u);

  // SCC-level reachability closure.
  std::vector<std::set<int>> scc_succ(comp_count);
  for (int u = 0; u < n; ++u) {
    auto it = adj.succ.find(order[u]);
    if (it == adj.succ.end()) continue;
    for (const auto& vs : it->second) {
      int v = index[vs];
      if (comp_of[u] != comp_of[v]) scc_succ[comp_of[u]].insert(comp_of[v]);
    }
  }
  std::vector<std::vector<bool>> reach(comp_count, std::vector<bool>(comp_count, false));
  for (int c = 0; c < comp_count; ++c) {
    std::vector<int> stk{c};
    while (!stk.empty()) {
      int x = stk.back();
      stk.pop_back();
      for (int y : scc_succ[x])
        if (!reach[c][y]) {
          reach[c][y] = true;
          stk.push_back(y);
        }
    }
  }

  // Union classes that cannot be ordered: unreachable both ways, or (after
  // earlier merges) reachable both ways.
  std::vector<int> parent(comp_count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto class_reach = [&](const std::vector<std::vector<int>>& members, int a, int b) {
    for (int x : members[a])
      for (int y : members[b])
        if (reach[x][y]) return true;
    return false;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<int, std::vector<int>> classes;
    for (int c = 0; c < comp_count; ++c) classes[find(c)].push_back(c);
    std::vector<int> roots;
    std::vector<std::vector<int>> members;
    for (auto& [root, mem] : classes) {
      roots.push_back(root);
      members.push_back(mem);
    }
    for (std::size_t i = 0; i < roots.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < roots.size() && !changed; ++j) {
        bool ij = class_reach(members, static_cast<int>(i), static_cast<int>(j));
        bool ji = class_reach(members, static_cast<int>(j), static_cast<int>(i));
        if (ij == ji) {  // both or neither: cannot be strictly ordered
          parent[find(roots[j])] = find(roots[i]);
          changed = true;
        }
      }
    }
  }

  std::map<int, Group> groups_by_root;
  for (int u = 0; u < n; ++u) groups_by_root[find(comp_of[u])].insert(order[u]);
  if (groups_by_root.size() < 2) return {};

  std::vector<int> roots;
  for (const auto& [root, g] : groups_by_root) (void)g, roots.push_back(root);
  std::map<int, std::vector<int>> class_members;
  for (int c = 0; c < comp_count; ++c) class_members[find(c)].push_back(c);
  auto root_reaches = [&](int ra, int rb) {
    for (int x : class_members[ra])
      for (int y : class_members[rb])
        if (reach[x][y]) return true;
    return false;
  };
  // Order by how many other classes each one reaches (a chain gives counts
  // n-1, n-2, ..., 0), then verify the order is a strict chain; reachability
  // between merged classes need not be transitive, so the check is on every
  // pair, not just neighbors.
  std::map<int, int> reach_count;
  for (int a : roots)
    for (int b : roots)
      if (a != b && root_reaches(a, b)) ++reach_count[a];
  std::stable_sort(roots.begin(), roots.end(),
                   [&](int a, int b) { return reach_count[a] > reach_count[b]; });
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (!root_reaches(roots[i], roots[j]) || root_reaches(roots[j], roots[i])) return {};

  std::vector<Group> groups;
  for (int r : roots) groups.push_back(groups_by_root[r]);
  return groups;
}

std::vector<Group> parallel_cut(const Adjacency& adj) {
  if (adj.starts.empty() || adj.ends.empty()) return {};
  // Nodes not mutually connected must share a group.
  std::map<std::string, std::set<std::string>> anti;
  for (const auto& a : adj.nodes) {
    for (const auto& b : adj.nodes) {
      if (a >= b) continue;
      auto ita = adj.succ.find(a);
      auto itb = adj.succ.find(b);
      bool ab = ita != adj.succ.end() && ita->second.count(b);
      bool ba = itb != adj.succ.end() && itb->second.count(a);
      if (!(ab && ba)) {
        anti[a].insert(b);
        anti[b].insert(a);
      }
    }
  }
  std::vector<Group> comps = components(adj.nodes, anti);
  if (comps.size() < 2) return {};

  // Every group needs a start and an end activity; groups lacking one are
  // folded into the first group that has both.
  std::vector<Group> good, bad;
  for (auto& comp : comps) {
    bool has_start = false, has_end = false;
    for (const auto& x : comp) {
      has_start = has_start || adj.starts.count(x);
      has_end = has_end || adj.ends.count(x);
    }
    (has_start && has_end ? good : bad).push_back(std::move(comp));
  }
  if (good.empty() || good.size() + (bad.empty() ? 0 : 1) < 2) return {};
  for (const auto& comp : bad) good.front().insert(comp.begin(), comp.end());
  if (good.size() < 2) return {};
  std::sort(good.begin(), good.end());
  return good;
}

// Returns groups with the do-body first.
std::vector<Group> loop_cut(const Adjacency& adj) {
  if (adj.starts.empty() || adj.ends.empty()) return {};
  Group core;
  core.insert(adj.starts.begin(), adj.starts.end());
  core.insert(adj.ends.begin(), adj.ends.end());
  if (core.size() == adj.nodes.size()) return {};

  std::set<std::string> rest;
  for (const auto& n : adj.nodes)
    if (!core.count(n)) rest.insert(n);

  Group do_body = core;
  std::vector<Group> redos;
  for (auto& comp : components(rest, adj.undirected)) {
    bool ok = true;
    std::set<std::string> entries, exits;
    for (const auto& c : comp) {
      auto itp = adj.pred.find(c);
      if (itp != adj.pred.end()) {
        for (const auto& x : itp->second) {
          if (comp.count(x)) continue;
          if (!adj.ends.count(x)) ok = false;  // entered from a non-end
          entries.insert(c);
        }
      }
      auto its = adj.succ.find(c);
      if (its != adj.succ.end()) {
        for (const auto& x : its->second) {
          if (comp.count(x)) continue;
          if (!adj.starts.count(x)) ok = false;  // leaves to a non-start
          exits.insert(c);
        }
      }
    }
    if (entries.empty() || exits.empty()) ok = false;
    // Redo entries/exits must connect to every end/start, or replay breaks
    // for runs that took another end/start.
    if (ok) {
      for (const auto& c : entries)
        for (const auto& e : adj.ends) {
          auto it = adj.succ.find(e);
          if (it == adj.succ.end() || !it->second.count(c)) ok = false;
        }
      for (const auto& c : exits)
        for (const auto& s : adj.starts) {
          auto it = adj.succ.find(c);
          if (it == adj.succ.end() || !it->second.count(s)) ok = false;
        }
    }
    if (ok)
      redos.push_back(std::move(comp));
    else
      do_body.insert(comp.begin(), comp.end());
  }
  if (redos.empty()) return {};
  std::sort(redos.begin(), redos.end());
  std::vector<Group> groups{std::move(do_body)};
  for (auto& r : redos) groups.push_back(std::move(r));
  return groups;
}

std::map<std::string, int> group_index(const std::vector<Group>& groups) {
  std::map<std::string, int> idx;
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (const auto& a : groups[g]) idx[a] = static_cast<int>(g);
  return idx;
}

std::vector<EventLog> split_exclusive(const EventLog& log, const std::vector<Group>& groups) {
  std::vector<std::vector<Trace>> parts(groups.size());
  auto idx = group_index(groups);
  for (const auto& trace : log.traces) {
    std::vector<int> overlap(groups.size(), 0);
    for (const auto& a : trace.activities) {
      auto it = idx.find(a);
      if (it != idx.end()) ++overlap[it->second];
    }
    int best = static_cast<int>(std::max_element(overlap.begin(), overlap.end()) -
                                overlap.begin());
    Trace kept;
    kept.case_id = trace.case_id;
    for (const auto& a : trace.activities)
      if (groups[best].count(a)) kept.activities.push_back(a);
    parts[best].push_back(std::move(kept));
  }
  std::vector<EventLog> logs;
  for (auto& p : parts) logs.push_back(make_log(std::move(p)));
  return logs;
}

std::vector<EventLog> split_sequence(const EventLog& log, const std::vector<Group>& groups) {
  auto idx = group_index(groups);
  std::vector<std::vector<Trace>> parts(groups.size());
  for (const auto& trace : log.traces) {
    std::vector<Trace> segs(groups.size());
    for (auto& s : segs) s.case_id = trace.case_id;
    int current = 0;
    for (const auto& a : trace.activities) {
      auto it = idx.find(a);
      if (it == idx.end()) continue;
      if (it->second >= current) {
        current = it->second;
        segs[current].activities.push_back(a);
      }
      // events pointing back before the current segment are noise: dropped
    }
    for (std::size_t g = 0; g < groups.size(); ++g) parts[g].push_back(std::move(segs[g]));
  }
  std::vector<EventLog> logs;
  for (auto& p : parts) logs.push_back(make_log(std::move(p)));
  return logs;
}

std::vector<EventLog> split_parallel(const EventLog& log, const std::vector<Group>& groups) {
  std::vector<std::vector<Trace>> parts(groups.size());
  for (const auto& trace : log.traces) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      Trace sub;
      sub.case_id = trace.case_id;
      for (const auto& a : trace.activities)
        if (groups[g].count(a)) sub.activities.push_back(a);
      parts[g].push_back(std::move(sub));
    }
  }
  std::vector<EventLog> logs;
  for (auto& p : parts) logs.push_back(make_log(std::move(p)));
  return logs;
}

// Do-instances alternate with redo-instances; empty do-instances are kept so
// every trace contributes one more do than redos.
std::vector<EventLog> split_loop(const EventLog& log, const std::vector<Group>& groups) {
  auto idx = group_index(groups);
  std::vector<std::vector<Trace>> parts(groups.size());
  for (const auto& trace : log.traces) {
    int current = 0;
    Trace seg;
    seg.case_id = trace.case_id;
    auto flush = [&](int group) {
      parts[group].push_back(std::move(seg));
      seg = Trace{};
      seg.case_id = trace.case_id;
    };
    for (const auto& a : trace.activities) {
      auto it = idx.find(a);
      if (it == idx.end()) continue;
      int g = it->second;
      if (g != current) {
        if (current != 0 && g != 0) {
          flush(current);  // redo -> redo: synthesize the empty do between
          flush(0);
        } else {
          flush(current);
        }
        current = g;
      }
      seg.activities.push_back(a);
    }
    flush(current);
    if (current != 0) flush(0);  // trace ended inside a redo
  }
  std::vector<EventLog> logs;
  for (auto& p : parts) logs.push_back(make_log(std::move(p)));
  return logs;
}

ProcessTree flower(const std::set<std::string>& activities) {
  std::vector<ProcessTree> children{silent()};
  for (const auto& a : activities) children.push_back(activity(a));
  if (children.size() == 1) return silent();
  return loop(std::move(children));
}

ProcessTree im_recurse(const EventLog& log, double threshold) {
  if (log.traces.empty()) return silent();

  std::size_t empties = 0;
  for (const auto& t : log.traces) empties += t.activities.empty();
  if (empties == log.traces.size()) return silent();
  if (empties > 0) {
    std::vector<Trace> rest;
    for (const auto& t : log.traces)
      if (!t.activities.empty()) rest.push_back(t);
    return choice({silent(), im_recurse(make_log(std::move(rest)), threshold)});
  }

  if (log.alphabet.size() == 1) {
    const std::string& a = *log.alphabet.begin();
    bool all_single = true;
    for (const auto& t : log.traces) all_single = all_single && t.activities.size() == 1;
    if (all_single) return activity(a);
    return loop({activity(a), silent()});  // a repeated, at least once
  }

  DirectlyFollowsGraph dfg = filter_dfg(build_dfg(log), threshold);
  Adjacency adj = adjacency_of(dfg);

  if (auto groups = exclusive_cut(adj); !groups.empty()) {
    std::vector<ProcessTree> children;
    for (auto& sub : split_exclusive(log, groups)) children.push_back(im_recurse(sub, threshold));
    return choice(std::move(children));
  }
  if (auto groups = sequence_cut(adj); !groups.empty()) {
    std::vector<ProcessTree> children;
    for (auto& sub : split_sequence(log, groups)) children.push_back(im_recurse(sub, threshold));
    return sequence(std::move(children));
  }
  if (auto groups = parallel_cut(adj); !groups.empty()) {
    std::vector<ProcessTree> children;
    for (auto& sub : split_parallel(log, groups)) children.push_back(im_recurse(sub, threshold));
    return parallel(std::move(children));
  }
  if (auto groups = loop_cut(adj); !groups.empty()) {
    std::vector<ProcessTree> children;
    for (auto& sub : split_loop(log, groups)) children.push_back(im_recurse(sub, threshold));
    return loop(std::move(children));
  }
  return flower(log.alphabet);
}

}  // namespace

ProcessTree discover_inductive(const EventLog& log, double noise_threshold) {
  if (log.traces.empty()) throw InvalidArgument("cannot discover from an empty log");
  if (noise_threshold < 0.0 || noise_threshold > 1.0)
    throw InvalidArgument("noise threshold must be in [0,1]");
  ProcessTree tree = im_recurse(log, noise_threshold);
  check_structure(tree);
  return tree;
}

namespace {

class NetBuilder {
 public:
  int add_place() {
    net_.places.push_back("p" + std::to_string(net_.places.size()));
    return static_cast<int>(net_.places.size()) - 1;
  }

  void add_transition(std::optional<std::string> label, std::vector<int> pre,
                      std::vector<int> post) {
    PetriNet::Transition t;
    t.id = "t" + std::to_string(net_.transitions.size());
    t.label = std::move(label);
    std::sort(pre.begin(), pre.end());
    std::sort(post.begin(), post.end());
    t.pre = std::move(pre);
    t.post = std::move(post);
    net_.transitions.push_back(std::move(t));
  }

  PetriNet finish(int source, int sink) {
    net_.initial.assign(net_.places.size(), 0);
    net_.final.assign(net_.places.size(), 0);
    net_.initial[source] = 1;
    net_.final[sink] = 1;
    net_.check();
    return std::move(net_);
  }

 private:
  PetriNet net_;
};

void build_net(const ProcessTree& tree, int entry, int exit, NetBuilder& b) {
  switch (tree.kind) {
    case ProcessTree::Kind::Activity:
      b.add_transition(tree.label, {entry}, {exit});
      return;
    case ProcessTree::Kind::Silent:
      b.add_transition(std::nullopt, {entry}, {exit});
      return;
    case ProcessTree::Kind::Sequence: {
      int from = entry;
      for (std::size_t i = 0; i < tree.children.size(); ++i) {
        int to = i + 1 == tree.children.size() ? exit : b.add_place();
        build_net(tree.children[i], from, to, b);
        from = to;
      }
      return;
    }
    case ProcessTree::Kind::Choice:
      for (const auto& c : tree.children) build_net(c, entry, exit, b);
      return;
    case ProcessTree::Kind::Parallel: {
      std::vector<int> ins, outs;
      for (std::size_t i = 0; i < tree.children.size(); ++i) {
        ins.push_back(b.add_place());
        outs.push_back(b.add_place());
      }
      b.add_transition(std::nullopt, {entry}, ins);
      for (std::size_t i = 0; i < tree.children.size(); ++i)
        build_net(tree.children[i], ins[i], outs[i], b);
      b.add_transition(std::nullopt, outs, {exit});
      return;
    }
    case ProcessTree::Kind::Loop: {
      // Dedicated boundary places keep the redo parts from firing off the
      // caller's entry place.
      int body_in = b.add_place();
      int body_out = b.add_place();
      b.add_transition(std::nullopt, {entry}, {body_in});
      build_net(tree.children[0], body_in, body_out, b);
      for (std::size_t i = 1; i < tree.children.size(); ++i)
        build_net(tree.children[i], body_out, body_in, b);
      b.add_transition(std::nullopt, {body_out}, {exit});
      return;
    }
  }
}

}  // namespace

PetriNet tree_to_petri(const ProcessTree& tree) {
  check_structure(tree);
  NetBuilder b;
  int source = b.add_place();
  int sink = b.add_place();
  build_net(tree, source, sink, b);
  return b.finish(source, sink);
}

namespace {

const std::string kVirtualStart = "\x02start";
const std::string kVirtualEnd = "\x02end";

using EdgeCount = std::map<std::pair<std::string, std::string>, std::size_t>;

// Nodes reachable from `from` over `edges` (forward or backward).
std::set<std::string> closure(const EdgeCount& edges, const std::string& from, bool forward) {
  std::map<std::string, std::set<std::string>> adj;
  for (const auto& [e, c] : edges) {
    (void)c;
    if (forward)
      adj[e.first].insert(e.second);
    else
      adj[e.second].insert(e.first);
  }
  std::set<std::string> seen{from};
  std::vector<std::string> stack{from};
  while (!stack.empty()) {
    std::string n = std::move(stack.back());
    stack.pop_back();
    for (const auto& m : adj[n])
      if (seen.insert(m).second) stack.push_back(m);
  }
  return seen;
}

}  // namespace

PetriNet discover_dfg(const EventLog& log, double edge_filter) {
  if (log.traces.empty()) throw InvalidArgument("cannot discover from an empty log");
  if (edge_filter < 0.0 || edge_filter > 1.0)
    throw InvalidArgument("edge filter must be in [0,1]");

  DirectlyFollowsGraph full = build_dfg(log);
  DirectlyFollowsGraph kept = filter_dfg(full, edge_filter);

  // Work over one edge relation including the virtual start/end.
  EdgeCount edges;
  for (const auto& [e, c] : kept.edges) edges[e] = c;
  for (const auto& [a, c] : kept.start_counts) edges[{kVirtualStart, a}] = c;
  for (const auto& [a, c] : kept.end_counts) edges[{a, kVirtualEnd}] = c;

  // Activities stranded by the filter (no start-to-end path any more) are
  // dropped along with their edges, repeatedly: removing one activity can
  // strand the next.
  std::set<std::string> retained = full.activities;
  for (;;) {
    std::set<std::string> fwd = closure(edges, kVirtualStart, true);
    std::set<std::string> bwd = closure(edges, kVirtualEnd, false);
    std::set<std::string> bad;
    for (const auto& a : retained)
      if (!fwd.count(a) || !bwd.count(a)) bad.insert(a);
    if (bad.empty()) break;
    for (const auto& a : bad) retained.erase(a);
    EdgeCount pruned;
    for (const auto& [e, c] : edges)
      if (!bad.count(e.first) && !bad.count(e.second)) pruned[e] = c;
    edges = std::move(pruned);
  }
  if (retained.empty()) throw InvalidArgument("edge filter removed every activity");

  // Assemble the state-machine net.
  NetBuilder b;
  int source = b.add_place();
  int sink = b.add_place();
  std::map<std::pair<std::string, std::string>, int> edge_place;
  for (const auto& [e, c] : edges) {
    (void)c;
    if (e.first == kVirtualStart || e.second == kVirtualEnd) continue;
    edge_place[e] = b.add_place();
  }

  std::map<std::string, std::vector<int>> in_places, out_places;
  for (const auto& [e, c] : edges) {
    (void)c;
    if (e.first == kVirtualStart)
      in_places[e.second].push_back(source);
    else if (e.second == kVirtualEnd)
      out_places[e.first].push_back(sink);
    else {
      out_places[e.first].push_back(edge_place[e]);
      in_places[e.second].push_back(edge_place[e]);
    }
  }

  for (const auto& a : retained) {
    std::vector<int>& in = in_places[a];
    std::vector<int>& out = out_places[a];
    int pre = in.size() == 1 ? in[0] : b.add_place();
    if (in.size() > 1)
      for (int p : in) b.add_transition(std::nullopt, {p}, {pre});
    int post = out.size() == 1 ? out[0] : b.add_place();
    b.add_transition(a, {pre}, {post});
    if (out.size() > 1)
      for (int p : out) b.add_transition(std::nullopt, {post}, {p});
  }
  return b.finish(source, sink);
}

PetriNet mine(const EventLog& log, const MinerConfig& config) {
  if (log.traces.empty()) throw InvalidArgument("cannot discover from an empty log");
  if (config.name == "inductive")
    return tree_to_petri(discover_inductive(log, config.noise_threshold));
  if (config.name == "dfg") return discover_dfg(log, config.noise_threshold);
  throw InvalidArgument("unknown miner '" + config.name + "'");
}

DiscoveryFn make_miner(const MinerConfig& config) {
  if (config.name != "inductive" && config.name != "dfg")
    throw InvalidArgument("unknown miner '" + config.name + "'");
  return [config](const EventLog& log) { return mine(log, config); };
}

}  // namespace flexh
