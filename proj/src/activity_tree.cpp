#include "flexh/activity_tree.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "flexh/error.hpp"
#include "flexh/rng.hpp"

namespace flexh {

namespace {

const std::vector<std::string> kNoChildren;

// Picks a node name not already taken; the plain candidate wins when free.
std::string fresh_label(std::string candidate, const std::set<std::string>& taken) {
  std::string label = candidate;
  while (taken.count(label) != 0) label += "'";
  return label;
}

}  // namespace

bool ActivityTree::is_leaf(const std::string& node) const {
  auto it = children.find(node);
  return it == children.end() || it->second.empty();
}

const std::vector<std::string>& ActivityTree::children_of(const std::string& node) const {
  auto it = children.find(node);
  return it == children.end() ? kNoChildren : it->second;
}

int ActivityTree::height(const std::string& node) const {
  if (!contains(node)) throw InvalidArgument("unknown tree node '" + node + "'");
  std::map<std::string, int> memo;
  std::function<int(const std::string&)> rec = [&](const std::string& n) -> int {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    int h = 0;
    for (const auto& c : children_of(n)) h = std::max(h, 1 + rec(c));
    memo[n] = h;
    return h;
  };
  return rec(node);
}

std::map<std::string, int> ActivityTree::heights() const {
  std::map<std::string, int> memo;
  std::function<int(const std::string&)> rec = [&](const std::string& n) -> int {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    int h = 0;
    for (const auto& c : children_of(n)) h = std::max(h, 1 + rec(c));
    memo[n] = h;
    return h;
  };
  for (const auto& n : nodes) rec(n);
  return memo;
}

std::vector<std::string> ActivityTree::nodes_at_height(int h) const {
  std::vector<std::string> result;
  for (const auto& [n, hn] : heights())
    if (hn == h) result.push_back(n);
  return result;
}

std::vector<std::string> ActivityTree::non_leaves() const {
  std::vector<std::string> result;
  for (const auto& n : nodes)
    if (!is_leaf(n)) result.push_back(n);
  return result;
}

std::set<std::string> ActivityTree::descendants(const std::string& node) const {
  if (!contains(node)) throw InvalidArgument("unknown tree node '" + node + "'");
  std::set<std::string> result;
  std::vector<std::string> stack{node};
  while (!stack.empty()) {
    std::string n = std::move(stack.back());
    stack.pop_back();
    for (const auto& c : children_of(n)) {
      if (result.insert(c).second) stack.push_back(c);
    }
  }
  return result;
}

bool ActivityTree::is_ancestor(const std::string& anc, const std::string& node) const {
  return descendants(anc).count(node) != 0;
}

bool ActivityTree::non_related(const std::string& a, const std::string& b) const {
  return a != b && !is_ancestor(a, b) && !is_ancestor(b, a);
}

TreeValidity validate(const ActivityTree& tree, const std::set<std::string>& alphabet) {
  TreeValidity v;
  auto report = [&](TreeViolation kind, std::string msg) {
    v.ok = false;
    v.violations.emplace_back(kind, std::move(msg));
  };

  if (!tree.contains(tree.root)) {
    report(TreeViolation::NoRoot, "root '" + tree.root + "' is not a tree node");
    return v;
  }

  // (1) children of any two labels do not overlap; no node is its own child
  std::map<std::string, std::string> parent;
  for (const auto& [node, kids] : tree.children) {
    for (const auto& c : kids) {
      if (c == node) report(TreeViolation::SelfChild, "'" + node + "' lists itself as a child");
      auto [it, inserted] = parent.try_emplace(c, node);
      if (!inserted && it->second != node)
        report(TreeViolation::OverlappingChildren,
               "'" + c + "' is a child of both '" + it->second + "' and '" + node + "'");
      else if (!inserted)
        report(TreeViolation::OverlappingChildren,
               "'" + c + "' appears twice under '" + node + "'");
    }
  }

  // (2) the leaves are exactly the alphabet
  std::set<std::string> leaves;
  for (const auto& n : tree.nodes)
    if (tree.is_leaf(n)) leaves.insert(n);
  for (const auto& l : leaves)
    if (alphabet.count(l) == 0)
      report(TreeViolation::LeavesAlphabetMismatch, "leaf '" + l + "' is not a log activity");
  for (const auto& a : alphabet)
    if (leaves.count(a) == 0)
      report(TreeViolation::LeavesAlphabetMismatch, "activity '" + a + "' is not a tree leaf");

  // (3) connected: children are nodes, everything but the root has exactly
  // one parent, and the root is reachable to every node
  for (const auto& [node, kids] : tree.children) {
    if (!tree.contains(node))
      report(TreeViolation::Disconnected, "children map names unknown node '" + node + "'");
    for (const auto& c : kids)
      if (!tree.contains(c))
        report(TreeViolation::Disconnected, "child '" + c + "' of '" + node + "' is not a node");
  }
  if (parent.count(tree.root) != 0)
    report(TreeViolation::Disconnected, "root '" + tree.root + "' has a parent");
  for (const auto& n : tree.nodes)
    if (n != tree.root && parent.count(n) == 0)
      report(TreeViolation::Disconnected, "'" + n + "' has no parent and is not the root");

  std::set<std::string> reachable{tree.root};
  std::vector<std::string> stack{tree.root};
  while (!stack.empty()) {
    std::string n = std::move(stack.back());
    stack.pop_back();
    for (const auto& c : tree.children_of(n))
      if (tree.contains(c) && reachable.insert(c).second) stack.push_back(c);
  }
  for (const auto& n : tree.nodes)
    if (reachable.count(n) == 0)
      report(TreeViolation::Disconnected, "'" + n + "' is not reachable from the root");

  return v;
}

ActivityTree tree_from_labels(const std::set<std::string>& alphabet, char separator, int depth) {
  if (alphabet.empty()) throw InvalidArgument("empty alphabet");
  if (depth < 1) throw InvalidArgument("depth must be >= 1");

  // First pass: collect every prefix chain so the root label can avoid them.
  std::set<std::string> nodes = alphabet;
  std::set<std::pair<std::string, std::string>> edges;  // parent -> child
  std::set<std::string> top_level;
  for (const auto& label : alphabet) {
    std::vector<std::size_t> cuts;  // positions of separators
    for (std::size_t i = 0; i < label.size(); ++i)
      if (label[i] == separator) cuts.push_back(i);
    int segments = static_cast<int>(cuts.size()) + 1;
    if (depth >= segments)
      throw InvalidArgument("label '" + label + "' has only " + std::to_string(segments) +
                            " segment(s); cannot take a depth-" + std::to_string(depth) +
                            " prefix chain");
    std::string parent;
    for (int d = 1; d <= depth; ++d) {
      std::string prefix = label.substr(0, cuts[d - 1]);
      nodes.insert(prefix);
      if (d == 1)
        top_level.insert(prefix);
      else
        edges.insert({parent, prefix});
      parent = prefix;
    }
    edges.insert({parent, label});
  }

  ActivityTree tree;
  tree.root = fresh_label("root", nodes);
  tree.nodes = std::move(nodes);
  tree.nodes.insert(tree.root);
  for (const auto& p : top_level) edges.insert({tree.root, p});

  for (const auto& [p, c] : edges) tree.children[p].push_back(c);
  for (auto& [p, kids] : tree.children) std::sort(kids.begin(), kids.end());
  return tree;
}

ActivityTree tree_random(const std::set<std::string>& alphabet, int max_size,
                         std::uint64_t seed) {
  if (max_size < 2) throw InvalidArgument("max_size must be >= 2");
  if (alphabet.empty()) throw InvalidArgument("empty alphabet");

  ActivityTree tree;
  tree.nodes = alphabet;
  Rng rng(seed);

  std::vector<std::string> current(alphabet.begin(), alphabet.end());
  int level = 0;
  while (current.size() > static_cast<std::size_t>(max_size)) {
    ++level;
    std::size_t n = (current.size() - 1) / static_cast<std::size_t>(max_size) + 1;
    std::vector<std::string> parents;
    parents.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
      std::string label = fresh_label(
          "sp" + std::to_string(i) + "-h" + std::to_string(level), tree.nodes);
      tree.nodes.insert(label);
      tree.children[label];  // start empty
      parents.push_back(label);
    }
    for (const auto& child : current) {
      std::vector<std::string> open;
      for (const auto& p : parents)
        if (tree.children[p].size() < static_cast<std::size_t>(max_size)) open.push_back(p);
      const std::string& pick = open[rng.below(open.size())];
      tree.children[pick].push_back(child);
    }
    current = std::move(parents);
  }

  tree.root = fresh_label("root", tree.nodes);
  tree.nodes.insert(tree.root);
  tree.children[tree.root] = current;

  for (auto& [p, kids] : tree.children) std::sort(kids.begin(), kids.end());
  return tree;
}

ActivityTree tree_flat(const std::set<std::string>& alphabet) {
  if (alphabet.empty()) throw InvalidArgument("empty alphabet");
  ActivityTree tree;
  tree.root = fresh_label("root", alphabet);
  tree.nodes = alphabet;
  tree.nodes.insert(tree.root);
  tree.children[tree.root].assign(alphabet.begin(), alphabet.end());
  return tree;
}

std::string tree_to_json(const ActivityTree& tree) {
  nlohmann::json j;
  j["root"] = tree.root;
  nlohmann::json kids = nlohmann::json::object();
  for (const auto& [node, ch] : tree.children)
    if (!ch.empty()) kids[node] = ch;
  j["children"] = kids;
  return j.dump(2) + "\n";
}

ActivityTree tree_from_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tree JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("root") || !j.contains("children"))
    throw ParseError("tree JSON: expected {root, children}");
  ActivityTree tree;
  tree.root = j["root"].get<std::string>();
  tree.nodes.insert(tree.root);
  for (auto it = j["children"].begin(); it != j["children"].end(); ++it) {
    tree.nodes.insert(it.key());
    auto& kids = tree.children[it.key()];
    for (const auto& c : it.value()) {
      kids.push_back(c.get<std::string>());
      tree.nodes.insert(c.get<std::string>());
    }
    std::sort(kids.begin(), kids.end());
  }
  return tree;
}

void write_tree_dot(const ActivityTree& tree, std::ostream& out) {
  out << "digraph activity_tree {\n  rankdir=TB;\n";
  int id = 0;
  std::map<std::string, int> ids;
  for (const auto& n : tree.nodes) ids[n] = id++;
  for (const auto& n : tree.nodes) {
    out << "  n" << ids[n] << " [label=\"" << n << "\""
        << (tree.is_leaf(n) ? "" : " shape=box") << "];\n";
  }
  for (const auto& [p, kids] : tree.children)
    for (const auto& c : kids) out << "  n" << ids[p] << " -> n" << ids[c] << ";\n";
  out << "}\n";
}

}  // namespace flexh
