#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace flexh {

// Non-overlapping hierarchical clustering of activities. Leaves are the
// activities of the associated log; every non-leaf node is a subprocess.
// Children lists are kept sorted so serialization is deterministic.
// Immutable after construction.
struct ActivityTree {
  std::string root;
  std::set<std::string> nodes;
  std::map<std::string, std::vector<std::string>> children;  // absent/empty = leaf

  bool contains(const std::string& node) const { return nodes.count(node) != 0; }
  bool is_leaf(const std::string& node) const;
  const std::vector<std::string>& children_of(const std::string& node) const;

  // 0 for leaves, 1 + max over children otherwise. Throws on unknown node.
  int height(const std::string& node) const;
  std::map<std::string, int> heights() const;  // all nodes at once
  int max_height() const { return height(root); }

  std::vector<std::string> nodes_at_height(int h) const;
  std::vector<std::string> non_leaves() const;  // sorted

  // All strict descendants (any depth).
  std::set<std::string> descendants(const std::string& node) const;
  bool is_ancestor(const std::string& anc, const std::string& node) const;
  // Neither node is an ancestor of the other.
  bool non_related(const std::string& a, const std::string& b) const;

  friend bool operator==(const ActivityTree& a, const ActivityTree& b) {
    return a.root == b.root && a.nodes == b.nodes && a.children == b.children;
  }
};

enum class TreeViolation {
  OverlappingChildren,   // some node has two parents
  LeavesAlphabetMismatch,// leaf set != alphabet
  Disconnected,          // node without parent that is not the root, or unreachable
  SelfChild,             // x in children(x)
  NoRoot,                // root not in node set
};

struct TreeValidity {
  bool ok = true;
  std::vector<std::pair<TreeViolation, std::string>> violations;
};

// Checks the four tree constraints against the given alphabet. Violations
// are returned, not thrown.
TreeValidity validate(const ActivityTree& tree, const std::set<std::string>& alphabet);

// Builds the tree encoded in activity labels: the first `depth` separator-
// delimited prefix segments of each label form its ancestor chain, topped by
// a root node. Throws InvalidArgument naming the first label with too few
// segments for the requested depth.
ActivityTree tree_from_labels(const std::set<std::string>& alphabet, char separator = '_',
                              int depth = 1);

// Random clustering: repeatedly groups the current level's nodes into
// n = floor((|C|-1)/maxSize)+1 parents, each of size <= maxSize, until at
// most maxSize nodes remain; those become the root's children. Deterministic
// for a fixed seed. Throws when max_size < 2.
ActivityTree tree_random(const std::set<std::string>& alphabet, int max_size,
                         std::uint64_t seed);

// Height-1 tree: every activity a direct child of the root. Throws on an
// empty alphabet.
ActivityTree tree_flat(const std::set<std::string>& alphabet);

// JSON form: { "root": label, "children": { label: [labels...] } }.
std::string tree_to_json(const ActivityTree& tree);
ActivityTree tree_from_json(std::istream& in);
void write_tree_dot(const ActivityTree& tree, std::ostream& out);

}  // namespace flexh
