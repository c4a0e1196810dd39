#pragma once

#include <string>
#include <vector>

namespace flexh {

// Block-structured model produced by the inductive miner. Loop children are
// ordered do-part first, then redo parts.
struct ProcessTree {
  enum class Kind { Activity, Silent, Sequence, Choice, Parallel, Loop };

  Kind kind = Kind::Silent;
  std::string label;  // Activity leaves only
  std::vector<ProcessTree> children;

  bool leaf() const { return kind == Kind::Activity || kind == Kind::Silent; }

  friend bool operator==(const ProcessTree& a, const ProcessTree& b) {
    return a.kind == b.kind && a.label == b.label && a.children == b.children;
  }
};

ProcessTree activity(std::string label);
ProcessTree silent();
ProcessTree sequence(std::vector<ProcessTree> children);
ProcessTree choice(std::vector<ProcessTree> children);
ProcessTree parallel(std::vector<ProcessTree> children);
ProcessTree loop(std::vector<ProcessTree> children);  // do-part first, >= 2 children

// Throws InvalidArgument on arity violations (loop < 2 children, other
// operators empty, labeled non-leaf, ...).
void check_structure(const ProcessTree& tree);

std::string to_string(const ProcessTree& tree);

}  // namespace flexh
