#include "flexh/process_tree.hpp"

#include "flexh/error.hpp"

namespace flexh {

ProcessTree activity(std::string label) {
  ProcessTree t;
  t.kind = ProcessTree::Kind::Activity;
  t.label = std::move(label);
  return t;
}

ProcessTree silent() {
  ProcessTree t;
  t.kind = ProcessTree::Kind::Silent;
  return t;
}

namespace {

ProcessTree with_children(ProcessTree::Kind kind, std::vector<ProcessTree> children) {
  ProcessTree t;
  t.kind = kind;
  t.children = std::move(children);
  return t;
}

}  // namespace

ProcessTree sequence(std::vector<ProcessTree> children) {
  return with_children(ProcessTree::Kind::Sequence, std::move(children));
}

ProcessTree choice(std::vector<ProcessTree> children) {
  return with_children(ProcessTree::Kind::Choice, std::move(children));
}

ProcessTree parallel(std::vector<ProcessTree> children) {
  return with_children(ProcessTree::Kind::Parallel, std::move(children));
}

ProcessTree loop(std::vector<ProcessTree> children) {
  return with_children(ProcessTree::Kind::Loop, std::move(children));
}

void check_structure(const ProcessTree& tree) {
  switch (tree.kind) {
    case ProcessTree::Kind::Activity:
      if (tree.label.empty()) throw InvalidArgument("activity leaf without label");
      if (!tree.children.empty()) throw InvalidArgument("activity leaf with children");
      return;
    case ProcessTree::Kind::Silent:
      if (!tree.children.empty()) throw InvalidArgument("silent leaf with children");
      return;
    case ProcessTree::Kind::Loop:
      if (tree.children.size() < 2) throw InvalidArgument("loop needs a do-part and a redo part");
      break;
    default:
      if (tree.children.empty()) throw InvalidArgument("operator node without children");
      break;
  }
  if (!tree.label.empty()) throw InvalidArgument("operator node with a label");
  for (const auto& c : tree.children) check_structure(c);
}

std::string to_string(const ProcessTree& tree) {
  switch (tree.kind) {
    case ProcessTree::Kind::Activity: return tree.label;
    case ProcessTree::Kind::Silent: return "tau";
    default: break;
  }
  std::string op;
  switch (tree.kind) {
    case ProcessTree::Kind::Sequence: op = "seq"; break;
    case ProcessTree::Kind::Choice: op = "xor"; break;
    case ProcessTree::Kind::Parallel: op = "and"; break;
    case ProcessTree::Kind::Loop: op = "loop"; break;
    default: break;
  }
  std::string out = op + "(";
  for (std::size_t i = 0; i < tree.children.size(); ++i) {
    if (i) out += ", ";
    out += to_string(tree.children[i]);
  }
  return out + ")";
}

}  // namespace flexh
