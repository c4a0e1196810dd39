#pragma once

#include <stdexcept>
#include <string>

namespace flexh {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input streams (CSV, XES, PNML, JSON bundles).
struct ParseError : Error {
  using Error::Error;
};

// Violated operation preconditions (invalid tree, unknown node, bad config).
struct InvalidArgument : Error {
  using Error::Error;
};

// State-space exploration hit the configured marking bound.
struct MarkingOverflow : Error {
  using Error::Error;
};

// The final marking cannot be reached from the initial one.
struct UnreachableFinalMarking : Error {
  using Error::Error;
};

}  // namespace flexh
