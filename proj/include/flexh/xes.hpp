#pragma once

#include <iosfwd>

#include "flexh/event_log.hpp"

namespace flexh {

// Minimal XES subset: <log> containing <trace> elements, each containing
// <event> elements. An event's activity is its string attribute with key
// "concept:name" (required); "time:timestamp" (date attribute) is optional.
// Trace ordering follows the group_events contract.
EventLog parse_xes(std::istream& in);

// Writes the same subset back. Trace concept:name carries the case id;
// parse_xes(write_xes(L)) == L.
void write_xes(const EventLog& log, std::ostream& out);

}  // namespace flexh
