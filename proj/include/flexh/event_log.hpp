#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace flexh {

// One row of an event stream, before grouping into traces.
struct Event {
  std::string case_id;
  std::string activity;  // non-empty
  std::optional<std::int64_t> timestamp_us;  // microseconds since epoch (UTC)
  std::map<std::string, std::string> attributes;
};

// Ordered activity sequence of one case.
struct Trace {
  std::string case_id;
  std::vector<std::string> activities;

  friend bool operator==(const Trace& a, const Trace& b) {
    return a.case_id == b.case_id && a.activities == b.activities;
  }
};

// Multiset of traces over an activity alphabet. Duplicate traces are kept
// and counted; `alphabet` is always exactly the set of labels occurring in
// `traces`. Immutable in practice: construct via make_log / the parsers and
// share freely across threads.
struct EventLog {
  std::vector<Trace> traces;
  std::set<std::string> alphabet;

  friend bool operator==(const EventLog& a, const EventLog& b) {
    return a.traces == b.traces && a.alphabet == b.alphabet;
  }
};

// Builds a log from traces, computing the alphabet.
EventLog make_log(std::vector<Trace> traces);

// Groups events into traces. Cases appear in first-occurrence order; within
// a case, events are stable-sorted by timestamp when every event of that
// case carries one. A case mixing timestamped and untimestamped events is
// rejected (InvalidArgument) to avoid silent misordering.
EventLog group_events(const std::vector<Event>& events);

// Multiset of activity sequences, ignoring case ids. Two logs with equal
// languages are interchangeable for discovery and evaluation.
std::map<std::vector<std::string>, std::size_t> language(const EventLog& log);

// ISO-8601 instant <-> microseconds since the Unix epoch. Accepted forms:
// YYYY-MM-DD, YYYY-MM-DDThh:mm:ss[.frac][Z|+hh:mm|-hh:mm] ('T' or ' ').
// Returns nullopt on malformed input.
std::optional<std::int64_t> parse_iso8601(const std::string& text);
std::string format_iso8601(std::int64_t micros);

}  // namespace flexh
