#include "flexh/xes.hpp"

#include <istream>
#include <ostream>

#include "flexh/error.hpp"
#include "flexh/xml.hpp"

namespace flexh {

namespace {

const std::string* find_attr_value(const XmlNode& element, const std::string& key) {
  for (const auto& child : element.children) {
    const std::string* k = child.attribute("key");
    if (k && *k == key) return child.attribute("value");
  }
  return nullptr;
}

}  // namespace

EventLog parse_xes(std::istream& in) {
  XmlNode root = parse_xml(in);
  if (root.name != "log") throw ParseError("XES: root element is <" + root.name + ">, expected <log>");

  std::vector<Trace> traces;
  std::size_t anon = 0;
  for (const auto& trace_el : root.children) {
    if (trace_el.name != "trace") continue;
    const std::string* name = find_attr_value(trace_el, "concept:name");
    std::string case_id = name ? *name : "trace-" + std::to_string(++anon);

    std::vector<Event> events;
    for (const auto& event_el : trace_el.children) {
      if (event_el.name != "event") continue;
      const std::string* activity = find_attr_value(event_el, "concept:name");
      if (!activity || activity->empty())
        throw ParseError("XES: event without concept:name in trace '" + case_id + "'");
      Event e;
      e.case_id = case_id;
      e.activity = *activity;
      const std::string* ts = find_attr_value(event_el, "time:timestamp");
      if (ts) {
        auto parsed = parse_iso8601(*ts);
        if (!parsed) throw ParseError("XES: malformed time:timestamp '" + *ts + "'");
        e.timestamp_us = *parsed;
      }
      events.push_back(std::move(e));
    }

    // Each <trace> element is its own multiset member even when names
    // repeat, so ordering is applied per element, not across the log.
    if (events.empty()) {
      traces.push_back(Trace{case_id, {}});
    } else {
      EventLog one = group_events(events);
      traces.push_back(std::move(one.traces.front()));
    }
  }
  return make_log(std::move(traces));
}

void write_xes(const EventLog& log, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<log xes.version=\"1.0\">\n";
  for (const auto& trace : log.traces) {
    out << "  <trace>\n";
    out << "    <string key=\"concept:name\" value=\"" << xml_escape(trace.case_id) << "\"/>\n";
    for (const auto& act : trace.activities) {
      out << "    <event>\n";
      out << "      <string key=\"concept:name\" value=\"" << xml_escape(act) << "\"/>\n";
      out << "    </event>\n";
    }
    out << "  </trace>\n";
  }
  out << "</log>\n";
}

}  // namespace flexh
