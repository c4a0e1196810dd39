#include "flexh/csv.hpp"

#include <istream>
#include <ostream>

#include "flexh/error.hpp"

namespace flexh {

namespace {

// One record, RFC-4180 quoting. Returns false at end of input.
bool read_record(std::istream& in, char delim, std::vector<std::string>& fields) {
  fields.clear();
  int c = in.get();
  if (c == EOF) return false;
  std::string field;
  bool quoted = false;
  for (;;) {
    if (quoted) {
      if (c == EOF) throw ParseError("unterminated quoted field");
      if (c == '"') {
        int next = in.get();
        if (next == '"') {
          field.push_back('"');
        } else {
          quoted = false;
          c = next;
          continue;
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
    } else {
      if (c == EOF || c == '\n') break;
      if (c == '\r') {
        int next = in.peek();
        if (next == '\n') in.get();
        break;
      }
      if (c == '"' && field.empty()) {
        quoted = true;
      } else if (c == delim) {
        fields.push_back(std::move(field));
        field.clear();
      } else {
        field.push_back(static_cast<char>(c));
      }
    }
    c = in.get();
  }
  fields.push_back(std::move(field));
  return true;
}

bool needs_quoting(const std::string& s, char delim) {
  for (char c : s)
    if (c == delim || c == '"' || c == '\n' || c == '\r') return true;
  return false;
}

void write_field(std::ostream& out, const std::string& s, char delim) {
  if (!needs_quoting(s, delim)) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

EventLog parse_csv(std::istream& in, const CsvConfig& config) {
  std::vector<std::string> header;
  if (!read_record(in, config.delimiter, header)) throw ParseError("empty CSV input");

  int case_idx = -1, act_idx = -1, ts_idx = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == config.case_column) case_idx = static_cast<int>(i);
    if (header[i] == config.activity_column) act_idx = static_cast<int>(i);
    if (header[i] == config.timestamp_column) ts_idx = static_cast<int>(i);
  }
  if (case_idx < 0) throw ParseError("missing CSV column '" + config.case_column + "'");
  if (act_idx < 0) throw ParseError("missing CSV column '" + config.activity_column + "'");
  if (ts_idx < 0 && config.require_timestamp_column)
    throw ParseError("missing CSV column '" + config.timestamp_column + "'");

  std::vector<Event> events;
  std::vector<std::string> fields;
  std::size_t row = 1;
  while (read_record(in, config.delimiter, fields)) {
    ++row;
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    std::size_t needed = static_cast<std::size_t>(std::max(case_idx, act_idx)) + 1;
    if (fields.size() < needed)
      throw ParseError("row " + std::to_string(row) + ": expected at least " +
                       std::to_string(needed) + " fields, got " + std::to_string(fields.size()));
    Event e;
    e.case_id = fields[case_idx];
    e.activity = fields[act_idx];
    if (e.activity.empty())
      throw ParseError("row " + std::to_string(row) + ": empty activity");
    if (ts_idx >= 0 && static_cast<std::size_t>(ts_idx) < fields.size() &&
        !fields[ts_idx].empty()) {
      auto ts = parse_iso8601(fields[ts_idx]);
      if (!ts)
        throw ParseError("row " + std::to_string(row) + ": malformed timestamp '" +
                         fields[ts_idx] + "'");
      e.timestamp_us = *ts;
    }
    events.push_back(std::move(e));
  }
  if (events.empty()) throw ParseError("CSV input has no event rows");
  return group_events(events);
}

void write_csv(const EventLog& log, std::ostream& out, char delimiter) {
  out << "case" << delimiter << "activity\n";
  for (const auto& trace : log.traces) {
    for (const auto& act : trace.activities) {
      write_field(out, trace.case_id, delimiter);
      out << delimiter;
      write_field(out, act, delimiter);
      out << '\n';
    }
  }
}

}  // namespace flexh
