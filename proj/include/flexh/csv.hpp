#pragma once

#include <iosfwd>
#include <string>

#include "flexh/event_log.hpp"

namespace flexh {

// Column mapping for CSV ingestion. The timestamp column is optional: when
// named but absent from the header it is an error; when events simply have
// no values there, row order is kept.
struct CsvConfig {
  std::string case_column = "case";
  std::string activity_column = "activity";
  std::string timestamp_column = "timestamp";
  bool require_timestamp_column = false;
  char delimiter = ',';
};

// Parses a CSV stream (RFC-4180 quoting) into an event log. Rows are grouped
// by case and ordered per the group_events contract. Errors name the missing
// column or the offending row.
EventLog parse_csv(std::istream& in, const CsvConfig& config = {});

// Writes `case,activity` rows (header included), one per event, traces in
// log order. Timestamps and attributes are not part of EventLog and are not
// written; parse_csv(write_csv(L)) == L.
void write_csv(const EventLog& log, std::ostream& out, char delimiter = ',');

}  // namespace flexh
