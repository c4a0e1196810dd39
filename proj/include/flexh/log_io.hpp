#pragma once

#include <iosfwd>
#include <string>

#include "flexh/event_log.hpp"

namespace flexh {

enum class LogFormat { Csv, Xes };

// Throws InvalidArgument on anything but "csv" / "xes".
LogFormat log_format_from_name(const std::string& name);

// Format-dispatching wrappers over the csv/xes readers and writers;
// parse(write(log)) round-trips for both formats.
EventLog parse_log(std::istream& in, LogFormat format);
void write_log(const EventLog& log, LogFormat format, std::ostream& out);

}  // namespace flexh
