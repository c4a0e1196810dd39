#include "flexh/log_io.hpp"

#include "flexh/csv.hpp"
#include "flexh/error.hpp"
#include "flexh/xes.hpp"

namespace flexh {

LogFormat log_format_from_name(const std::string& name) {
  if (name == "csv") return LogFormat::Csv;
  if (name == "xes") return LogFormat::Xes;
  throw InvalidArgument("unknown log format '" + name + "'");
}

EventLog parse_log(std::istream& in, LogFormat format) {
  return format == LogFormat::Csv ? parse_csv(in) : parse_xes(in);
}

void write_log(const EventLog& log, LogFormat format, std::ostream& out) {
  if (format == LogFormat::Csv)
    write_csv(log, out);
  else
    write_xes(log, out);
}

}  // namespace flexh
