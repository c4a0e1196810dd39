#include "flexh/event_log.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "flexh/error.hpp"

namespace flexh {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return d[m - 1];
}

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yr + (m <= 2));
}

bool read_digits(const std::string& s, std::size_t& pos, int count, int& out) {
  int v = 0;
  for (int i = 0; i < count; ++i) {
    if (pos >= s.size() || s[pos] < '0' || s[pos] > '9') return false;
    v = v * 10 + (s[pos++] - '0');
  }
  out = v;
  return true;
}

}  // namespace

std::optional<std::int64_t> parse_iso8601(const std::string& text) {
  std::size_t pos = 0;
  int year, month, day;
  if (!read_digits(text, pos, 4, year)) return std::nullopt;
  if (pos >= text.size() || text[pos++] != '-') return std::nullopt;
  if (!read_digits(text, pos, 2, month)) return std::nullopt;
  if (pos >= text.size() || text[pos++] != '-') return std::nullopt;
  if (!read_digits(text, pos, 2, day)) return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month))
    return std::nullopt;

  std::int64_t micros = days_from_civil(year, month, day) * 86400LL * 1'000'000LL;
  if (pos == text.size()) return micros;

  if (text[pos] != 'T' && text[pos] != ' ') return std::nullopt;
  ++pos;
  int hh, mm, ss;
  if (!read_digits(text, pos, 2, hh)) return std::nullopt;
  if (pos >= text.size() || text[pos++] != ':') return std::nullopt;
  if (!read_digits(text, pos, 2, mm)) return std::nullopt;
  if (pos >= text.size() || text[pos++] != ':') return std::nullopt;
  if (!read_digits(text, pos, 2, ss)) return std::nullopt;
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  micros += (hh * 3600LL + mm * 60LL + ss) * 1'000'000LL;

  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::int64_t frac = 0, scale = 100'000;
    bool any = false;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (scale > 0) frac += (text[pos] - '0') * scale;
      scale /= 10;
      ++pos;
      any = true;
    }
    if (!any) return std::nullopt;
    micros += frac;
  }

  if (pos == text.size()) return micros;
  char sign = text[pos];
  if (sign == 'Z') return ++pos == text.size() ? std::optional<std::int64_t>(micros) : std::nullopt;
  if (sign != '+' && sign != '-') return std::nullopt;
  ++pos;
  int oh, om = 0;
  if (!read_digits(text, pos, 2, oh)) return std::nullopt;
  if (pos < text.size() && text[pos] == ':') ++pos;
  if (pos < text.size() && !read_digits(text, pos, 2, om)) return std::nullopt;
  if (pos != text.size() || oh > 14 || om > 59) return std::nullopt;
  std::int64_t offset = (oh * 3600LL + om * 60LL) * 1'000'000LL;
  return sign == '+' ? micros - offset : micros + offset;
}

std::string format_iso8601(std::int64_t micros) {
  std::int64_t days = micros / 86'400'000'000LL;
  std::int64_t rem = micros % 86'400'000'000LL;
  if (rem < 0) {
    rem += 86'400'000'000LL;
    --days;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  int hh = static_cast<int>(rem / 3'600'000'000LL);
  rem %= 3'600'000'000LL;
  int mm = static_cast<int>(rem / 60'000'000LL);
  rem %= 60'000'000LL;
  int ss = static_cast<int>(rem / 1'000'000LL);
  int us = static_cast<int>(rem % 1'000'000LL);
  char buf[40];
  if (us != 0)
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%06dZ", y, m, d, hh, mm, ss, us);
  else
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d, hh, mm, ss);
  return buf;
}

EventLog make_log(std::vector<Trace> traces) {
  EventLog log;
  log.traces = std::move(traces);
  for (const auto& t : log.traces)
    for (const auto& a : t.activities) log.alphabet.insert(a);
  return log;
}

EventLog group_events(const std::vector<Event>& events) {
  std::vector<std::string> case_order;
  std::map<std::string, std::vector<const Event*>> by_case;
  for (const auto& e : events) {
    if (e.activity.empty()) throw InvalidArgument("event with empty activity in case '" + e.case_id + "'");
    auto [it, inserted] = by_case.try_emplace(e.case_id);
    if (inserted) case_order.push_back(e.case_id);
    it->second.push_back(&e);
  }

  std::vector<Trace> traces;
  traces.reserve(case_order.size());
  for (const auto& cid : case_order) {
    auto& evs = by_case[cid];
    std::size_t stamped = 0;
    for (const Event* e : evs) stamped += e->timestamp_us.has_value();
    if (stamped != 0 && stamped != evs.size())
      throw InvalidArgument("case '" + cid + "' mixes timestamped and untimestamped events");
    if (stamped == evs.size())
      std::stable_sort(evs.begin(), evs.end(), [](const Event* a, const Event* b) {
        return *a->timestamp_us < *b->timestamp_us;
      });
    Trace t;
    t.case_id = cid;
    t.activities.reserve(evs.size());
    for (const Event* e : evs) t.activities.push_back(e->activity);
    traces.push_back(std::move(t));
  }
  return make_log(std::move(traces));
}

std::map<std::vector<std::string>, std::size_t> language(const EventLog& log) {
  std::map<std::vector<std::string>, std::size_t> counts;
  for (const auto& t : log.traces) ++counts[t.activities];
  return counts;
}

}  // namespace flexh
