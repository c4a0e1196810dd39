#include "flexh/markers.hpp"

namespace flexh {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() > suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string start_marker(const std::string& base) { return base + kStartSuffix; }
std::string end_marker(const std::string& base) { return base + kEndSuffix; }

MarkedLabel decode_label(const std::string& label) {
  if (ends_with(label, kStartSuffix))
    return {label.substr(0, label.size() - kStartSuffix.size()), MarkerKind::Start};
  if (ends_with(label, kEndSuffix))
    return {label.substr(0, label.size() - kEndSuffix.size()), MarkerKind::End};
  return {label, MarkerKind::Plain};
}

std::string encode_label(const MarkedLabel& ml) {
  switch (ml.kind) {
    case MarkerKind::Start: return start_marker(ml.base);
    case MarkerKind::End: return end_marker(ml.base);
    default: return ml.base;
  }
}

bool has_reserved_suffix(const std::string& label) {
  return ends_with(label, kStartSuffix) || ends_with(label, kEndSuffix);
}

bool label_matches(const std::string& label, const std::set<std::string>& bases) {
  if (bases.count(label) != 0) return true;
  MarkedLabel ml = decode_label(label);
  return ml.kind != MarkerKind::Plain && bases.count(ml.base) != 0;
}

}  // namespace flexh
