#pragma once

#include <optional>
#include <set>
#include <string>

namespace flexh {

// Abstracted subprocess occurrences are encoded as reserved-suffix labels,
// e.g. "C+start" / "C+end". One concrete representation keeps abstracted
// logs round-trippable through the ordinary writers.
enum class MarkerKind { Plain, Start, End };

struct MarkedLabel {
  std::string base;
  MarkerKind kind = MarkerKind::Plain;
};

inline const std::string kStartSuffix = "+start";
inline const std::string kEndSuffix = "+end";

std::string start_marker(const std::string& base);
std::string end_marker(const std::string& base);

// Splits a label into base + kind; plain labels come back unchanged.
MarkedLabel decode_label(const std::string& label);
std::string encode_label(const MarkedLabel& ml);

bool has_reserved_suffix(const std::string& label);

// True when `label` stands for a member of `bases`: either it is one, or it
// is a start/end marker whose base is one.
bool label_matches(const std::string& label, const std::set<std::string>& bases);

}  // namespace flexh
