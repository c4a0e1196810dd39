#pragma once

#include <string>
#include <vector>

#include "flexh/activity_tree.hpp"
#include "flexh/event_log.hpp"

namespace flexh::testing {

// Healthcare running example: activity tree with subprocesses C (contact),
// L (lab), S (surgery) over nine activities.
inline ActivityTree example_tree() {
  ActivityTree t;
  t.root = "root";
  t.children["root"] = {"C", "L", "S"};
  t.children["C"] = {"Cs", "Re", "Vi"};
  t.children["L"] = {"Ca", "Gl"};
  t.children["S"] = {"Cr", "Op", "Or", "Pr"};
  t.nodes = {"root", "C", "L", "S", "Vi", "Cs", "Re", "Ca", "Gl", "Cr", "Or", "Pr", "Op"};
  return t;
}

// sigma1 is the simplified contact/lab trace; the companions cover the
// surgery activities so the tree is valid for the log.
inline Trace sigma1() { return Trace{"101", {"Vi", "Ca", "Re", "Gl", "Cs", "Cs"}}; }

inline EventLog example_log() {
  std::vector<Trace> traces;
  traces.push_back(sigma1());
  traces.push_back(Trace{"102", {"Vi", "Cr", "Ca", "Or", "Re", "Pr", "Gl", "Op", "Cs"}});
  traces.push_back(Trace{"103", {"Cr", "Vi", "Or", "Pr", "Re", "Op", "Cs"}});
  traces.push_back(Trace{"104", {"Vi", "Ca", "Gl", "Re", "Cs"}});
  return make_log(std::move(traces));
}

// Same shape with subprocess-prefixed labels, as logs in the wild encode it.
inline EventLog prefixed_example_log() {
  auto prefix = [](const std::vector<std::string>& acts) {
    std::vector<std::string> out;
    for (const auto& a : acts) {
      if (a == "Vi" || a == "Cs" || a == "Re")
        out.push_back("C_" + a);
      else if (a == "Ca" || a == "Gl")
        out.push_back("L_" + a);
      else
        out.push_back("S_" + a);
    }
    return out;
  };
  std::vector<Trace> traces;
  for (const auto& t : example_log().traces) traces.push_back({t.case_id, prefix(t.activities)});
  return make_log(std::move(traces));
}

// The example event table as a CSV stream (two patients, ISO dates).
inline std::string table_csv() {
  return "case,activity,timestamp\n"
         "101,C_Vi,2019-10-10\n"
         "101,L_Ca,2019-10-11\n"
         "101,C_Re,2019-10-12\n"
         "101,L_Gl,2019-10-13\n"
         "101,C_Cs,2019-10-14\n"
         "101,C_Cs,2019-10-15\n"
         "102,C_Re,2019-10-16\n"
         "102,L_Gl,2019-10-17\n";
}

}  // namespace flexh::testing
