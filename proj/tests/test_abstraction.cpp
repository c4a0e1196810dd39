#include <doctest.h>

#include <algorithm>

#include "flexh/abstraction.hpp"
#include "flexh/discovery.hpp"
#include "flexh/error.hpp"
#include "flexh/markers.hpp"
#include "flexh/rng.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace flexh;

namespace {

std::vector<std::string> acts(const Trace& t) { return t.activities; }

}  // namespace

TEST_CASE("project: contact activities of sigma1") {
  Trace projected = project(testing::sigma1(), {"Vi", "Cs", "Re"});
  CHECK(acts(projected) == std::vector<std::string>{"Vi", "Re", "Cs", "Cs"});
}

TEST_CASE("project: identity and empty set") {
  Trace s = testing::sigma1();
  std::set<std::string> all(s.activities.begin(), s.activities.end());
  CHECK(acts(project(s, all)) == s.activities);
  CHECK(acts(project(s, {})).empty());
}

TEST_CASE("abstract: sigma1 on C and on L match the worked example") {
  Trace s = testing::sigma1();
  CHECK(acts(abstract(s, "C", {"Vi", "Cs", "Re"})) ==
        std::vector<std::string>{"C+start", "Ca", "Gl", "C+end"});
  CHECK(acts(abstract(s, "L", {"Ca", "Gl"})) ==
        std::vector<std::string>{"Vi", "L+start", "Re", "L+end", "Cs", "Cs"});
}

TEST_CASE("abstract: recursion on C then L collapses to marker pairs") {
  Trace s = testing::sigma1();
  Trace once = abstract(s, "C", {"Vi", "Cs", "Re"});
  Trace twice = abstract(once, "L", {"Ca", "Gl"});
  CHECK(acts(twice) == std::vector<std::string>{"C+start", "L+start", "L+end", "C+end"});

  Trace other_order = abstract(abstract(s, "L", {"Ca", "Gl"}), "C", {"Vi", "Cs", "Re"});
  CHECK(acts(other_order) == acts(twice));
}

TEST_CASE("abstract: single subprocess event emits both markers consecutively") {
  Trace t{"c", {"x", "Vi", "y"}};
  Trace abstracted = abstract(t, "C", {"Vi", "Cs", "Re"});
  CHECK(acts(abstracted) == std::vector<std::string>{"x", "C+start", "C+end", "y"});
  CHECK(acts(abstracted) == testing::eq_abstract(t.activities, "C", {"Vi", "Cs", "Re"}));
}

TEST_CASE("abstract: agrees with the case-by-case oracle on random traces") {
  Rng rng(31);
  std::set<std::string> sp_acts{"s0", "s1", "s2"};
  for (int round = 0; round < 200; ++round) {
    Trace t;
    t.case_id = "c";
    std::size_t len = rng.below(12);
    for (std::size_t i = 0; i < len; ++i) {
      if (rng.below(2))
        t.activities.push_back("s" + std::to_string(rng.below(3)));
      else
        t.activities.push_back("o" + std::to_string(rng.below(3)));
    }
    CHECK(acts(abstract(t, "SP", sp_acts)) == testing::eq_abstract(t.activities, "SP", sp_acts));
  }
}

TEST_CASE("abstract: no subprocess events leaves the trace unchanged") {
  Trace t{"c", {"x", "y"}};
  CHECK(acts(abstract(t, "C", {"Vi"})) == t.activities);
}

TEST_CASE("abstract length accounting") {
  Rng rng(77);
  std::set<std::string> sp_acts{"s0", "s1"};
  for (int round = 0; round < 200; ++round) {
    Trace t;
    std::size_t len = rng.below(15);
    for (std::size_t i = 0; i < len; ++i)
      t.activities.push_back(rng.below(2) ? "s" + std::to_string(rng.below(2))
                                          : "o" + std::to_string(rng.below(4)));
    std::size_t sp_events = 0;
    for (const auto& a : t.activities) sp_events += sp_acts.count(a);
    Trace abstracted = abstract(t, "SP", sp_acts);
    if (sp_events == 0)
      CHECK(abstracted.activities.size() == t.activities.size());
    else if (sp_events == 1)
      CHECK(abstracted.activities.size() == t.activities.size() + 1);
    else
      CHECK(abstracted.activities.size() == t.activities.size() - sp_events + 2);
  }
}

TEST_CASE("abstract marker bracketing") {
  Rng rng(78);
  std::set<std::string> sp_acts{"s0", "s1"};
  for (int round = 0; round < 100; ++round) {
    Trace t;
    for (std::size_t i = 0; i < 1 + rng.below(10); ++i)
      t.activities.push_back(rng.below(2) ? "s" + std::to_string(rng.below(2)) : "o");
    Trace abstracted = abstract(t, "SP", sp_acts);
    auto start = std::count(abstracted.activities.begin(), abstracted.activities.end(),
                            std::string("SP+start"));
    auto end = std::count(abstracted.activities.begin(), abstracted.activities.end(),
                          std::string("SP+end"));
    bool any_sp = false;
    for (const auto& a : t.activities) any_sp = any_sp || sp_acts.count(a);
    CHECK(start == (any_sp ? 1 : 0));
    CHECK(end == (any_sp ? 1 : 0));
    if (any_sp) {
      auto si = std::find(abstracted.activities.begin(), abstracted.activities.end(),
                          std::string("SP+start"));
      auto ei = std::find(abstracted.activities.begin(), abstracted.activities.end(),
                          std::string("SP+end"));
      CHECK(si < ei);
    }
  }
}

TEST_CASE("projection/abstraction complementarity") {
  Rng rng(79);
  std::set<std::string> sp_acts{"s0", "s1", "s2"};
  for (int round = 0; round < 100; ++round) {
    Trace t;
    for (std::size_t i = 0; i < rng.below(14); ++i)
      t.activities.push_back(rng.below(2) ? "s" + std::to_string(rng.below(3))
                                          : "o" + std::to_string(rng.below(3)));
    Trace kept = project(t, sp_acts);
    for (const auto& a : kept.activities) CHECK(sp_acts.count(a) == 1);
    Trace abstracted = abstract(t, "SP", sp_acts);
    std::vector<std::string> plain;
    for (const auto& a : abstracted.activities)
      if (decode_label(a).kind == MarkerKind::Plain) plain.push_back(a);
    std::vector<std::string> expected;
    for (const auto& a : t.activities)
      if (!sp_acts.count(a)) expected.push_back(a);
    CHECK(plain == expected);
    CHECK(kept.activities.size() + expected.size() == t.activities.size());
  }
}

TEST_CASE("project_log: drops traces with no subprocess events") {
  ActivityTree tree = testing::example_tree();
  std::vector<Trace> traces{{"a", {"Vi", "Ca", "Cs"}}, {"b", {"Ca", "Gl"}}};
  EventLog log = make_log(traces);
  EventLog projected = project_log(log, tree, "C");
  REQUIRE(projected.traces.size() == 1);  // second trace has no C events
  CHECK(acts(projected.traces[0]) == std::vector<std::string>{"Vi", "Cs"});

  CHECK_THROWS_AS(project_log(log, tree, "Vi"), InvalidArgument);
  CHECK_THROWS_AS(project_log(log, tree, "unknown"), InvalidArgument);
}

TEST_CASE("project_log is idempotent") {
  ActivityTree tree = testing::example_tree();
  EventLog log = testing::example_log();
  EventLog once = project_log(log, tree, "C");
  EventLog twice = project_log(once, tree, "C");
  CHECK(once == twice);
}

TEST_CASE("abstract_log keeps every trace, all-subprocess trace becomes a marker pair") {
  ActivityTree tree = testing::example_tree();
  std::vector<Trace> traces{{"a", {"Vi", "Re"}}, {"b", {"Ca"}}};
  EventLog log = make_log(traces);
  EventLog abstracted = abstract_log(log, tree, "C");
  REQUIRE(abstracted.traces.size() == 2);
  CHECK(acts(abstracted.traces[0]) == std::vector<std::string>{"C+start", "C+end"});
  CHECK(acts(abstracted.traces[1]) == std::vector<std::string>{"Ca"});
}

TEST_CASE("abstract_log without subprocess events is the identity") {
  ActivityTree tree = testing::example_tree();
  EventLog log = make_log({Trace{"a", {"Ca", "Gl"}}});
  CHECK(abstract_log(log, tree, "C") == log);
}

TEST_CASE("build_hierarchy on the running example") {
  ActivityTree tree = testing::example_tree();
  EventLog log = testing::example_log();
  HierarchicalModel hm = build_hierarchy(log, tree, make_miner({"inductive", 0.0}));

  // one sublog and one model per non-leaf node
  std::set<std::string> expected_domain{"C", "L", "S", "root"};
  std::set<std::string> log_domain, model_domain;
  for (const auto& [k, v] : hm.log_map) (void)v, log_domain.insert(k);
  for (const auto& [k, v] : hm.model_map) (void)v, model_domain.insert(k);
  CHECK(log_domain == expected_domain);
  CHECK(model_domain == expected_domain);
  CHECK(hm.failures.empty());

  // the root log contains only markers of the three subprocesses
  for (const auto& trace : hm.log_map.at("root").traces)
    for (const auto& a : trace.activities) {
      MarkedLabel ml = decode_label(a);
      CHECK(ml.kind != MarkerKind::Plain);
      CHECK(std::set<std::string>{"C", "L", "S"}.count(ml.base) == 1);
    }

  // sigma1 has no surgery events: its root trace is the marker sandwich
  CHECK(acts(hm.log_map.at("root").traces[0]) ==
        std::vector<std::string>{"C+start", "L+start", "L+end", "C+end"});

  // each sublog's alphabet stays within children + child markers
  for (const auto& [sp, sublog] : hm.log_map) {
    std::set<std::string> allowed;
    for (const auto& c : hm.tree.children_of(sp)) {
      allowed.insert(c);
      allowed.insert(start_marker(c));
      allowed.insert(end_marker(c));
    }
    for (const auto& a : sublog.alphabet) CHECK(allowed.count(a) == 1);
  }
}

TEST_CASE("build_hierarchy: two-level random tree over 25 activities") {
  Rng rng(525);
  std::set<std::string> alphabet;
  for (int i = 0; i < 25; ++i) alphabet.insert("a" + std::to_string(i));
  ActivityTree tree = tree_random(alphabet, 10, 99);  // 3 parents + root
  REQUIRE(tree.max_height() == 2);

  std::vector<std::string> acts_vec(alphabet.begin(), alphabet.end());
  std::vector<Trace> traces;
  traces.push_back({"c0", acts_vec});  // leaves must cover the alphabet exactly
  for (int i = 1; i < 12; ++i) {
    Trace t;
    t.case_id = "c" + std::to_string(i);
    for (std::size_t j = 0; j < 5 + rng.below(20); ++j)
      t.activities.push_back(acts_vec[rng.below(acts_vec.size())]);
    traces.push_back(std::move(t));
  }
  HierarchicalModel hm = build_hierarchy(make_log(std::move(traces)), tree,
                                         make_miner({"inductive", 0.0}), 2);

  CHECK(hm.log_map.size() == tree.non_leaves().size());
  for (const auto& [sp, sublog] : hm.log_map) {
    std::set<std::string> allowed;
    for (const auto& c : hm.tree.children_of(sp)) {
      allowed.insert(c);
      allowed.insert(start_marker(c));
      allowed.insert(end_marker(c));
    }
    for (const auto& a : sublog.alphabet) CHECK(allowed.count(a) == 1);
  }
}

TEST_CASE("build_hierarchy: flat tree equals direct discovery") {
  EventLog log = testing::example_log();
  ActivityTree flat = tree_flat(log.alphabet);
  MinerConfig config{"inductive", 0.0};
  HierarchicalModel hm = build_hierarchy(log, flat, make_miner(config));
  REQUIRE(hm.log_map.size() == 1);
  CHECK(hm.log_map.at(flat.root) == log);
  CHECK(hm.model_map.at(flat.root) == mine(log, config));
}

TEST_CASE("build_hierarchy: invalid tree and reserved suffixes are rejected") {
  EventLog log = testing::example_log();
  ActivityTree wrong = tree_flat({"not", "the", "alphabet"});
  CHECK_THROWS_AS(build_hierarchy(log, wrong, make_miner({})), InvalidArgument);

  EventLog reserved = make_log({Trace{"c", {"x+start", "y"}}});
  ActivityTree t = tree_flat(reserved.alphabet);
  CHECK_THROWS_AS(build_hierarchy(reserved, t, make_miner({})), InvalidArgument);
}

TEST_CASE("build_hierarchy: miner failure is recorded, not raised") {
  ActivityTree tree = testing::example_tree();
  EventLog log = testing::example_log();
  DiscoveryFn flaky = [](const EventLog& sublog) -> PetriNet {
    if (sublog.alphabet.count("Ca")) throw Error("no lab models today");
    return mine(sublog, {"inductive", 0.0});
  };
  HierarchicalModel hm = build_hierarchy(log, tree, flaky);
  CHECK(hm.failures.count("L") == 1);
  CHECK(hm.model_map.count("L") == 0);
  CHECK(hm.model_map.count("C") == 1);
  CHECK(hm.model_map.count("root") == 1);
  CHECK(hm.log_map.count("L") == 1);
}

TEST_CASE("selective_abstract: hiding C gives the single-abstraction log") {
  ActivityTree tree = testing::example_tree();
  EventLog log = testing::example_log();
  EventLog hidden = selective_abstract(log, tree, {"C"});
  CHECK(hidden == abstract_log(log, tree, "C"));
  CHECK(acts(hidden.traces[0]) == std::vector<std::string>{"C+start", "Ca", "Gl", "C+end"});
}

TEST_CASE("selective_abstract: fold order does not matter, empty hide is identity") {
  ActivityTree tree = testing::example_tree();
  EventLog log = testing::example_log();
  EventLog both = selective_abstract(log, tree, {"C", "L"});
  CHECK(both == abstract_log(abstract_log(log, tree, "C"), tree, "L"));
  CHECK(both == abstract_log(abstract_log(log, tree, "L"), tree, "C"));
  CHECK(acts(both.traces[0]) == std::vector<std::string>{"C+start", "L+start", "L+end", "C+end"});

  CHECK(selective_abstract(log, tree, {}) == log);
  CHECK_THROWS_AS(selective_abstract(log, tree, {"root", "C"}), InvalidArgument);
}

TEST_CASE("abstracting a higher-level subprocess collapses its whole subtree") {
  // root > top > {mid > {a, b}, c}; leaves: a, b, c, d
  ActivityTree tree;
  tree.root = "root";
  tree.nodes = {"root", "top", "mid", "a", "b", "c", "d"};
  tree.children["root"] = {"d", "top"};
  tree.children["top"] = {"c", "mid"};
  tree.children["mid"] = {"a", "b"};
  REQUIRE(validate(tree, {"a", "b", "c", "d"}).ok);

  EventLog log = make_log({Trace{"t", {"d", "a", "c", "b", "d"}}});
  EventLog hidden = abstract_log(log, tree, "top");
  CHECK(hidden.traces[0].activities ==
        std::vector<std::string>{"d", "top+start", "top+end", "d"});
  // markers of an inner subprocess also count as its ancestors' events
  EventLog staged = abstract_log(abstract_log(log, tree, "mid"), tree, "top");
  CHECK(staged == hidden);
}

TEST_CASE("commutativity of abstraction over non-related subprocesses") {
  Rng rng(2024);
  int checked = 0;
  for (int round = 0; round < 60; ++round) {
    std::set<std::string> alphabet;
    std::size_t n = 4 + rng.below(17);
    for (std::size_t i = 0; i < n; ++i) alphabet.insert("a" + std::to_string(i));
    ActivityTree tree = tree_random(alphabet, 2 + static_cast<int>(rng.below(4)), rng.next());

    std::vector<std::string> non_leaves = tree.non_leaves();
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& x : non_leaves)
      for (const auto& y : non_leaves)
        if (x < y && tree.non_related(x, y)) pairs.emplace_back(x, y);
    if (pairs.empty()) continue;

    std::vector<Trace> traces;
    std::vector<std::string> acts_vec(alphabet.begin(), alphabet.end());
    for (std::size_t i = 0; i < 5; ++i) {
      Trace t;
      t.case_id = "c" + std::to_string(i);
      for (std::size_t j = 0; j < rng.below(30); ++j)
        t.activities.push_back(acts_vec[rng.below(acts_vec.size())]);
      traces.push_back(std::move(t));
    }
    EventLog log = make_log(std::move(traces));

    auto [x, y] = pairs[rng.below(pairs.size())];
    EventLog xy = abstract_log(abstract_log(log, tree, x), tree, y);
    EventLog yx = abstract_log(abstract_log(log, tree, y), tree, x);
    CHECK(xy == yx);
    ++checked;
  }
  CHECK(checked > 10);
}
