#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "flexh/abstraction.hpp"
#include "flexh/alignment.hpp"
#include "flexh/event_log.hpp"
#include "flexh/petri_net.hpp"

namespace flexh {

// nullopt = unreliable (budget exhausted, unreachable final marking, or a
// precondition the data cannot meet, e.g. fewer traces than folds).
using Metric = std::optional<double>;

// Alignment-based fitness: 1 - total optimal alignment cost over the log,
// normalized by the worst case (all log moves plus the cheapest model run).
// Multiset-weighted; any unreliable trace makes the whole value unreliable.
Metric fitness(const EventLog& log, const PetriNet& net, const MoveCosts& costs = {},
               const AlignmentBudget& budget = {});

// Escaping-edges precision over the prefix automaton of aligned model
// behavior: per visited state, enabled visible labels are compared with the
// continuations the log actually took. ETC-family approximation.
Metric precision(const EventLog& log, const PetriNet& net, const MoveCosts& costs = {},
                 const AlignmentBudget& budget = {});

// Harmonic mean; 0 when both inputs are 0; unreliable inputs propagate.
Metric f1(Metric fi, Metric pr);

// k-fold generalization: the traces are split into k random subsets (seeded),
// each fold's model is discovered from the complement, and the mean harmonic
// of fitness(held-out fold, fold model) and precision(full log, fold model)
// is returned. Throws InvalidArgument when k < 2 or the log has fewer than
// k traces.
Metric generalization(const EventLog& log, const DiscoveryFn& miner, int k,
                      std::uint64_t seed, const MoveCosts& costs = {},
                      const AlignmentBudget& budget = {});

struct EvaluationConfig {
  bool with_fitness = true;
  bool with_precision = true;
  bool with_generalization = true;
  int k_folds = 3;
  std::uint64_t seed = 1;
  MoveCosts costs;
  AlignmentBudget budget;
  int jobs = 1;
  DiscoveryFn fold_miner;  // required when with_generalization
};

struct SubprocessQuality {
  Metric fi, pr, f1, ge;
  std::optional<int> cfc, size;  // nullopt when discovery failed
  int activity_count = 0;
};

struct QualityAverages {
  Metric fi, pr, f1, ge;
  Metric cfc, size;  // averaged over entries where present
};

// Averages are taken per metric over the entries where that metric is
// reliable; unreliable entries are counted, never averaged.
struct QualityReport {
  std::map<std::string, SubprocessQuality> per_subprocess;
  QualityAverages averages;
  int subprocess_count = 0;
  int unreliable_count = 0;  // entries with at least one unreliable fi/pr/f1/ge
};

QualityAverages aggregate(const std::map<std::string, SubprocessQuality>& entries);

// Evaluates every non-leaf subprocess of the hierarchy. Per-subprocess
// failures become unreliable entries; nothing is thrown.
QualityReport evaluate_hierarchical(const HierarchicalModel& hmodel,
                                    const EvaluationConfig& config);

// Plain-text table: columns Fi Pr F1 Ge CFC Size #SPs #Act, one row per
// subprocess plus the averages row; unreliable values render as "-".
void render_report(const QualityReport& report, std::ostream& out);
std::string report_to_json(const QualityReport& report);

}  // namespace flexh
