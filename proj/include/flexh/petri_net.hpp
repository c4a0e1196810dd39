#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace flexh {

// Token counts per place, indexed like PetriNet::places.
using Marking = std::vector<std::uint8_t>;

// Labeled place/transition net with initial and final markings. Arcs are
// weight-1 and stored as sorted index lists on each transition. Nets are
// immutable after construction; replay and search allocate private state.
struct PetriNet {
  struct Transition {
    std::string id;
    std::optional<std::string> label;  // nullopt = silent
    std::vector<int> pre;              // place indices, sorted, distinct
    std::vector<int> post;

    bool silent() const { return !label.has_value(); }

    friend bool operator==(const Transition& a, const Transition& b) {
      return a.id == b.id && a.label == b.label && a.pre == b.pre && a.post == b.post;
    }
  };

  std::vector<std::string> places;  // ids
  std::vector<Transition> transitions;
  Marking initial;
  Marking final;

  int place_count() const { return static_cast<int>(places.size()); }
  int transition_count() const { return static_cast<int>(transitions.size()); }

  // Throws InvalidArgument when arcs reference missing places, ids collide,
  // or a marking is empty or mis-sized.
  void check() const;

  friend bool operator==(const PetriNet& a, const PetriNet& b) {
    return a.places == b.places && a.transitions == b.transitions &&
           a.initial == b.initial && a.final == b.final;
  }
};

// Transitions whose preset is covered by the marking.
std::vector<int> enabled(const PetriNet& net, const Marking& marking);
bool is_enabled(const PetriNet& net, const Marking& marking, int t);

// marking - pre(t) + post(t). Throws when t is not enabled.
Marking fire(const PetriNet& net, const Marking& marking, int t);

// |P| + |T|.
int size(const PetriNet& net);

// Sum of 1 per transition with in- or out-degree above one, plus |p*| per
// place with in- or out-degree above one.
int cfc(const PetriNet& net);

struct PathSearchConfig {
  int token_cap = 2;                 // per-place bound during exploration
  std::size_t max_expansions = 1'000'000;
};

// Minimal-cost firing sequence from the initial to exactly the final
// marking, with one cost per transition. Throws UnreachableFinalMarking when
// no run exists (or the budget is exhausted), MarkingOverflow when
// exploration exceeds the token cap.
double shortest_accepting_path_cost(const PetriNet& net,
                                    const std::vector<double>& transition_costs,
                                    const PathSearchConfig& config = {});

// Uniform costs: `visible_cost` per labeled transition, 0 for silent ones.
double shortest_accepting_path_cost(const PetriNet& net, double visible_cost = 1.0,
                                    const PathSearchConfig& config = {});

}  // namespace flexh
