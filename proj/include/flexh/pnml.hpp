#pragma once

#include <iosfwd>

#include "flexh/petri_net.hpp"

namespace flexh {

// PNML subset: places (with <initialMarking>), transitions (silent ones have
// no <name>), arcs, plus a <finalmarkings> section for the final marking.
// write_pnml(parse_pnml(s)) round-trips.
void write_pnml(const PetriNet& net, std::ostream& out);
PetriNet parse_pnml(std::istream& in);

// Places as circles, transitions as boxes, silent transitions filled.
void write_net_dot(const PetriNet& net, std::ostream& out);

}  // namespace flexh
