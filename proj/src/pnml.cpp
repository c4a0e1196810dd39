#include "flexh/pnml.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>

#include "flexh/error.hpp"
#include "flexh/xml.hpp"

namespace flexh {

void write_pnml(const PetriNet& net, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<pnml>\n  <net id=\"net1\" type=\"http://www.pnml.org/version-2009/grammar/pnmlcoremodel\">\n";
  out << "    <page id=\"page1\">\n";
  for (int p = 0; p < net.place_count(); ++p) {
    out << "      <place id=\"" << xml_escape(net.places[p]) << "\">";
    if (net.initial[p] > 0)
      out << "\n        <initialMarking><text>" << static_cast<int>(net.initial[p])
          << "</text></initialMarking>\n      ";
    out << "</place>\n";
  }
  for (const auto& t : net.transitions) {
    out << "      <transition id=\"" << xml_escape(t.id) << "\">";
    if (!t.silent())
      out << "\n        <name><text>" << xml_escape(*t.label) << "</text></name>\n      ";
    out << "</transition>\n";
  }
  int arc = 0;
  for (const auto& t : net.transitions) {
    for (int p : t.pre)
      out << "      <arc id=\"a" << arc++ << "\" source=\"" << xml_escape(net.places[p])
          << "\" target=\"" << xml_escape(t.id) << "\"/>\n";
    for (int p : t.post)
      out << "      <arc id=\"a" << arc++ << "\" source=\"" << xml_escape(t.id)
          << "\" target=\"" << xml_escape(net.places[p]) << "\"/>\n";
  }
  out << "    </page>\n";
  out << "    <finalmarkings>\n      <marking>\n";
  for (int p = 0; p < net.place_count(); ++p)
    if (net.final[p] > 0)
      out << "        <place idref=\"" << xml_escape(net.places[p]) << "\"><text>"
          << static_cast<int>(net.final[p]) << "</text></place>\n";
  out << "      </marking>\n    </finalmarkings>\n";
  out << "  </net>\n</pnml>\n";
}

namespace {

const XmlNode* find_child(const XmlNode& node, const std::string& name) {
  for (const auto& c : node.children)
    if (c.name == name) return &c;
  return nullptr;
}

int text_of(const XmlNode& node) {
  const XmlNode* t = find_child(node, "text");
  if (!t) throw ParseError("PNML: missing <text>");
  return std::atoi(t->text.c_str());
}

void collect(const XmlNode& node, const std::string& name, std::vector<const XmlNode*>& out) {
  if (node.name == name) out.push_back(&node);
  for (const auto& c : node.children) collect(c, name, out);
}

}  // namespace

PetriNet parse_pnml(std::istream& in) {
  XmlNode root = parse_xml(in);
  if (root.name != "pnml") throw ParseError("PNML: root element is <" + root.name + ">");

  PetriNet net;
  std::map<std::string, int> place_idx;
  std::map<std::string, int> transition_idx;

  std::vector<const XmlNode*> places, transitions, arcs, finals;
  collect(root, "place", places);
  collect(root, "transition", transitions);
  collect(root, "arc", arcs);
  collect(root, "finalmarkings", finals);

  std::vector<int> initial_counts;
  for (const XmlNode* p : places) {
    const std::string* id = p->attribute("id");
    if (!id) {
      if (p->attribute("idref")) continue;  // final-marking reference
      throw ParseError("PNML: place without id");
    }
    place_idx[*id] = net.place_count();
    net.places.push_back(*id);
    const XmlNode* init = find_child(*p, "initialMarking");
    initial_counts.push_back(init ? text_of(*init) : 0);
  }

  for (const XmlNode* t : transitions) {
    const std::string* id = t->attribute("id");
    if (!id) throw ParseError("PNML: transition without id");
    PetriNet::Transition tr;
    tr.id = *id;
    const XmlNode* name = find_child(*t, "name");
    if (name) {
      const XmlNode* text = find_child(*name, "text");
      if (text) tr.label = text->text;
    }
    transition_idx[*id] = net.transition_count();
    net.transitions.push_back(std::move(tr));
  }

  for (const XmlNode* a : arcs) {
    const std::string* src = a->attribute("source");
    const std::string* dst = a->attribute("target");
    if (!src || !dst) throw ParseError("PNML: arc without source/target");
    auto ps = place_idx.find(*src);
    auto pd = place_idx.find(*dst);
    auto ts = transition_idx.find(*src);
    auto td = transition_idx.find(*dst);
    if (ps != place_idx.end() && td != transition_idx.end())
      net.transitions[td->second].pre.push_back(ps->second);
    else if (ts != transition_idx.end() && pd != place_idx.end())
      net.transitions[ts->second].post.push_back(pd->second);
    else
      throw ParseError("PNML: arc '" + *src + "' -> '" + *dst + "' does not connect a place and a transition");
  }
  for (auto& t : net.transitions) {
    std::sort(t.pre.begin(), t.pre.end());
    std::sort(t.post.begin(), t.post.end());
  }

  net.initial.assign(net.places.size(), 0);
  for (std::size_t p = 0; p < net.places.size(); ++p)
    net.initial[p] = static_cast<std::uint8_t>(initial_counts[p]);

  net.final.assign(net.places.size(), 0);
  if (finals.empty()) throw ParseError("PNML: missing <finalmarkings>");
  const XmlNode* marking = find_child(*finals.front(), "marking");
  if (!marking) throw ParseError("PNML: <finalmarkings> without <marking>");
  for (const auto& ref : marking->children) {
    if (ref.name != "place") continue;
    const std::string* idref = ref.attribute("idref");
    if (!idref) throw ParseError("PNML: final-marking place without idref");
    auto it = place_idx.find(*idref);
    if (it == place_idx.end()) throw ParseError("PNML: final marking references unknown place");
    net.final[it->second] = static_cast<std::uint8_t>(text_of(ref));
  }

  net.check();
  return net;
}

void write_net_dot(const PetriNet& net, std::ostream& out) {
  out << "digraph petri_net {\n  rankdir=LR;\n";
  for (int p = 0; p < net.place_count(); ++p) {
    out << "  \"" << net.places[p] << "\" [shape=circle label=\"\"";
    if (net.initial[p] > 0) out << " xlabel=\"start\"";
    if (net.final[p] > 0) out << " peripheries=2";
    out << "];\n";
  }
  for (const auto& t : net.transitions) {
    out << "  \"" << t.id << "\" [shape=box";
    if (t.silent())
      out << " style=filled fillcolor=black label=\"\" height=0.2";
    else
      out << " label=\"" << t.label.value_or("") << "\"";
    out << "];\n";
  }
  for (const auto& t : net.transitions) {
    for (int p : t.pre) out << "  \"" << net.places[p] << "\" -> \"" << t.id << "\";\n";
    for (int p : t.post) out << "  \"" << t.id << "\" -> \"" << net.places[p] << "\";\n";
  }
  out << "}\n";
}

}  // namespace flexh
