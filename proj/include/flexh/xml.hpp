#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace flexh {

// Minimal XML DOM for the XES and PNML subsets this project reads. Supports
// elements, attributes, character data, comments, CDATA, and the five
// predefined entities. No namespaces, DTDs, or processing beyond skipping
// the <?xml?> declaration.
struct XmlNode {
  std::string name;
  std::map<std::string, std::string> attributes;
  std::vector<XmlNode> children;
  std::string text;  // concatenated character data directly under this node

  const std::string* attribute(const std::string& key) const {
    auto it = attributes.find(key);
    return it == attributes.end() ? nullptr : &it->second;
  }
};

// Parses a whole document and returns the root element. Throws ParseError
// with a line number on malformed input.
XmlNode parse_xml(std::istream& in);

// Escapes &, <, >, ", ' for attribute/text contexts.
std::string xml_escape(const std::string& s);

}  // namespace flexh
