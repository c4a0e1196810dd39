#include "flexh/xml.hpp"

#include <istream>

#include "flexh/error.hpp"

namespace flexh {

namespace {

class XmlReader {
 public:
  explicit XmlReader(std::istream& in) : in_(in) {}

  XmlNode parse_document() {
    skip_prolog();
    XmlNode root = parse_element();
    skip_misc();
    if (peek() != EOF) fail("content after document element");
    return root;
  }

 private:
  std::istream& in_;
  std::size_t line_ = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("XML line " + std::to_string(line_) + ": " + msg);
  }

  int peek() { return in_.peek(); }

  int get() {
    int c = in_.get();
    if (c == '\n') ++line_;
    return c;
  }

  void expect(char c) {
    int got = get();
    if (got != c) fail(std::string("expected '") + c + "'");
  }

  static bool is_space(int c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  void skip_ws() {
    while (is_space(peek())) get();
  }

  static bool is_name_char(int c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.' || c == ':';
  }

  std::string read_name() {
    std::string name;
    while (is_name_char(peek())) name.push_back(static_cast<char>(get()));
    if (name.empty()) fail("expected a name");
    return name;
  }

  std::string decode_entity() {
    std::string ent;
    int c;
    while ((c = get()) != ';') {
      if (c == EOF || ent.size() > 8) fail("malformed entity");
      ent.push_back(static_cast<char>(c));
    }
    if (ent == "amp") return "&";
    if (ent == "lt") return "<";
    if (ent == "gt") return ">";
    if (ent == "quot") return "\"";
    if (ent == "apos") return "'";
    if (!ent.empty() && ent[0] == '#') {
      long code = ent[1] == 'x' ? std::strtol(ent.c_str() + 2, nullptr, 16)
                                : std::strtol(ent.c_str() + 1, nullptr, 10);
      if (code <= 0 || code > 0x10FFFF) fail("bad character reference");
      // UTF-8 encode
      std::string out;
      unsigned cp = static_cast<unsigned>(code);
      if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
      } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
      } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
      } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
      }
      return out;
    }
    fail("unknown entity '&" + ent + ";'");
  }

  // Assumes "<!" consumed; skips comments, CDATA handled by caller, DOCTYPE.
  void skip_bang() {
    if (peek() == '-') {
      get();
      expect('-');
      int a = get(), b = get();
      while (!(a == '-' && b == '-' && peek() == '>')) {
        if (b == EOF) fail("unterminated comment");
        a = b;
        b = get();
      }
      get();  // '>'
      return;
    }
    // DOCTYPE or similar: skip to matching '>'
    int depth = 1;
    while (depth > 0) {
      int c = get();
      if (c == EOF) fail("unterminated <! section");
      if (c == '<') ++depth;
      if (c == '>') --depth;
    }
  }

  void skip_pi() {  // assumes "<?" consumed
    int a = get();
    while (!(a == '?' && peek() == '>')) {
      if (a == EOF) fail("unterminated processing instruction");
      a = get();
    }
    get();
  }

  void skip_prolog() {
    for (;;) {
      skip_ws();
      if (peek() != '<') fail("expected markup");
      get();
      int c = peek();
      if (c == '?') {
        get();
        skip_pi();
      } else if (c == '!') {
        get();
        skip_bang();
      } else {
        in_.putback('<');
        return;
      }
    }
  }

  void skip_misc() {
    for (;;) {
      skip_ws();
      if (peek() == EOF) return;
      if (peek() != '<') fail("stray text after root element");
      get();
      int c = peek();
      if (c == '?') {
        get();
        skip_pi();
      } else if (c == '!') {
        get();
        skip_bang();
      } else {
        fail("second root element");
      }
    }
  }

  std::string read_attr_value() {
    int quote = get();
    if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
    std::string value;
    for (;;) {
      int c = get();
      if (c == EOF) fail("unterminated attribute value");
      if (c == quote) break;
      if (c == '&')
        value += decode_entity();
      else
        value.push_back(static_cast<char>(c));
    }
    return value;
  }

  // Assumes '<' consumed and a name follows.
  XmlNode parse_element_body() {
    XmlNode node;
    node.name = read_name();
    for (;;) {
      skip_ws();
      int c = peek();
      if (c == '/') {
        get();
        expect('>');
        return node;  // self-closing
      }
      if (c == '>') {
        get();
        break;
      }
      std::string attr = read_name();
      skip_ws();
      expect('=');
      skip_ws();
      node.attributes[attr] = read_attr_value();
    }

    // content
    for (;;) {
      int c = get();
      if (c == EOF) fail("unterminated element <" + node.name + ">");
      if (c != '<') {
        if (c == '&')
          node.text += decode_entity();
        else
          node.text.push_back(static_cast<char>(c));
        continue;
      }
      int next = peek();
      if (next == '/') {
        get();
        std::string closing = read_name();
        if (closing != node.name)
          fail("mismatched closing tag </" + closing + "> for <" + node.name + ">");
        skip_ws();
        expect('>');
        return node;
      }
      if (next == '!') {
        get();
        if (peek() == '[') {  // CDATA
          const char* tag = "[CDATA[";
          for (const char* p = tag; *p; ++p)
            if (get() != *p) fail("malformed CDATA section");
          int a = get(), b = get();
          for (;;) {
            int d = get();
            if (d == EOF) fail("unterminated CDATA");
            if (a == ']' && b == ']' && d == '>') break;
            node.text.push_back(static_cast<char>(a));
            a = b;
            b = d;
          }
        } else {
          skip_bang();
        }
        continue;
      }
      if (next == '?') {
        get();
        skip_pi();
        continue;
      }
      node.children.push_back(parse_element_body());
    }
  }

  XmlNode parse_element() {
    expect('<');
    return parse_element_body();
  }
};

}  // namespace

XmlNode parse_xml(std::istream& in) {
  XmlReader reader(in);
  return reader.parse_document();
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace flexh
