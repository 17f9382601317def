#include "coref/xml.hpp"

#include <cctype>

#include "coref/model.hpp"

namespace coref::xml {

const std::string* Node::attr(std::string_view name) const {
  for (const auto& [k, v] : attrs)
    if (k == name) return &v;
  return nullptr;
}

const Node* Node::child(std::string_view name) const {
  for (const Node& c : children)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<const Node*> Node::children_named(std::string_view name) const {
  std::vector<const Node*> out;
  for (const Node& c : children)
    if (c.name == name) out.push_back(&c);
  return out;
}

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}
bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

class Scanner {
 public:
  explicit Scanner(std::string_view input) : input_(input) {}

  Node parse_document() {
    skip_prolog();
    Node root = parse_element();
    skip_whitespace_and_comments();
    if (pos_ != input_.size()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) { throw ParseError(message, line_); }

  bool eof() const { return pos_ >= input_.size(); }
  char peek() const { return input_[pos_]; }

  char get() {
    char c = input_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  bool consume(std::string_view token) {
    if (input_.substr(pos_, token.size()) != token) return false;
    for (size_t i = 0; i < token.size(); ++i) get();
    return true;
  }

  void skip_whitespace() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
  }

  void skip_comment() {
    // at "<!--"
    while (!consume("-->")) {
      if (eof()) fail("unterminated comment");
      get();
    }
  }

  void skip_whitespace_and_comments() {
    for (;;) {
      skip_whitespace();
      if (!eof() && input_.substr(pos_, 4) == "<!--") {
        consume("<!--");
        skip_comment();
        continue;
      }
      return;
    }
  }

  void skip_prolog() {
    skip_whitespace();
    if (consume("<?xml")) {
      while (!consume("?>")) {
        if (eof()) fail("unterminated XML declaration");
        get();
      }
    }
    skip_whitespace_and_comments();
    if (eof()) fail("missing root element");
    if (peek() != '<') fail("expected '<'");
    if (input_.substr(pos_, 2) == "<!") fail("DTD and CDATA sections are not supported");
  }

  std::string parse_name() {
    if (eof() || !is_name_start(peek())) fail("expected a name");
    std::string name;
    while (!eof() && is_name_char(peek())) name.push_back(get());
    return name;
  }

  void append_reference(std::string& out) {
    // at '&'
    get();
    std::string entity;
    while (!eof() && peek() != ';') {
      entity.push_back(get());
      if (entity.size() > 10) fail("malformed entity reference");
    }
    if (eof()) fail("unterminated entity reference");
    get();  // ';'
    if (entity == "amp") out.push_back('&');
    else if (entity == "lt") out.push_back('<');
    else if (entity == "gt") out.push_back('>');
    else if (entity == "quot") out.push_back('"');
    else if (entity == "apos") out.push_back('\'');
    else if (!entity.empty() && entity[0] == '#') append_codepoint(out, entity);
    else fail("unknown entity '&" + entity + ";'");
  }

  void append_codepoint(std::string& out, const std::string& entity) {
    uint32_t cp = 0;
    size_t i = 1;
    int base = 10;
    if (i < entity.size() && (entity[i] == 'x' || entity[i] == 'X')) {
      base = 16;
      ++i;
    }
    if (i >= entity.size()) fail("malformed character reference");
    for (; i < entity.size(); ++i) {
      char c = entity[i];
      int digit;
      if (c >= '0' && c <= '9') digit = c - '0';
      else if (base == 16 && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
      else if (base == 16 && c >= 'A' && c <= 'F') digit = c - 'A' + 10;
      else fail("malformed character reference");
      cp = cp * static_cast<uint32_t>(base) + static_cast<uint32_t>(digit);
      if (cp > 0x10FFFF) fail("character reference out of range");
    }
    // UTF-8 encode.
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
  }

  std::string parse_attr_value() {
    if (eof() || peek() != '"') fail("expected '\"'");
    get();
    std::string value;
    while (!eof() && peek() != '"') {
      char c = peek();
      if (c == '<') fail("'<' in attribute value");
      if (c == '&') append_reference(value);
      else value.push_back(get());
    }
    if (eof()) fail("unterminated attribute value");
    get();
    return value;
  }

  Node parse_element() {
    if (eof() || peek() != '<') fail("expected '<'");
    Node node;
    node.line = line_;
    get();
    node.name = parse_name();
    for (;;) {
      skip_whitespace();
      if (eof()) fail("unterminated start tag");
      if (consume("/>")) return node;
      if (consume(">")) break;
      std::string key = parse_name();
      skip_whitespace();
      if (!consume("=")) fail("expected '=' after attribute name");
      skip_whitespace();
      for (const auto& [k, v] : node.attrs)
        if (k == key) fail("duplicate attribute '" + key + "'");
      node.attrs.emplace_back(key, parse_attr_value());
    }
    // Content.
    for (;;) {
      if (eof()) fail("unterminated element '" + node.name + "'");
      if (peek() == '<') {
        if (input_.substr(pos_, 4) == "<!--") {
          consume("<!--");
          skip_comment();
          continue;
        }
        if (input_.substr(pos_, 2) == "</") {
          consume("</");
          std::string closing = parse_name();
          if (closing != node.name)
            fail("mismatched end tag: expected </" + node.name + ">, got </" + closing + ">");
          skip_whitespace();
          if (!consume(">")) fail("malformed end tag");
          return node;
        }
        if (input_.substr(pos_, 2) == "<!") fail("DTD and CDATA sections are not supported");
        if (input_.substr(pos_, 2) == "<?") fail("processing instructions are not supported");
        node.children.push_back(parse_element());
      } else if (peek() == '&') {
        append_reference(node.text);
      } else {
        node.text.push_back(get());
      }
    }
  }

  std::string_view input_;
  size_t pos_ = 0;
  int line_ = 1;
};

void escape_into(std::string& out, std::string_view raw, bool in_attr) {
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (in_attr) out += "&quot;";
        else out.push_back(c);
        break;
      default: out.push_back(c);
    }
  }
}

}  // namespace

Node parse(std::string_view bytes) { return Scanner(bytes).parse_document(); }

std::string escape_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  escape_into(out, raw, false);
  return out;
}

std::string escape_attr(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  escape_into(out, raw, true);
  return out;
}

}  // namespace coref::xml
