// Small strict XML reader/writer for the two schemas this project owns
// (document XML and coreference XML). Supports elements, double-quoted
// attributes, character data, comments and the five predefined entities plus
// numeric references. No DTDs, processing instructions or CDATA.
#ifndef COREF_XML_HPP
#define COREF_XML_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace coref::xml {

struct Node {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<Node> children;
  std::string text;  // concatenated character data (whitespace included)
  int line = 0;      // line of the start tag, 1-based

  const std::string* attr(std::string_view name) const;
  const Node* child(std::string_view name) const;
  std::vector<const Node*> children_named(std::string_view name) const;
};

// Parses one document, returns the root element. Throws coref::ParseError
// with a line number on any well-formedness problem.
Node parse(std::string_view bytes);

std::string escape_text(std::string_view raw);
std::string escape_attr(std::string_view raw);

}  // namespace coref::xml

#endif  // COREF_XML_HPP
