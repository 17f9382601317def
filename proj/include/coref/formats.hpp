// Readers/writers for the three file formats (document XML, coreference XML,
// CoNLL) and the converters between them. Output is canonical and bit-exact:
// UTF-8, LF line endings, newline-terminated, mentions in document order,
// chains sorted by their smallest member.
#ifndef COREF_FORMATS_HPP
#define COREF_FORMATS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "coref/model.hpp"

namespace coref::formats {

// ---------------------------------------------------------------- documents

// Schema: <document id="..." [genre="..."]> <S No="..."> <W IX= LEM= POS=
// REL= HEAD=>surface</W> ... </S> ... </document>.
Document parse_document_xml(std::string_view bytes);
std::string write_document_xml(const Document& doc);

// --------------------------------------------------------------- coref XML

struct CorefXmlFile {
  std::string doc_id;
  std::vector<Mention> mentions;
  std::vector<std::string> texts;  // parallel to mentions; informational only
  std::vector<Chain> chains;       // members reference Mention::id
};

CorefXmlFile parse_coref_xml(std::string_view bytes);

// Writes mentions in the given order with the given ids and text payloads.
// The mention sequence is assumed to already be in document order (which is
// how every file this suite produces is laid out); chains are sorted by the
// position of their smallest member in that sequence.
std::string write_coref_xml(const CorefXmlFile& file);

// Canonicalizing variant: mentions are sorted by document order and
// renumbered 0..n-1, text payloads are regenerated from the document's token
// surfaces joined by single spaces. Throws DataError if a mention is out of
// the document's bounds.
std::string write_coref_xml(const CorefXmlFile& file, const Document& doc);

// ------------------------------------------------------------------- CoNLL

// A mention in CoNLL row coordinates: sentence position in the document and
// 0-based token indexes (inclusive).
struct ConllMention {
  int sentence = 0;
  int from_tok = 0;
  int to_tok = 0;
  bool operator==(const ConllMention&) const = default;
};

struct ConllDocument {
  std::string doc_id;
  std::vector<std::vector<std::string>> sentences;  // token surfaces
  std::vector<std::vector<ConllMention>> chains;    // by ascending entity id
};

struct ConllFile {
  std::vector<ConllDocument> documents;
};

// Columns: docId, 0-based token index, surface, coreference (last column).
// Documents are delimited by "#begin document (id); part 000"/"#end document"
// lines; one blank line separates sentences.
ConllFile parse_conll(std::string_view bytes);

// Emits one document. Every chain of `coref` becomes a CoNLL entity; declared
// mentions that are in no chain are emitted as singleton entities (the
// given-mentions convention). Entity ids are assigned 0..n-1 in canonical
// chain order.
std::string write_conll(const Document& doc, const CorefXmlFile& coref);

// -------------------------------------------------------------- converters

// Same operation as write_conll; named for the CLI's convert verb.
std::string convert_xml_to_conll(const Document& doc, const CorefXmlFile& coref);

// Maps row coordinates back to (sentenceNo, wordIX) through `doc`. Mentions
// are the distinct spans of all chains, id'd 0..n-1 in document order.
// Throws ParseError if the token layout does not match the document.
CorefXmlFile convert_conll_to_xml(const ConllDocument& conll, const Document& doc);

}  // namespace coref::formats

#endif  // COREF_FORMATS_HPP
