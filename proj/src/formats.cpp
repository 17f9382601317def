#include "coref/formats.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "coref/xml.hpp"

namespace coref::formats {

namespace {

int parse_int_attr(const xml::Node& node, std::string_view name, int min_value) {
  const std::string* raw = node.attr(name);
  if (!raw) throw ParseError("missing attribute '" + std::string(name) + "'", node.line);
  int value = 0;
  auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), value);
  if (ec != std::errc() || ptr != raw->data() + raw->size())
    throw ParseError("attribute '" + std::string(name) + "' is not an integer: " + *raw,
                     node.line);
  if (value < min_value)
    throw ParseError("attribute '" + std::string(name) + "' out of range: " + *raw, node.line);
  return value;
}

std::string require_attr(const xml::Node& node, std::string_view name) {
  const std::string* raw = node.attr(name);
  if (!raw) throw ParseError("missing attribute '" + std::string(name) + "'", node.line);
  return *raw;
}

bool has_whitespace(std::string_view s) {
  for (char c : s)
    if (std::isspace(static_cast<unsigned char>(c))) return true;
  return false;
}

void check_token_surface(const std::string& surface) {
  if (surface.empty()) throw DataError("token surface is empty");
  if (has_whitespace(surface)) throw DataError("token surface contains whitespace: " + surface);
}

}  // namespace

Document parse_document_xml(std::string_view bytes) {
  xml::Node root = xml::parse(bytes);
  if (root.name != "document") throw ParseError("expected root element 'document'", root.line);
  Document doc;
  doc.doc_id = require_attr(root, "id");
  if (const std::string* genre = root.attr("genre")) doc.genre = *genre;

  std::unordered_set<std::string> seen_sentences;
  for (const xml::Node& s : root.children) {
    if (s.name != "S") throw ParseError("unexpected element '" + s.name + "'", s.line);
    Sentence sentence;
    sentence.sentence_no = require_attr(s, "No");
    if (!seen_sentences.insert(sentence.sentence_no).second)
      throw ParseError("duplicate sentenceNo: " + sentence.sentence_no, s.line);
    for (const xml::Node& w : s.children) {
      if (w.name != "W") throw ParseError("unexpected element '" + w.name + "'", w.line);
      Token token;
      token.word_ix = parse_int_attr(w, "IX", 1);
      if (token.word_ix != static_cast<int>(sentence.tokens.size()) + 1)
        throw ParseError("word IX gap: expected " +
                             std::to_string(sentence.tokens.size() + 1) + ", got " +
                             std::to_string(token.word_ix),
                         w.line);
      token.lemma = require_attr(w, "LEM");
      token.pos = require_attr(w, "POS");
      token.dep_rel = require_attr(w, "REL");
      token.dep_head = parse_int_attr(w, "HEAD", 0);
      token.surface = w.text;
      if (token.surface.empty()) throw ParseError("empty token surface", w.line);
      sentence.tokens.push_back(std::move(token));
    }
    if (sentence.tokens.empty())
      throw ParseError("sentence '" + sentence.sentence_no + "' has no tokens", s.line);
    for (const Token& t : sentence.tokens)
      if (t.dep_head > static_cast<int>(sentence.tokens.size()))
        throw ParseError("HEAD out of range in sentence " + sentence.sentence_no, s.line);
    doc.sentences.push_back(std::move(sentence));
  }
  if (doc.sentences.empty()) throw ParseError("document has no sentences", root.line);
  return doc;
}

std::string write_document_xml(const Document& doc) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<document id=\"" + xml::escape_attr(doc.doc_id) + "\"";
  if (!doc.genre.empty()) out += " genre=\"" + xml::escape_attr(doc.genre) + "\"";
  out += ">\n";
  for (const Sentence& s : doc.sentences) {
    out += "  <S No=\"" + xml::escape_attr(s.sentence_no) + "\">\n";
    for (const Token& t : s.tokens) {
      out += "    <W IX=\"" + std::to_string(t.word_ix) + "\" LEM=\"" +
             xml::escape_attr(t.lemma) + "\" POS=\"" + xml::escape_attr(t.pos) + "\" REL=\"" +
             xml::escape_attr(t.dep_rel) + "\" HEAD=\"" + std::to_string(t.dep_head) + "\">" +
             xml::escape_text(t.surface) + "</W>\n";
    }
    out += "  </S>\n";
  }
  out += "</document>\n";
  return out;
}

CorefXmlFile parse_coref_xml(std::string_view bytes) {
  xml::Node root = xml::parse(bytes);
  if (root.name != "coreference")
    throw ParseError("expected root element 'coreference'", root.line);
  CorefXmlFile file;
  file.doc_id = require_attr(root, "docId");

  const xml::Node* mentions = root.child("mentions");
  if (!mentions) throw ParseError("missing 'mentions' element", root.line);
  const xml::Node* chains = root.child("chains");
  if (!chains) throw ParseError("missing 'chains' element", root.line);

  std::unordered_set<int> ids;
  for (const xml::Node& m : mentions->children) {
    if (m.name != "mention") throw ParseError("unexpected element '" + m.name + "'", m.line);
    Mention mention;
    mention.id = parse_int_attr(m, "id", 0);
    mention.sentence_no = require_attr(m, "sentenceNo");
    mention.from_word_ix = parse_int_attr(m, "fromWordIX", 1);
    mention.to_word_ix = parse_int_attr(m, "toWordIX", 1);
    if (mention.to_word_ix < mention.from_word_ix)
      throw ParseError("toWordIX < fromWordIX", m.line);
    if (!ids.insert(mention.id).second)
      throw ParseError("duplicate mention id " + std::to_string(mention.id), m.line);
    file.mentions.push_back(std::move(mention));
    file.texts.push_back(m.text);
  }

  for (const xml::Node& c : chains->children) {
    if (c.name != "chain") throw ParseError("unexpected element '" + c.name + "'", c.line);
    std::vector<int> members;
    for (const xml::Node& r : c.children) {
      if (r.name != "mentionRef")
        throw ParseError("unexpected element '" + r.name + "'", r.line);
      int id = parse_int_attr(r, "id", 0);
      if (!ids.count(id))
        throw ParseError("chain references undeclared mention id " + std::to_string(id),
                         r.line);
      if (std::find(members.begin(), members.end(), id) != members.end())
        throw ParseError("mention " + std::to_string(id) + " listed twice in one chain",
                         r.line);
      members.push_back(id);
    }
    if (members.empty()) throw ParseError("empty chain", c.line);
    file.chains.push_back(make_chain(std::move(members)));
  }
  return file;
}

namespace {

// Chains ordered by the position of their smallest member in `order_of`
// (mention id -> position in the mention sequence), members ordered likewise.
std::vector<Chain> canonical_chains(const std::vector<Chain>& chains,
                                    const std::unordered_map<int, int>& order_of) {
  std::vector<Chain> sorted = chains;
  for (Chain& chain : sorted) {
    std::sort(chain.mention_ids.begin(), chain.mention_ids.end(), [&](int a, int b) {
      return order_of.at(a) < order_of.at(b);
    });
  }
  std::sort(sorted.begin(), sorted.end(), [&](const Chain& a, const Chain& b) {
    return order_of.at(a.mention_ids.front()) < order_of.at(b.mention_ids.front());
  });
  return sorted;
}

std::string render_coref_xml(const CorefXmlFile& file,
                             const std::vector<Chain>& sorted_chains) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<coreference docId=\"" + xml::escape_attr(file.doc_id) + "\">\n";
  out += "  <mentions>\n";
  for (size_t i = 0; i < file.mentions.size(); ++i) {
    const Mention& m = file.mentions[i];
    out += "    <mention id=\"" + std::to_string(m.id) + "\" sentenceNo=\"" +
           xml::escape_attr(m.sentence_no) + "\" fromWordIX=\"" +
           std::to_string(m.from_word_ix) + "\" toWordIX=\"" + std::to_string(m.to_word_ix) +
           "\">" + xml::escape_text(i < file.texts.size() ? file.texts[i] : "") +
           "</mention>\n";
  }
  out += "  </mentions>\n";
  out += "  <chains>\n";
  for (const Chain& chain : sorted_chains) {
    out += "    <chain>\n";
    for (int id : chain.mention_ids)
      out += "      <mentionRef id=\"" + std::to_string(id) + "\"/>\n";
    out += "    </chain>\n";
  }
  out += "  </chains>\n";
  out += "</coreference>\n";
  return out;
}

std::unordered_map<int, int> order_by_sequence(const std::vector<Mention>& mentions) {
  std::unordered_map<int, int> order;
  for (size_t i = 0; i < mentions.size(); ++i) order.emplace(mentions[i].id, static_cast<int>(i));
  return order;
}

void check_chain_refs(const CorefXmlFile& file, const std::unordered_map<int, int>& order_of) {
  for (const Chain& chain : file.chains)
    for (int id : chain.mention_ids)
      if (!order_of.count(id))
        throw DataError("chain references undeclared mention id " + std::to_string(id));
}

void check_mention_bounds(const Mention& m, const Document& doc,
                          const std::unordered_map<std::string, int>& sent_index) {
  auto it = sent_index.find(m.sentence_no);
  if (it == sent_index.end()) throw DataError("unknown sentenceNo: " + m.sentence_no);
  int len = static_cast<int>(doc.sentences[it->second].tokens.size());
  if (m.from_word_ix < 1 || m.to_word_ix < m.from_word_ix || m.to_word_ix > len)
    throw DataError("mention out of bounds: " + m.sentence_no + " " +
                    std::to_string(m.from_word_ix) + ".." + std::to_string(m.to_word_ix));
}

std::string span_text(const Mention& m, const Document& doc,
                      const std::unordered_map<std::string, int>& sent_index) {
  const Sentence& s = doc.sentences[sent_index.at(m.sentence_no)];
  std::string text;
  for (int ix = m.from_word_ix; ix <= m.to_word_ix; ++ix) {
    if (ix > m.from_word_ix) text += " ";
    text += s.tokens[ix - 1].surface;
  }
  return text;
}

}  // namespace

std::string write_coref_xml(const CorefXmlFile& file) {
  auto order_of = order_by_sequence(file.mentions);
  if (order_of.size() != file.mentions.size()) throw DataError("duplicate mention ids");
  check_chain_refs(file, order_of);
  return render_coref_xml(file, canonical_chains(file.chains, order_of));
}

std::string write_coref_xml(const CorefXmlFile& file, const Document& doc) {
  auto sent_index = sentence_index(doc);
  auto order_of = order_by_sequence(file.mentions);
  if (order_of.size() != file.mentions.size()) throw DataError("duplicate mention ids");
  check_chain_refs(file, order_of);
  for (const Mention& m : file.mentions) check_mention_bounds(m, doc, sent_index);

  // Sort mentions by document order and renumber 0..n-1.
  std::vector<int> perm(file.mentions.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    int cmp = compare_document_order(file.mentions[a], file.mentions[b], sent_index);
    if (cmp != 0) return cmp < 0;
    return file.mentions[a].id < file.mentions[b].id;
  });

  CorefXmlFile canonical;
  canonical.doc_id = file.doc_id;
  std::unordered_map<int, int> new_id;  // old id -> new id
  for (size_t i = 0; i < perm.size(); ++i) {
    Mention m = file.mentions[perm[i]];
    new_id.emplace(m.id, static_cast<int>(i));
    m.id = static_cast<int>(i);
    canonical.texts.push_back(span_text(m, doc, sent_index));
    canonical.mentions.push_back(std::move(m));
  }
  for (const Chain& chain : file.chains) {
    std::vector<int> members;
    members.reserve(chain.mention_ids.size());
    for (int id : chain.mention_ids) members.push_back(new_id.at(id));
    canonical.chains.push_back(make_chain(std::move(members)));
  }
  auto canonical_order = order_by_sequence(canonical.mentions);
  return render_coref_xml(canonical, canonical_chains(canonical.chains, canonical_order));
}

// ------------------------------------------------------------------- CoNLL

namespace {

struct ConllEntry {
  bool open = false;
  bool close = false;
  int entity = 0;
};

std::vector<ConllEntry> parse_coref_cell(const std::string& cell, int line) {
  std::vector<ConllEntry> entries;
  if (cell == "-") return entries;
  size_t start = 0;
  while (start <= cell.size()) {
    size_t bar = cell.find('|', start);
    std::string piece = cell.substr(start, bar == std::string::npos ? bar : bar - start);
    ConllEntry entry;
    std::string digits = piece;
    if (!digits.empty() && digits.front() == '(') {
      entry.open = true;
      digits.erase(digits.begin());
    }
    if (!digits.empty() && digits.back() == ')') {
      entry.close = true;
      digits.pop_back();
    }
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), entry.entity);
    if ((!entry.open && !entry.close) || digits.empty() || ec != std::errc() ||
        p != digits.data() + digits.size())
      throw ParseError("malformed coreference entry '" + piece + "'", line);
    entries.push_back(entry);
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return entries;
}

std::vector<std::string> split_columns(const std::string& line) {
  std::vector<std::string> cols;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) cols.push_back(line.substr(start, i - start));
  }
  return cols;
}

}  // namespace

ConllFile parse_conll(std::string_view bytes) {
  ConllFile file;
  ConllDocument* doc = nullptr;
  std::vector<std::string> current_sentence;
  // Per-entity stack of (sentence, open token) for bracket matching.
  std::map<int, std::vector<std::pair<int, int>>> open_stacks;
  std::map<int, std::vector<ConllMention>> chains;
  int line_no = 0;

  auto end_sentence = [&](bool required_empty_stacks) {
    if (!current_sentence.empty()) {
      doc->sentences.push_back(std::move(current_sentence));
      current_sentence.clear();
    }
    if (required_empty_stacks) {
      for (const auto& [entity, stack] : open_stacks)
        if (!stack.empty())
          throw ParseError("unbalanced parentheses: chain " + std::to_string(entity) +
                               " left open",
                           line_no);
    }
  };

  size_t pos = 0;
  while (pos <= bytes.size()) {
    size_t eol = bytes.find('\n', pos);
    if (eol == std::string_view::npos) {
      if (pos == bytes.size()) break;
      eol = bytes.size();
    }
    std::string line(bytes.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      throw ParseError("CR line ending; files must use LF", line_no);

    if (line.rfind("#begin document (", 0) == 0) {
      if (doc) throw ParseError("nested #begin document", line_no);
      size_t close = line.rfind("); part ");
      if (close == std::string::npos || line.size() != close + 8 + 3 ||
          !std::all_of(line.begin() + close + 8, line.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("malformed #begin document line", line_no);
      file.documents.emplace_back();
      doc = &file.documents.back();
      doc->doc_id = line.substr(17, close - 17);
      continue;
    }
    if (line == "#end document") {
      if (!doc) throw ParseError("#end document without #begin", line_no);
      end_sentence(true);
      if (doc->sentences.empty()) throw ParseError("document has no rows", line_no);
      for (auto& [entity, mentions] : chains) doc->chains.push_back(std::move(mentions));
      chains.clear();
      open_stacks.clear();
      doc = nullptr;
      continue;
    }
    if (line.empty()) {
      if (doc) end_sentence(true);
      continue;
    }
    if (!doc) throw ParseError("token row outside #begin/#end document", line_no);

    std::vector<std::string> cols = split_columns(line);
    if (cols.size() < 4) throw ParseError("expected at least 4 columns", line_no);
    if (cols[0] != doc->doc_id)
      throw ParseError("document id column mismatch: " + cols[0], line_no);
    int tok_index = -1;
    auto [p, ec] = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), tok_index);
    if (ec != std::errc() || p != cols[1].data() + cols[1].size())
      throw ParseError("token index is not an integer: " + cols[1], line_no);
    if (tok_index != static_cast<int>(current_sentence.size()))
      throw ParseError("token count mismatch: expected index " +
                           std::to_string(current_sentence.size()) + ", got " + cols[1],
                       line_no);
    current_sentence.push_back(cols[2]);

    int sent = static_cast<int>(doc->sentences.size());
    int tok = tok_index;
    for (const ConllEntry& entry : parse_coref_cell(cols.back(), line_no)) {
      if (entry.open && entry.close) {
        chains[entry.entity].push_back({sent, tok, tok});
      } else if (entry.open) {
        open_stacks[entry.entity].push_back({sent, tok});
      } else {
        auto& stack = open_stacks[entry.entity];
        if (stack.empty())
          throw ParseError("unbalanced parentheses: chain " + std::to_string(entry.entity) +
                               " closed but not open",
                           line_no);
        auto [open_sent, open_tok] = stack.back();
        stack.pop_back();
        chains[entry.entity].push_back({open_sent, open_tok, tok});
      }
    }
  }
  if (doc) throw ParseError("missing #end document", line_no);

  for (ConllDocument& d : file.documents) {
    for (auto& mentions : d.chains) {
      std::sort(mentions.begin(), mentions.end(), [](const ConllMention& a, const ConllMention& b) {
        return std::tie(a.sentence, a.from_tok, a.to_tok) <
               std::tie(b.sentence, b.from_tok, b.to_tok);
      });
      for (size_t i = 1; i < mentions.size(); ++i)
        if (mentions[i] == mentions[i - 1])
          throw ParseError("duplicate mention in one chain");
    }
  }
  return file;
}

std::string write_conll(const Document& doc, const CorefXmlFile& coref) {
  auto sent_index = sentence_index(doc);
  auto order_of = order_by_sequence(coref.mentions);
  if (order_of.size() != coref.mentions.size()) throw DataError("duplicate mention ids");
  check_chain_refs(coref, order_of);
  for (const Mention& m : coref.mentions) check_mention_bounds(m, doc, sent_index);
  for (const Sentence& s : doc.sentences)
    for (const Token& t : s.tokens) check_token_surface(t.surface);

  // Chains to emit: the declared ones plus one singleton per unassigned
  // mention, all in canonical order, numbered 0..n-1.
  std::unordered_set<int> assigned;
  for (const Chain& chain : coref.chains)
    for (int id : chain.mention_ids) assigned.insert(id);
  std::vector<Chain> emitted = coref.chains;
  for (const Mention& m : coref.mentions)
    if (!assigned.count(m.id)) emitted.push_back(Chain{{m.id}});

  std::unordered_map<int, int> doc_order;  // mention id -> document-order rank
  {
    std::vector<int> perm(coref.mentions.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
      int cmp = compare_document_order(coref.mentions[a], coref.mentions[b], sent_index);
      if (cmp != 0) return cmp < 0;
      return coref.mentions[a].id < coref.mentions[b].id;
    });
    for (size_t rank = 0; rank < perm.size(); ++rank)
      doc_order.emplace(coref.mentions[perm[rank]].id, static_cast<int>(rank));
  }
  emitted = canonical_chains(emitted, doc_order);

  std::unordered_map<int, const Mention*> by_id;
  for (const Mention& m : coref.mentions) by_id.emplace(m.id, &m);

  // Bracket matching is LIFO per entity, which reconstructs nested spans but
  // cannot represent two crossing spans of one entity.
  for (const Chain& chain : emitted) {
    for (size_t a = 0; a < chain.mention_ids.size(); ++a) {
      for (size_t b = a + 1; b < chain.mention_ids.size(); ++b) {
        const Mention& ma = *by_id.at(chain.mention_ids[a]);
        const Mention& mb = *by_id.at(chain.mention_ids[b]);
        if (!overlaps(ma, mb)) continue;
        bool nested = (ma.from_word_ix <= mb.from_word_ix && mb.to_word_ix <= ma.to_word_ix) ||
                      (mb.from_word_ix <= ma.from_word_ix && ma.to_word_ix <= mb.to_word_ix);
        if (!nested)
          throw DataError("chain contains crossing mentions, not representable in CoNLL");
      }
    }
  }

  // Per-token entry lists: opens (longer spans first), singles, closes
  // (shorter spans first).
  struct Cell {
    std::vector<std::pair<int, int>> opens;    // (-to_word_ix, entity)
    std::vector<int> singles;                  // entity
    std::vector<std::pair<int, int>> closes;   // (-from_word_ix, entity)
  };
  std::vector<std::vector<Cell>> cells(doc.sentences.size());
  for (size_t s = 0; s < doc.sentences.size(); ++s)
    cells[s].resize(doc.sentences[s].tokens.size());

  for (size_t entity = 0; entity < emitted.size(); ++entity) {
    for (int id : emitted[entity].mention_ids) {
      const Mention& m = *by_id.at(id);
      int s = sent_index.at(m.sentence_no);
      int from = m.from_word_ix - 1;
      int to = m.to_word_ix - 1;
      if (from == to) {
        cells[s][from].singles.push_back(static_cast<int>(entity));
      } else {
        cells[s][from].opens.push_back({-m.to_word_ix, static_cast<int>(entity)});
        cells[s][to].closes.push_back({-m.from_word_ix, static_cast<int>(entity)});
      }
    }
  }

  std::string out = "#begin document (" + doc.doc_id + "); part 000\n";
  for (size_t s = 0; s < doc.sentences.size(); ++s) {
    if (s > 0) out += "\n";
    const Sentence& sentence = doc.sentences[s];
    for (size_t t = 0; t < sentence.tokens.size(); ++t) {
      Cell& cell = cells[s][t];
      std::sort(cell.opens.begin(), cell.opens.end());
      std::sort(cell.singles.begin(), cell.singles.end());
      std::sort(cell.closes.begin(), cell.closes.end());
      std::string coref_col;
      for (const auto& [_, entity] : cell.opens) {
        if (!coref_col.empty()) coref_col += "|";
        coref_col += "(" + std::to_string(entity);
      }
      for (int entity : cell.singles) {
        if (!coref_col.empty()) coref_col += "|";
        coref_col += "(" + std::to_string(entity) + ")";
      }
      for (const auto& [_, entity] : cell.closes) {
        if (!coref_col.empty()) coref_col += "|";
        coref_col += std::to_string(entity) + ")";
      }
      if (coref_col.empty()) coref_col = "-";
      out += doc.doc_id + "\t" + std::to_string(t) + "\t" + sentence.tokens[t].surface + "\t" +
             coref_col + "\n";
    }
  }
  out += "#end document\n";
  return out;
}

std::string convert_xml_to_conll(const Document& doc, const CorefXmlFile& coref) {
  return write_conll(doc, coref);
}

CorefXmlFile convert_conll_to_xml(const ConllDocument& conll, const Document& doc) {
  if (conll.sentences.size() != doc.sentences.size())
    throw ParseError("token count mismatch: CoNLL has " +
                     std::to_string(conll.sentences.size()) + " sentences, document has " +
                     std::to_string(doc.sentences.size()));
  for (size_t s = 0; s < conll.sentences.size(); ++s)
    if (conll.sentences[s].size() != doc.sentences[s].tokens.size())
      throw ParseError("token count mismatch in sentence " + doc.sentences[s].sentence_no +
                       ": CoNLL has " + std::to_string(conll.sentences[s].size()) +
                       " tokens, document has " +
                       std::to_string(doc.sentences[s].tokens.size()));

  // Distinct spans in document order become the declared mentions.
  std::vector<ConllMention> spans;
  for (const auto& chain : conll.chains)
    for (const ConllMention& m : chain) spans.push_back(m);
  std::sort(spans.begin(), spans.end(), [](const ConllMention& a, const ConllMention& b) {
    return std::tie(a.sentence, a.from_tok, a.to_tok) <
           std::tie(b.sentence, b.from_tok, b.to_tok);
  });
  spans.erase(std::unique(spans.begin(), spans.end()), spans.end());

  std::map<std::tuple<int, int, int>, int> span_id;
  CorefXmlFile file;
  file.doc_id = conll.doc_id.empty() ? doc.doc_id : conll.doc_id;
  auto sent_index = sentence_index(doc);
  for (const ConllMention& span : spans) {
    Mention m;
    m.id = static_cast<int>(file.mentions.size());
    m.sentence_no = doc.sentences[span.sentence].sentence_no;
    m.from_word_ix = span.from_tok + 1;
    m.to_word_ix = span.to_tok + 1;
    span_id.emplace(std::make_tuple(span.sentence, span.from_tok, span.to_tok), m.id);
    file.texts.push_back(span_text(m, doc, sent_index));
    file.mentions.push_back(std::move(m));
  }
  for (const auto& chain : conll.chains) {
    std::vector<int> members;
    members.reserve(chain.size());
    for (const ConllMention& m : chain)
      members.push_back(span_id.at(std::make_tuple(m.sentence, m.from_tok, m.to_tok)));
    file.chains.push_back(make_chain(std::move(members)));
  }
  std::sort(file.chains.begin(), file.chains.end(), [](const Chain& a, const Chain& b) {
    return a.mention_ids.front() < b.mention_ids.front();
  });
  return file;
}

}  // namespace coref::formats
