// Core domain types for coreference data: documents, mentions, chains and
// annotation sets, plus the span ordering / overlap / partition-validation
// primitives shared by every other module.
#ifndef COREF_MODEL_HPP
#define COREF_MODEL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coref {

// Parse failure in any of the file formats. `line` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + std::move(message)
                                    : std::move(message)),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Semantically invalid data (unknown ids, inconsistent inputs, ...).
class DataError : public std::runtime_error {
 public:
  explicit DataError(std::string message) : std::runtime_error(std::move(message)) {}
};

struct Token {
  std::string surface;
  std::string lemma;
  std::string pos;
  int dep_head = 0;  // sentence-local index of the governing token, 0 = root
  std::string dep_rel;
  int word_ix = 1;  // 1-based index within the sentence
};

struct Sentence {
  std::string sentence_no;  // opaque identifier, unique within a document
  std::vector<Token> tokens;
};

struct Document {
  std::string doc_id;
  std::string genre;  // optional, empty if unknown
  std::vector<Sentence> sentences;
};

// A contiguous token span within one sentence. `id` is file-local; identity
// across files is the (sentence_no, from_word_ix, to_word_ix) triple.
struct Mention {
  int id = 0;
  std::string sentence_no;
  int from_word_ix = 1;
  int to_word_ix = 1;
};

// Span triple used as the cross-file identity of a mention.
struct SpanKey {
  std::string sentence_no;
  int from = 1;
  int to = 1;
  bool operator==(const SpanKey&) const = default;
};

inline SpanKey span_of(const Mention& m) { return {m.sentence_no, m.from_word_ix, m.to_word_ix}; }

struct SpanKeyHash {
  size_t operator()(const SpanKey& k) const {
    size_t h = std::hash<std::string>()(k.sentence_no);
    h ^= std::hash<int>()(k.from) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<int>()(k.to) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Set of mention ids referring to one entity. Kept sorted and duplicate-free.
struct Chain {
  std::vector<int> mention_ids;
};

// Sorts and deduplicates the member list.
Chain make_chain(std::vector<int> mention_ids);

// One annotator's (or one system's) disjoint chains over a mention set.
// Mentions absent from every chain are "unassigned".
struct AnnotationSet {
  std::string annotator_id;
  std::vector<Chain> chains;
};

// Maps sentence_no -> position in document order. Throws DataError on a
// duplicate sentence_no.
std::unordered_map<std::string, int> sentence_index(const Document& doc);

// Lexicographic order on (sentence position, from_word_ix, to_word_ix).
// Returns <0, 0, >0. Throws DataError if either sentence_no is unknown.
int compare_document_order(const Mention& a, const Mention& b, const Document& doc);
int compare_document_order(const Mention& a, const Mention& b,
                           const std::unordered_map<std::string, int>& sent_index);

// True iff the spans are in the same sentence and their token intervals
// intersect. Symmetric, and reflexive on any mention with itself.
bool overlaps(const Mention& a, const Mention& b);

enum class Severity { warning, error };

struct Violation {
  Severity severity = Severity::warning;
  std::string message;
};

// Overlapping coreferent mentions are a warning in raw annotator data but an
// error in an adjudicated gold standard.
enum class PartitionContext { raw, gold };

// Checks an annotation set against a declared mention list: duplicate chain
// membership, references to undeclared ids, chains of size < 2 (warning) and
// overlapping coreferent mentions. Violations are returned, never thrown.
std::vector<Violation> validate_partition(const AnnotationSet& annotation,
                                          const std::vector<Mention>& mentions,
                                          PartitionContext context = PartitionContext::raw);

// Normalization step used before scoring: removes size-1 chains.
std::vector<Chain> drop_singletons(const std::vector<Chain>& chains);

// Interns span triples to dense ids, for cross-file mention matching.
class SpanInterner {
 public:
  int intern(const SpanKey& key);
  int lookup(const SpanKey& key) const;  // -1 if unseen
  size_t size() const { return spans_.size(); }
  const SpanKey& span(int id) const { return spans_[id]; }

 private:
  std::unordered_map<SpanKey, int, SpanKeyHash> index_;
  std::vector<SpanKey> spans_;
};

}  // namespace coref

#endif  // COREF_MODEL_HPP
