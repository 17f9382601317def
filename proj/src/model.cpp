#include "coref/model.hpp"

#include <algorithm>
#include <unordered_set>

namespace coref {

Chain make_chain(std::vector<int> mention_ids) {
  std::sort(mention_ids.begin(), mention_ids.end());
  mention_ids.erase(std::unique(mention_ids.begin(), mention_ids.end()), mention_ids.end());
  return Chain{std::move(mention_ids)};
}

std::unordered_map<std::string, int> sentence_index(const Document& doc) {
  std::unordered_map<std::string, int> index;
  index.reserve(doc.sentences.size());
  for (size_t i = 0; i < doc.sentences.size(); ++i) {
    auto [it, inserted] = index.emplace(doc.sentences[i].sentence_no, static_cast<int>(i));
    if (!inserted) throw DataError("duplicate sentenceNo: " + doc.sentences[i].sentence_no);
  }
  return index;
}

int compare_document_order(const Mention& a, const Mention& b,
                           const std::unordered_map<std::string, int>& sent_index) {
  auto pos = [&](const Mention& m) {
    auto it = sent_index.find(m.sentence_no);
    if (it == sent_index.end()) throw DataError("unknown sentenceNo: " + m.sentence_no);
    return it->second;
  };
  int pa = pos(a), pb = pos(b);
  if (pa != pb) return pa < pb ? -1 : 1;
  if (a.from_word_ix != b.from_word_ix) return a.from_word_ix < b.from_word_ix ? -1 : 1;
  if (a.to_word_ix != b.to_word_ix) return a.to_word_ix < b.to_word_ix ? -1 : 1;
  return 0;
}

int compare_document_order(const Mention& a, const Mention& b, const Document& doc) {
  return compare_document_order(a, b, sentence_index(doc));
}

bool overlaps(const Mention& a, const Mention& b) {
  return a.sentence_no == b.sentence_no && a.from_word_ix <= b.to_word_ix &&
         b.from_word_ix <= a.to_word_ix;
}

std::vector<Violation> validate_partition(const AnnotationSet& annotation,
                                          const std::vector<Mention>& mentions,
                                          PartitionContext context) {
  std::vector<Violation> violations;
  std::unordered_map<int, const Mention*> by_id;
  for (const Mention& m : mentions) by_id.emplace(m.id, &m);

  std::unordered_set<int> seen;
  for (const Chain& chain : annotation.chains) {
    std::unordered_set<int> in_chain;
    for (int id : chain.mention_ids) {
      if (!by_id.count(id)) {
        violations.push_back({Severity::error, "unknown mention id " + std::to_string(id)});
        continue;
      }
      if (!in_chain.insert(id).second) {
        violations.push_back(
            {Severity::error, "mention " + std::to_string(id) + " listed twice in one chain"});
        continue;
      }
      if (!seen.insert(id).second) {
        violations.push_back(
            {Severity::error, "mention " + std::to_string(id) + " appears in two chains"});
      }
    }
    if (chain.mention_ids.size() < 2) {
      violations.push_back({Severity::warning, "chain of size " +
                                                   std::to_string(chain.mention_ids.size())});
    }
    // Pairwise overlap among chain members: warning for raw annotator data,
    // hard error for an adjudicated gold standard.
    for (size_t i = 0; i < chain.mention_ids.size(); ++i) {
      for (size_t j = i + 1; j < chain.mention_ids.size(); ++j) {
        auto a = by_id.find(chain.mention_ids[i]);
        auto b = by_id.find(chain.mention_ids[j]);
        if (a == by_id.end() || b == by_id.end()) continue;
        if (overlaps(*a->second, *b->second)) {
          Severity sev =
              context == PartitionContext::gold ? Severity::error : Severity::warning;
          violations.push_back({sev, "overlapping coreferent mentions " +
                                         std::to_string(a->first) + " and " +
                                         std::to_string(b->first)});
        }
      }
    }
  }
  return violations;
}

std::vector<Chain> drop_singletons(const std::vector<Chain>& chains) {
  std::vector<Chain> kept;
  for (const Chain& c : chains)
    if (c.mention_ids.size() >= 2) kept.push_back(c);
  return kept;
}

int SpanInterner::intern(const SpanKey& key) {
  auto [it, inserted] = index_.emplace(key, static_cast<int>(spans_.size()));
  if (inserted) spans_.push_back(key);
  return it->second;
}

int SpanInterner::lookup(const SpanKey& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? -1 : it->second;
}

}  // namespace coref
