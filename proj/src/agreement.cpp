#include "coref/agreement.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace coref::agreement {

AgreementTable build_agreement_table(const std::vector<Mention>& mentions,
                                     const std::vector<AnnotationSet>& annotations) {
  std::unordered_map<int, int> index_of;  // mention id -> object index
  for (size_t i = 0; i < mentions.size(); ++i)
    if (!index_of.emplace(mentions[i].id, static_cast<int>(i)).second)
      throw DataError("duplicate mention id " + std::to_string(mentions[i].id));

  AgreementTable table;
  table.objects = static_cast<int>(mentions.size());
  table.annotators = static_cast<int>(annotations.size());

  std::map<Label, int> class_of;
  auto class_index = [&](Label label) {
    auto [it, inserted] = class_of.emplace(std::move(label), static_cast<int>(table.classes.size()));
    if (inserted) table.classes.push_back(it->first);
    return it->second;
  };

  // labels[annotator][object] = class index.
  std::vector<std::vector<int>> labels(annotations.size(),
                                       std::vector<int>(mentions.size(), -1));
  for (size_t a = 0; a < annotations.size(); ++a) {
    for (const Chain& chain : annotations[a].chains) {
      Label members;
      members.reserve(chain.mention_ids.size());
      for (int id : chain.mention_ids) {
        auto it = index_of.find(id);
        if (it == index_of.end())
          throw DataError("annotation references undeclared mention id " + std::to_string(id));
        members.push_back(it->second);
      }
      std::sort(members.begin(), members.end());
      int cls = class_index(members);
      for (int obj : members) {
        if (labels[a][obj] != -1)
          throw DataError("mention " + std::to_string(mentions[obj].id) +
                          " appears in two chains of annotator " + annotations[a].annotator_id);
        labels[a][obj] = cls;
      }
    }
    // Unassigned mentions carry their self-singleton label.
    for (size_t obj = 0; obj < mentions.size(); ++obj)
      if (labels[a][obj] == -1) labels[a][obj] = class_index(Label{static_cast<int>(obj)});
  }

  table.counts.resize(mentions.size());
  table.marginals.assign(table.classes.size(), 0);
  for (size_t obj = 0; obj < mentions.size(); ++obj) {
    std::map<int, int> tally;
    for (size_t a = 0; a < annotations.size(); ++a) ++tally[labels[a][obj]];
    for (const auto& [cls, count] : tally) {
      table.counts[obj].emplace_back(cls, count);
      table.marginals[cls] += count;
    }
  }
  return table;
}

namespace {

// Returns (|b intersect c|, containment flags) for sorted labels.
struct SetRelation {
  int common = 0;
  bool b_in_c = false;
  bool c_in_b = false;
};

SetRelation relate(const Label& b, const Label& c) {
  SetRelation rel;
  size_t i = 0, j = 0;
  while (i < b.size() && j < c.size()) {
    if (b[i] == c[j]) {
      ++rel.common;
      ++i;
      ++j;
    } else if (b[i] < c[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  rel.b_in_c = rel.common == static_cast<int>(b.size());
  rel.c_in_b = rel.common == static_cast<int>(c.size());
  return rel;
}

double match_score(const Label& b, const Label& c, const SetRelation& rel) {
  if (rel.b_in_c && rel.c_in_b) return 1.0;
  if (rel.b_in_c || rel.c_in_b) return 2.0 / 3.0;
  if (rel.common >= 2) return 1.0 / 3.0;
  (void)b;
  (void)c;
  return 0.0;
}

}  // namespace

double passonneau_delta(const Label& b, const Label& c) {
  SetRelation rel = relate(b, c);
  return 1.0 - match_score(b, c, rel);
}

double masi_delta(const Label& b, const Label& c) {
  SetRelation rel = relate(b, c);
  double uni = static_cast<double>(b.size() + c.size() - rel.common);
  double jaccard = uni == 0.0 ? 1.0 : static_cast<double>(rel.common) / uni;
  return 1.0 - jaccard * match_score(b, c, rel);
}

double krippendorff_alpha(const AgreementTable& table, const DeltaFn& delta) {
  if (table.annotators < 2) throw DataError("alpha needs at least 2 annotators");
  if (table.objects < 1) throw DataError("alpha needs at least 1 object");

  int n_classes = static_cast<int>(table.classes.size());
  auto dist = [&](int b, int c) { return delta(table.classes[b], table.classes[c]); };

  double observed = 0.0;
  for (const auto& row : table.counts)
    for (size_t x = 0; x < row.size(); ++x)
      for (size_t y = x + 1; y < row.size(); ++y)
        observed += static_cast<double>(row[x].second) * static_cast<double>(row[y].second) *
                    dist(row[x].first, row[y].first);

  double expected = 0.0;
  for (int b = 0; b < n_classes; ++b)
    for (int c = b + 1; c < n_classes; ++c)
      expected += static_cast<double>(table.marginals[b]) *
                  static_cast<double>(table.marginals[c]) * dist(b, c);

  if (expected == 0.0) return 1.0;
  double rm = static_cast<double>(table.objects) * table.annotators;
  return 1.0 - (rm - 1.0) / static_cast<double>(table.annotators) * observed / expected;
}

}  // namespace coref::agreement
