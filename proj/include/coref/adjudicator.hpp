// Merges many independent coreference annotations into one gold standard by
// exact constrained optimization: the solution partition minimizes the total
// divergence from the annotator inputs, where a link an annotator marked
// coreferent but the solution separates costs twice as much as the converse.
//
// Hard constraints: (i) overlapping mentions are never coreferent in the
// solution, (ii) every coreferent pair of the solution was linked by at
// least one annotator (so solution chains are cliques of annotated links).
#ifndef COREF_ADJUDICATOR_HPP
#define COREF_ADJUDICATOR_HPP

#include <cstdint>
#include <vector>

#include "coref/model.hpp"

namespace coref::adjudicator {

// Per-pair coreference vote counts over mention indices 0..mention_count-1
// (the position of each mention in the declared sequence, which is document
// order by file convention). Pairs nobody linked are implicit zeroes.
struct PairTally {
  int mention_count = 0;
  int annotator_count = 0;  // k
  std::unordered_map<uint64_t, int> coref_counts;

  static uint64_t pair_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
  }
  // w+(a, b): number of annotators that put a and b in one chain.
  int coref(int a, int b) const {
    auto it = coref_counts.find(pair_key(a, b));
    return it == coref_counts.end() ? 0 : it->second;
  }
};

// Annotation chains reference Mention::id values from `mentions`.
PairTally tally_links(const std::vector<Mention>& mentions,
                      const std::vector<AnnotationSet>& annotations);

struct Weights {
  int omit = 2;    // per annotator that linked a pair the solution separates
  int commit = 1;  // per annotator that separated a pair the solution links
};

// Objective value of a candidate partition (chains over Mention::id values):
//   sum over same-chain pairs of commit*(k - w+) + over split pairs of omit*w+.
long long objective_cost(const AnnotationSet& candidate,
                         const std::vector<Mention>& mentions, const PairTally& tally,
                         Weights weights = {});

struct ComponentStats {
  int size = 0;
  long long nodes = 0;  // branch-and-bound nodes explored
  long long cost = 0;
};

struct AdjudicationResult {
  AnnotationSet gold;  // chains of size >= 2, over Mention::id values
  long long cost = 0;
  std::vector<ComponentStats> per_component;
};

// Manually forced decisions, by Mention::id. Must-links override constraint
// (ii); a must-link over overlapping mentions or a pair that is also
// cannot-linked is unsatisfiable and raises DataError.
struct ForcedPairs {
  std::vector<std::pair<int, int>> must_link;
  std::vector<std::pair<int, int>> cannot_link;
};

// Exact solver: branch-and-bound over per-component cluster assignments in
// mention order; ties between optimal partitions are broken toward the
// lexicographically smallest restricted-growth encoding. Components of the
// linked-pair graph are independent and solved in parallel.
AdjudicationResult adjudicate(const std::vector<Mention>& mentions,
                              const std::vector<AnnotationSet>& annotations,
                              Weights weights = {}, const ForcedPairs* forced = nullptr);

// Test oracle: exhaustive enumeration of all constrained partitions, same
// contract as adjudicate. Rejects components larger than 10 mentions.
AdjudicationResult enumerate_oracle(const std::vector<Mention>& mentions,
                                    const std::vector<AnnotationSet>& annotations,
                                    Weights weights = {});

}  // namespace coref::adjudicator

#endif  // COREF_ADJUDICATOR_HPP
