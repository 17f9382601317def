// The five coreference scoring metrics (MUC, B3, CEAF_m/e, BLANC, LEA) with
// Precision/Recall/F1 and micro-accumulation across documents.
//
// Inputs are chain sets over interned mention ids; equal ids mean the same
// mention. 0/0 ratios evaluate to 0, as does the F1 of (0, 0).
#ifndef COREF_METRICS_HPP
#define COREF_METRICS_HPP

#include <span>
#include <vector>

#include "coref/model.hpp"

namespace coref::metrics {

struct RatioPair {
  double num = 0.0;
  double den = 0.0;
  double value() const { return den == 0.0 ? 0.0 : num / den; }
};

double f1_of(double recall, double precision);

struct MetricScore {
  RatioPair recall;
  RatioPair precision;
  double f1 = 0.0;
  std::string metric;  // set by the score_* functions; guards accumulation
};

MetricScore make_score(RatioPair recall, RatioPair precision);

// Key and response chains over a shared mention-id space. Callers decide
// whether singletons were normalized away; BLANC and B3 accept them.
struct ScoringInput {
  std::vector<std::vector<int>> key;
  std::vector<std::vector<int>> response;
};

ScoringInput make_input(const std::vector<Chain>& key, const std::vector<Chain>& response);

MetricScore score_muc(const ScoringInput& input);
MetricScore score_bcub(const ScoringInput& input);

enum class CeafVariant { mention, entity };
MetricScore score_ceaf(const ScoringInput& input, CeafVariant variant);

// Coreference-link and non-coreference-link sub-scores. The headline value
// is the arithmetic mean of the two F-measures; when one side has no links
// of a kind in either key or response, the other side's figures are used
// alone (the extension for spurious/missing response mentions).
struct BlancScore {
  MetricScore coref;
  MetricScore noncoref;

  double blanc() const;
  // Display-only combination; accumulate BlancScore values, not this.
  MetricScore combined() const;
};

BlancScore score_blanc(const ScoringInput& input);

MetricScore score_lea(const ScoringInput& input);

// Micro accumulation: numerators and denominators are summed in sequence
// order before the ratios are taken, so the result is identical no matter
// how the per-document scores were produced. Throws DataError when scores
// from different metrics are mixed.
MetricScore accumulate(std::span<const MetricScore> scores);
BlancScore accumulate_blanc(std::span<const BlancScore> scores);

}  // namespace coref::metrics

#endif  // COREF_METRICS_HPP
