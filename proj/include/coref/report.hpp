// Rendering of score / agreement / evaluation reports as aligned text tables
// and machine-readable JSON.
#ifndef COREF_REPORT_HPP
#define COREF_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "coref/baseline.hpp"
#include "coref/metrics.hpp"

namespace coref::report {

struct MetricRow {
  std::string name;  // muc, bcub, ceafm, ceafe, blanc, lea
  metrics::MetricScore score;
};

// Adds a derived "conll" row (mean F1 of muc/bcub/ceafe) when those three are
// all present.
struct ScoreReport {
  std::vector<MetricRow> rows;
  std::optional<double> conll_f1() const;
  std::string to_text() const;
  std::string to_json() const;
};

struct IaaDocument {
  std::string doc_id;
  int mentions = 0;
  int annotators = 0;
  double iaa1 = 0.0;  // Krippendorff alpha, Passonneau distance
  double iaa2 = 0.0;  // Krippendorff alpha, MASI distance
};

struct IaaReport {
  std::vector<IaaDocument> documents;
  // Corpus level, both ways: weighted by mention count and plain average.
  double weighted_iaa1() const;
  double weighted_iaa2() const;
  double mean_iaa1() const;
  double mean_iaa2() const;
  std::string to_text() const;
  std::string to_json() const;
};

std::string crossval_to_text(const baseline::CrossValReport& report);
std::string crossval_to_json(const baseline::CrossValReport& report);

}  // namespace coref::report

#endif  // COREF_REPORT_HPP
