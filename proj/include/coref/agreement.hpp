// Krippendorff's alpha over coreference annotations. Mentions are the
// objects; the chains annotators produced are the classes, compared with the
// Passonneau match score (IAA_1) or its Jaccard-weighted MASI variant
// (IAA_2). An annotation process is considered reliable if alpha > 0.67.
#ifndef COREF_AGREEMENT_HPP
#define COREF_AGREEMENT_HPP

#include <functional>
#include <vector>

#include "coref/model.hpp"

namespace coref::agreement {

// A class label: the sorted member set of a chain, as mention indices into
// the declared mention list. An unassigned mention is labelled with the
// singleton set containing itself.
using Label = std::vector<int>;

struct AgreementTable {
  int objects = 0;     // r
  int annotators = 0;  // m
  std::vector<Label> classes;
  // counts[i] lists (class index, n_{b_i}) with n_{b_i} > 0; the counts of
  // each object sum to m.
  std::vector<std::vector<std::pair<int, int>>> counts;
  std::vector<long long> marginals;  // n_b, per class
};

// Annotation chains reference Mention::id values from `mentions`. Identical
// member sets from different annotators become the same class.
AgreementTable build_agreement_table(const std::vector<Mention>& mentions,
                                     const std::vector<AnnotationSet>& annotations);

// delta = 1 - M: M is 1 on equality, 2/3 on strict containment either way,
// 1/3 when the sets share at least two mentions without containment, else 0.
double passonneau_delta(const Label& b, const Label& c);

// delta = 1 - J*M with J the Jaccard similarity |bic|/|buc|.
double masi_delta(const Label& b, const Label& c);

using DeltaFn = std::function<double(const Label&, const Label&)>;

// alpha = 1 - ((rm-1)/m) * sum_i sum_{b<c} n_{b_i} n_{c_i} d_bc
//                        / sum_{b<c} n_b n_c d_bc.
// Zero expected disagreement (a single class) yields alpha = 1.
double krippendorff_alpha(const AgreementTable& table, const DeltaFn& delta);

}  // namespace coref::agreement

#endif  // COREF_AGREEMENT_HPP
