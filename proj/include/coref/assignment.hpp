// Maximum-weight bipartite assignment (shortest augmenting paths with
// potentials). Used by CEAF to find the best one-to-one entity mapping.
#ifndef COREF_ASSIGNMENT_HPP
#define COREF_ASSIGNMENT_HPP

#include <vector>

namespace coref::metrics {

// weight[r][c] >= 0. Returns, for each row, the matched column or -1.
// Cost O(min^2 * max) over the matrix dimensions; since all weights are
// non-negative the full matching of the smaller side is also the best
// partial matching.
std::vector<int> max_weight_assignment(const std::vector<std::vector<double>>& weight);

}  // namespace coref::metrics

#endif  // COREF_ASSIGNMENT_HPP
