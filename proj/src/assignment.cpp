#include "coref/assignment.hpp"

#include <limits>

namespace coref::metrics {

namespace {

// Min-cost full assignment of all rows, n <= m, 1-based scratch arrays.
std::vector<int> min_cost_rows(const std::vector<std::vector<double>>& cost) {
  int n = static_cast<int>(cost.size());
  int m = n == 0 ? 0 : static_cast<int>(cost[0].size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> match(m + 1, 0);  // column -> row (1-based, 0 = free)
  std::vector<int> way(m + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      int i0 = match[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j)
    if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

std::vector<int> max_weight_assignment(const std::vector<std::vector<double>>& weight) {
  int rows = static_cast<int>(weight.size());
  if (rows == 0) return {};
  int cols = static_cast<int>(weight[0].size());
  if (cols == 0) return std::vector<int>(rows, -1);

  double max_w = 0.0;
  for (const auto& row : weight)
    for (double w : row)
      if (w > max_w) max_w = w;

  if (rows <= cols) {
    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) cost[r][c] = max_w - weight[r][c];
    return min_cost_rows(cost);
  }
  // Transpose so the fully matched side is the smaller one.
  std::vector<std::vector<double>> cost(cols, std::vector<double>(rows));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) cost[c][r] = max_w - weight[r][c];
  std::vector<int> col_to_row = min_cost_rows(cost);
  std::vector<int> row_to_col(rows, -1);
  for (int c = 0; c < cols; ++c)
    if (col_to_row[c] >= 0) row_to_col[col_to_row[c]] = c;
  return row_to_col;
}

}  // namespace coref::metrics
