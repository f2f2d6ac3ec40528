// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ft3d {

namespace {

// Classic potentials formulation for n <= m, 1-based internally.
std::vector<int> solve_rows_le_cols(std::span<const double> a, int n, int m, bool transposed) {
  auto cost = [&](int i, int j) { return transposed ? a[static_cast<std::size_t>(j) * n + i] : a[static_cast<std::size_t>(i) * m + j]; };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
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
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

Assignment hungarian(std::span<const double> cost, int rows, int cols) {
  if (rows < 0 || cols < 0 || cost.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("hungarian: cost matrix size does not match rows*cols");
  for (double c : cost)
    if (!std::isfinite(c)) throw std::invalid_argument("hungarian: costs must be finite");
  Assignment out;
  if (rows == 0 || cols == 0) return out;

  if (rows <= cols) {
    const auto r2c = solve_rows_le_cols(cost, rows, cols, false);
    for (int r = 0; r < rows; ++r) out.pairs.emplace_back(r, r2c[r]);
  } else {
    // Solve the transpose so that the smaller side drives the augmentation.
    const auto c2r = solve_rows_le_cols(cost, cols, rows, true);
    for (int c = 0; c < cols; ++c) out.pairs.emplace_back(c2r[c], c);
    std::sort(out.pairs.begin(), out.pairs.end());
  }
  for (const auto& [r, c] : out.pairs) out.total_cost += cost[static_cast<std::size_t>(r) * cols + c];
  return out;
}

}  // namespace ft3d
