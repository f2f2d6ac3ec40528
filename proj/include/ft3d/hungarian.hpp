// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

#include <span>
#include <utility>
#include <vector>

namespace ft3d {

/// Cost value used to mark forbidden pairs. Callers reject any returned
/// pair whose cost is at or above their own gate.
inline constexpr double kForbiddenCost = 1e9;

struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // (row, col), sorted by row
  double total_cost = 0.0;
};

/// Minimum-cost one-to-one assignment over min(rows, cols) pairs
/// (Kuhn-Munkres with potentials, O(n^2 m)). `cost` is row-major.
Assignment hungarian(std::span<const double> cost, int rows, int cols);

}  // namespace ft3d
