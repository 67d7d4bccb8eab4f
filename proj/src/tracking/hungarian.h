#pragma once

#include <utility>
#include <vector>

namespace skypick::tracking {

// Dense rectangular cost matrix, row major.
struct CostMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> cost;

  double at(int r, int c) const { return cost[static_cast<size_t>(r) * cols + c]; }
  double& at(int r, int c) { return cost[static_cast<size_t>(r) * cols + c]; }
};

// Minimum-total-cost matching of size min(rows, cols). Costs must be finite;
// use a large sentinel for pairs the caller wants to reject afterwards.
// Among all optimal matchings, returns the one whose column vector, read in
// row order with unmatched rows treated as +inf, is lexicographically
// smallest. That refinement makes the result unique and deterministic.
std::vector<std::pair<int, int>> hungarian(const CostMatrix& m);

// Total cost of an optimal matching, without the tie-break pass.
double hungarian_cost(const CostMatrix& m);

}  // namespace skypick::tracking
