#include "tracking/hungarian.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skypick::tracking {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest augmenting path assignment for a matrix with rows <= cols.
// Returns per-row column indices and writes the total cost.
std::vector<int> solve_rows_le_cols(const CostMatrix& m, double* total) {
  const int n = m.rows;
  const int w = m.cols;
  std::vector<double> u(n + 1, 0.0), v(w + 1, 0.0);
  std::vector<int> match(w + 1, n);  // row matched to column j-1, n = free
  std::vector<int> way(w + 1, 0);

  for (int i = 0; i < n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(w + 1, kInf);
    std::vector<char> used(w + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= w; ++j) {
        if (used[j]) continue;
        const double cur = m.at(i0, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= w; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != n);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> row_to_col(n, -1);
  double sum = 0.0;
  for (int j = 1; j <= w; ++j) {
    if (match[j] != n) {
      row_to_col[match[j]] = j - 1;
      sum += m.at(match[j], j - 1);
    }
  }
  if (total) *total = sum;
  return row_to_col;
}

CostMatrix transpose(const CostMatrix& m) {
  CostMatrix t;
  t.rows = m.cols;
  t.cols = m.rows;
  t.cost.resize(m.cost.size());
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      t.at(c, r) = m.at(r, c);
    }
  }
  return t;
}

double optimal_cost(const CostMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0.0;
  double total = 0.0;
  if (m.rows <= m.cols) {
    solve_rows_le_cols(m, &total);
  } else {
    solve_rows_le_cols(transpose(m), &total);
  }
  return total;
}

// Matrix restricted to rows >= first_row and the columns still available.
CostMatrix submatrix(const CostMatrix& m, int first_row, const std::vector<char>& col_free) {
  CostMatrix s;
  s.rows = m.rows - first_row;
  s.cols = 0;
  for (int c = 0; c < m.cols; ++c) s.cols += col_free[c] ? 1 : 0;
  s.cost.resize(static_cast<size_t>(std::max(s.rows, 0)) * s.cols);
  for (int r = first_row; r < m.rows; ++r) {
    int cc = 0;
    for (int c = 0; c < m.cols; ++c) {
      if (col_free[c]) s.at(r - first_row, cc++) = m.at(r, c);
    }
  }
  return s;
}

}  // namespace

double hungarian_cost(const CostMatrix& m) { return optimal_cost(m); }

std::vector<std::pair<int, int>> hungarian(const CostMatrix& m) {
  std::vector<std::pair<int, int>> out;
  if (m.rows == 0 || m.cols == 0) return out;

  const double best = optimal_cost(m);
  const double tol = 1e-9 * (1.0 + std::abs(best));

  // Fix rows in order, each time choosing the smallest column (or skipping
  // the row, when rows outnumber columns) that still permits an optimal
  // completion on the remaining submatrix.
  std::vector<char> col_free(m.cols, 1);
  int cols_left = m.cols;
  double fixed_cost = 0.0;
  for (int r = 0; r < m.rows; ++r) {
    bool assigned = false;
    for (int c = 0; c < m.cols && !assigned; ++c) {
      if (!col_free[c]) continue;
      col_free[c] = 0;
      const double rest = optimal_cost(submatrix(m, r + 1, col_free));
      if (fixed_cost + m.at(r, c) + rest <= best + tol) {
        fixed_cost += m.at(r, c);
        --cols_left;
        out.emplace_back(r, c);
        assigned = true;
      } else {
        col_free[c] = 1;
      }
    }
    // A row with no acceptable column stays unmatched, which can only be
    // optimal when rows outnumber columns.
  }
  return out;
}

}  // namespace skypick::tracking
