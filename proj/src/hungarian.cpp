// Copyright 2026 The sparse_mot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparse_mot/hungarian.hpp"

#include <algorithm>
#include <cmath>

namespace sparse_mot
{

std::size_t Assignment::size() const
{
  return static_cast<std::size_t>(
    std::count_if(row_to_col.begin(), row_to_col.end(), [](int c) { return c >= 0; }));
}

std::vector<std::pair<int, int>> Assignment::pairs() const
{
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < static_cast<int>(row_to_col.size()); ++r) {
    if (row_to_col[static_cast<std::size_t>(r)] >= 0) {
      out.emplace_back(r, row_to_col[static_cast<std::size_t>(r)]);
    }
  }
  return out;
}

namespace
{

// Rows <= cols. Returns the column of each row.
std::vector<int> solve_wide(const Eigen::MatrixXd & a)
{
  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(a.cols());
  constexpr double inf = std::numeric_limits<double>::infinity();

  std::vector<double> u(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<double> v(static_cast<std::size_t>(m + 1), 0.0);
  std::vector<int> p(static_cast<std::size_t>(m + 1), 0);
  std::vector<int> way(static_cast<std::size_t>(m + 1), 0);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(m + 1), inf);
    std::vector<char> used(static_cast<std::size_t>(m + 1), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = p[static_cast<std::size_t>(j0)];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (used[uj]) {
          continue;
        }
        const double cur = a(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[uj];
        if (cur < minv[uj]) {
          minv[uj] = cur;
          way[uj] = j0;
        }
        if (minv[uj] < delta) {
          delta = minv[uj];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (used[uj]) {
          u[static_cast<std::size_t>(p[uj])] += delta;
          v[uj] -= delta;
        } else {
          minv[uj] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= m; ++j) {
    if (p[static_cast<std::size_t>(j)] != 0) {
      row_to_col[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
    }
  }
  return row_to_col;
}

}  // namespace

Assignment hungarian(const Eigen::MatrixXd & cost)
{
  const auto rows = static_cast<std::size_t>(cost.rows());
  const auto cols = static_cast<std::size_t>(cost.cols());
  Assignment result;
  result.row_to_col.assign(rows, -1);
  result.col_to_row.assign(cols, -1);
  if (rows == 0 || cols == 0) {
    return result;
  }

  double max_abs = 0.0;
  bool any_allowed = false;
  for (Eigen::Index r = 0; r < cost.rows(); ++r) {
    for (Eigen::Index c = 0; c < cost.cols(); ++c) {
      if (std::isfinite(cost(r, c))) {
        max_abs = std::max(max_abs, std::abs(cost(r, c)));
        any_allowed = true;
      }
    }
  }
  if (!any_allowed) {
    return result;
  }

  // Any single forbidden pair must outweigh every difference in allowed cost
  // an assignment of min(rows, cols) pairs can accumulate.
  const double k = static_cast<double>(std::min(rows, cols));
  const double big = (k + 1.0) * (2.0 * max_abs + 1.0);
  Eigen::MatrixXd work = cost.unaryExpr([big](double x) { return std::isfinite(x) ? x : big; });

  const bool transpose = rows > cols;
  const auto assignment = transpose ? solve_wide(work.transpose()) : solve_wide(work);

  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const int j = assignment[i];
    if (j < 0) {
      continue;
    }
    const auto r = transpose ? static_cast<std::size_t>(j) : i;
    const auto c = transpose ? i : static_cast<std::size_t>(j);
    const double x = cost(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    if (!std::isfinite(x)) {
      continue;
    }
    result.row_to_col[r] = static_cast<int>(c);
    result.col_to_row[c] = static_cast<int>(r);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (result.row_to_col[r] >= 0) {
      result.total_cost +=
        cost(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(result.row_to_col[r]));
    }
  }
  return result;
}

}  // namespace sparse_mot
