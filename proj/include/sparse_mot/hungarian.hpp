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

#ifndef SPARSE_MOT__HUNGARIAN_HPP_
#define SPARSE_MOT__HUNGARIAN_HPP_

#include <Eigen/Core>

#include <limits>
#include <utility>
#include <vector>

namespace sparse_mot
{

/// Marks a cost matrix entry that may never be part of an assignment.
inline constexpr double kForbidden = std::numeric_limits<double>::infinity();

struct Assignment
{
  std::vector<int> row_to_col;  // -1 when the row is unassigned
  std::vector<int> col_to_row;  // -1 when the column is unassigned
  double total_cost{0.0};

  std::size_t size() const;
  std::vector<std::pair<int, int>> pairs() const;
};

/// Minimum-cost one-to-one assignment (Kuhn-Munkres with potentials, O(n^2 m)).
///
/// Non-finite entries are forbidden. Among all assignments the solver first
/// maximises the number of allowed pairs, then minimises their summed cost.
/// Rows or columns that can only be matched through forbidden entries stay
/// unassigned.
Assignment hungarian(const Eigen::MatrixXd & cost);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__HUNGARIAN_HPP_
