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

#ifndef SPARSE_MOT_TESTS__SUPPORT_HPP_
#define SPARSE_MOT_TESTS__SUPPORT_HPP_

#include "sparse_mot/detection.hpp"
#include "sparse_mot/scan_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace sparse_mot::test
{

inline std::vector<float> even_azimuths(int cols)
{
  std::vector<float> az(static_cast<std::size_t>(cols));
  for (int c = 0; c < cols; ++c) {
    az[static_cast<std::size_t>(c)] = static_cast<float>(2.0 * std::numbers::pi * c / cols);
  }
  return az;
}

inline std::vector<double> even_elevations(int rows)
{
  std::vector<double> el(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    el[static_cast<std::size_t>(r)] =
      rows == 1 ? 0.0 : (-15.0 + 30.0 * r / (rows - 1)) * std::numbers::pi / 180.0;
  }
  return el;
}

/// Scan with every cell valid at `range`.
inline OrganizedScan uniform_scan(int rows, int cols, float range, const Pose & pose = Pose::Identity())
{
  return OrganizedScan(
    rows, cols, even_elevations(rows), even_azimuths(cols),
    std::vector<float>(static_cast<std::size_t>(rows * cols), range),
    std::vector<std::uint8_t>(static_cast<std::size_t>(rows * cols), 1), pose, 0.0);
}

/// Reference median: copy, sort, take the middle.
inline float sorted_median(std::vector<float> window)
{
  std::sort(window.begin(), window.end());
  return window[window.size() / 2];
}

inline std::vector<float> naive_circular_median(const std::vector<float> & ring, const std::vector<int> & kernels)
{
  const auto n = static_cast<long>(ring.size());
  std::vector<float> out(ring.size());
  for (long i = 0; i < n; ++i) {
    const long half = kernels[static_cast<std::size_t>(i)] / 2;
    std::vector<float> window;
    for (long o = -half; o <= half; ++o) {
      window.push_back(ring[static_cast<std::size_t>(((i + o) % n + n) % n)]);
    }
    out[static_cast<std::size_t>(i)] = sorted_median(window);
  }
  return out;
}

/// Cluster built straight from points with unit grid cells along a row.
inline Cluster cluster_of(const std::vector<Vec3> & points, int rows = 16, int first_row = 0)
{
  std::vector<GridCell> cells;
  for (std::size_t i = 0; i < points.size(); ++i) {
    cells.push_back({first_row + static_cast<int>(i % 4), static_cast<int>(i / 4)});
  }
  return Cluster::from_cells(cells, points, rows);
}

/// Vertical column of points, a crude person stand-in.
inline std::vector<Vec3> person_points(const Vec3 & foot, double height = 1.7, int n = 12)
{
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) {
    const double z = height * i / (n - 1);
    const double a = 2.0 * std::numbers::pi * i / n;
    pts.push_back(foot + Vec3(0.2 * std::cos(a), 0.2 * std::sin(a), z));
  }
  return pts;
}

inline std::filesystem::path temp_dir(const std::string & name)
{
  auto dir = std::filesystem::temp_directory_path() / ("sparse_mot_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace sparse_mot::test

#endif  // SPARSE_MOT_TESTS__SUPPORT_HPP_
