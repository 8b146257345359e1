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

#include "sparse_mot/detection.hpp"

#include "sparse_mot/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>

namespace sparse_mot
{

void ClusterConfig::validate() const
{
  if (search_radius < 1 || !(distance_threshold > 0.0) || min_cluster_size < 1) {
    throw Error(
      ErrorCode::kConfig,
      "cluster config needs search_radius >= 1, distance_threshold > 0, min_cluster_size >= 1");
  }
}

void ObjectModel::validate() const
{
  if (!(min_height > 0.0) || !(max_height > min_height)) {
    throw Error(ErrorCode::kConfig, "object model needs 0 < min_height < max_height");
  }
  if (!(max_diagonal > 0.0) || !(relaxed_max_diagonal > max_diagonal)) {
    throw Error(ErrorCode::kConfig, "object model needs 0 < max_diagonal < relaxed_max_diagonal");
  }
  if (!(vicinity_radius > 0.0)) {
    throw Error(ErrorCode::kConfig, "object model vicinity_radius must be positive");
  }
}

Cluster Cluster::from_cells(std::vector<GridCell> cells, std::vector<Vec3> points, int rows)
{
  Cluster c;
  c.cells = std::move(cells);
  c.points = std::move(points);
  c.centroid = mean_of(c.points);
  c.bbox = Box3::around(c.points);
  for (const auto & cell : c.cells) {
    c.touches_bottom = c.touches_bottom || cell.row == 0;
    c.touches_top = c.touches_top || cell.row == rows - 1;
  }
  return c;
}

std::vector<Cluster> region_grow(
  const OrganizedScan & scan, const SegmentMask & mask, const ClusterConfig & config)
{
  const int rows = scan.rows();
  const int cols = scan.cols();
  const int r = config.search_radius;
  const double theta_sq = config.distance_threshold * config.distance_threshold;

  std::vector<std::uint8_t> visited(static_cast<std::size_t>(rows * cols), 0);
  std::vector<Vec3> world(static_cast<std::size_t>(rows * cols), Vec3::Zero());
  for (int row = 0; row < rows; ++row) {
    for (int col = 0; col < cols; ++col) {
      if (mask.foreground(row, col)) {
        world[scan.index(row, col)] = point_position(scan, row, col);
      }
    }
  }

  std::vector<Cluster> clusters;
  std::deque<GridCell> queue;
  for (int row = 0; row < rows; ++row) {
    for (int col = 0; col < cols; ++col) {
      const auto seed = scan.index(row, col);
      if (!mask.foreground(row, col) || visited[seed]) {
        continue;
      }
      std::vector<GridCell> cells{{row, col}};
      std::vector<Vec3> points{world[seed]};
      visited[seed] = 1;
      queue.push_back({row, col});

      while (!queue.empty()) {
        const GridCell current = queue.front();
        queue.pop_front();
        const Vec3 & p = world[scan.index(current.row, current.col)];
        for (int dr = -r; dr <= r; ++dr) {
          const int nr = current.row + dr;
          if (nr < 0 || nr >= rows) {
            continue;
          }
          const int reach = r - std::abs(dr);
          for (int dc = -reach; dc <= reach; ++dc) {
            const int nc = ((current.col + dc) % cols + cols) % cols;
            const auto idx = scan.index(nr, nc);
            if (visited[idx] || !mask.foreground(nr, nc)) {
              continue;
            }
            if ((world[idx] - p).squaredNorm() < theta_sq) {
              visited[idx] = 1;
              cells.push_back({nr, nc});
              points.push_back(world[idx]);
              queue.push_back({nr, nc});
            }
          }
        }
      }

      if (static_cast<int>(cells.size()) >= config.min_cluster_size) {
        clusters.push_back(Cluster::from_cells(std::move(cells), std::move(points), rows));
      }
    }
  }
  return clusters;
}

namespace
{

bool near_seam(const Cluster & c, const OrganizedScan & scan, int margin)
{
  const double wrap_start = scan.unwrapped_azimuth(0) + 2.0 * std::numbers::pi -
                            0.5 * scan.angular_step();
  for (const auto & cell : c.cells) {
    if (cell.col < margin || cell.col >= scan.cols() - margin) {
      return true;
    }
    if (scan.unwrapped_azimuth(cell.col) >= wrap_start) {
      return true;
    }
  }
  return false;
}

bool any_pair_closer(const Cluster & a, const Cluster & b, double threshold)
{
  const double t2 = threshold * threshold;
  for (const auto & p : a.points) {
    for (const auto & q : b.points) {
      if ((p - q).squaredNorm() < t2) {
        return true;
      }
    }
  }
  return false;
}

std::size_t find_root(std::vector<std::size_t> & parent, std::size_t i)
{
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

std::vector<Cluster> fuse_wraparound(
  std::vector<Cluster> clusters, const OrganizedScan & scan, const ClusterConfig & config)
{
  const int margin = 2 * config.search_radius;
  std::vector<std::size_t> seam;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (near_seam(clusters[i], scan, margin)) {
      seam.push_back(i);
    }
  }
  if (seam.size() < 2) {
    return clusters;
  }

  std::vector<std::size_t> parent(clusters.size());
  std::iota(parent.begin(), parent.end(), 0);
  bool fused = false;
  for (std::size_t a = 0; a < seam.size(); ++a) {
    for (std::size_t b = a + 1; b < seam.size(); ++b) {
      if (any_pair_closer(clusters[seam[a]], clusters[seam[b]], config.distance_threshold)) {
        const auto ra = find_root(parent, seam[a]);
        const auto rb = find_root(parent, seam[b]);
        if (ra != rb) {
          parent[std::max(ra, rb)] = std::min(ra, rb);
          fused = true;
        }
      }
    }
  }
  if (!fused) {
    return clusters;
  }

  // fused groups take the position of their lowest member
  std::vector<Cluster> out;
  std::vector<std::size_t> slot(clusters.size(), std::numeric_limits<std::size_t>::max());
  std::vector<std::vector<GridCell>> cells;
  std::vector<std::vector<Vec3>> points;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto root = find_root(parent, i);
    if (slot[root] == std::numeric_limits<std::size_t>::max()) {
      slot[root] = cells.size();
      cells.emplace_back();
      points.emplace_back();
    }
    auto & dst_cells = cells[slot[root]];
    auto & dst_points = points[slot[root]];
    dst_cells.insert(dst_cells.end(), clusters[i].cells.begin(), clusters[i].cells.end());
    dst_points.insert(dst_points.end(), clusters[i].points.begin(), clusters[i].points.end());
  }
  out.reserve(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    out.push_back(Cluster::from_cells(std::move(cells[k]), std::move(points[k]), scan.rows()));
  }
  return out;
}

std::vector<Detection> filter_clusters(
  const std::vector<Cluster> & clusters, const ObjectModel & model,
  std::span<const TrackBox> active_tracks)
{
  std::vector<Detection> detections;
  for (const auto & cluster : clusters) {
    std::optional<int> nearest;
    double nearest_distance = std::numeric_limits<double>::infinity();
    for (const auto & track : active_tracks) {
      const double d = (track.box.center() - cluster.centroid).norm();
      if (d <= model.vicinity_radius && d < nearest_distance) {
        nearest_distance = d;
        nearest = track.id;
      }
    }

    const double height = cluster.bbox.height();
    const double diagonal = cluster.bbox.diagonal_xy();
    bool keep = false;
    if (nearest) {
      keep = height <= model.max_height && diagonal <= model.relaxed_max_diagonal;
    } else {
      const bool spans_fov = cluster.touches_top && cluster.touches_bottom;
      keep = (spans_fov || height >= model.min_height) && height <= model.max_height &&
             diagonal <= model.max_diagonal;
    }
    if (keep) {
      detections.push_back({cluster, nearest.has_value(), nearest});
    }
  }
  return detections;
}

}  // namespace sparse_mot
