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

#ifndef SPARSE_MOT__DYNAMIC_FILTER_HPP_
#define SPARSE_MOT__DYNAMIC_FILTER_HPP_

#include "sparse_mot/detection.hpp"
#include "sparse_mot/tracking.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace sparse_mot
{

/// Retained world points of one scan; `cells` is parallel to `points`.
struct LogEntry
{
  int scan_index{0};
  std::vector<GridCell> cells;
  std::vector<Vec3> points;
};

struct RetroApplication
{
  int hypothesis_id{0};
  int first_scan{0};
  int last_scan{0};
  std::size_t removed{0};
};

/// Static-world cloud log: filtered scans in scan order plus the record of
/// box histories already applied per hypothesis.
class CloudLog
{
public:
  const std::vector<LogEntry> & entries() const { return entries_; }
  const std::vector<RetroApplication> & applications() const { return applications_; }
  const std::map<int, std::set<int>> & applied() const { return applied_; }

  const LogEntry * find(int scan_index) const;

private:
  friend class DynamicObjectFilter;
  LogEntry * find_mutable(int scan_index);

  std::vector<LogEntry> entries_;
  std::map<int, std::set<int>> applied_;
  std::vector<RetroApplication> applications_;
};

class DynamicObjectFilter
{
public:
  /// `floor_extension` lowers the bottom face of every removal box further,
  /// reaching ground-level returns that segmentation cannot separate.
  explicit DynamicObjectFilter(double box_margin = 0.1, double floor_extension = 0.5);

  /// Logs the valid points of `scan` minus the points of detections owned by
  /// dynamic hypotheses. `detection_track` maps detections to track ids.
  const LogEntry & filter_current(
    int scan_index, const OrganizedScan & scan, const std::vector<Detection> & detections,
    const std::vector<Hypothesis> & hypotheses,
    const std::vector<std::optional<int>> & detection_track);

  /// Removes logged points inside the (inflated) boxes of the hypothesis
  /// history that have not been applied yet, up to its latest assigned scan.
  /// Trailing predicted boxes wait until the track recovers. Returns the
  /// number of points removed; throws ErrorCode::kConsistency for a history
  /// entry whose scan is not in the log.
  std::size_t retro_filter(const Hypothesis & hypothesis);

  const CloudLog & log() const { return log_; }
  double box_margin() const { return box_margin_; }
  double floor_extension() const { return floor_extension_; }
  Box3 removal_region(const Box3 & box) const;

private:
  double box_margin_;
  double floor_extension_;
  CloudLog log_;
};

/// Writes static_<scan_index>.xyz files and manifest.txt into `dir`.
void write_static_log(const std::filesystem::path & dir, const CloudLog & log);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__DYNAMIC_FILTER_HPP_
