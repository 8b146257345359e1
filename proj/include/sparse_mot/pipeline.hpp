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

#ifndef SPARSE_MOT__PIPELINE_HPP_
#define SPARSE_MOT__PIPELINE_HPP_

#include "sparse_mot/dynamic_filter.hpp"
#include "sparse_mot/metrics.hpp"
#include "sparse_mot/pipeline_config.hpp"
#include "sparse_mot/scan_io.hpp"
#include "sparse_mot/track_io.hpp"
#include "sparse_mot/tracking.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sparse_mot
{

/// Wall-clock milliseconds spent per stage on one scan.
struct TimingRecord
{
  int scan_index{0};
  double seg_ms{0.0};
  double det_ms{0.0};
  double trk_ms{0.0};
  double flt_ms{0.0};
  double total_ms{0.0};
};

/// Segmentation, detection, tracking and dynamic filtering, one scan at a
/// time. Active boxes after scan t feed the detector at scan t+1.
class Pipeline
{
public:
  explicit Pipeline(PipelineConfig config);

  /// Scan indices must increase. `scan` must carry its world pose.
  const TimingRecord & process(int scan_index, const OrganizedScan & scan);

  const PipelineConfig & config() const { return config_; }
  const Tracker & tracker() const { return tracker_; }
  const DynamicObjectFilter & filter() const { return filter_; }
  const std::vector<Detection> & last_detections() const { return last_detections_; }
  const std::vector<TrackRecord> & tracks() const { return tracks_; }
  const std::vector<std::string> & detection_lines() const { return detection_lines_; }
  const std::vector<TimingRecord> & timing() const { return timing_; }

private:
  PipelineConfig config_;
  Tracker tracker_;
  DynamicObjectFilter filter_;
  std::vector<TrackBox> active_boxes_;
  std::vector<Detection> last_detections_;
  std::vector<TrackRecord> tracks_;
  std::vector<std::string> detection_lines_;
  std::vector<TimingRecord> timing_;
};

/// Runs every scan in order; scan indices are positions in `scans`.
/// Throws ErrorCode::kTruncated for an empty sequence.
Pipeline run_pipeline(const std::vector<OrganizedScan> & scans, const PipelineConfig & config);

/// Scans with poses from an optional pose file.
ScanSequence load_scans(
  const std::filesystem::path & scans, const std::optional<std::filesystem::path> & poses);

/// A directory holding scans.oscn, poses.txt and labels.txt.
struct Dataset
{
  ScanSequence sequence;
  std::vector<PointLabel> labels;
};
Dataset load_dataset(const std::filesystem::path & dir);

/// Writes tracks.txt, detections.txt, timing.csv and static/ into `dir`.
void write_run_outputs(const std::filesystem::path & dir, const Pipeline & pipeline);

std::string format_timing_csv(const std::vector<TimingRecord> & timing);

MotReport evaluate(
  const std::vector<OrganizedScan> & scans, const std::vector<PointLabel> & labels,
  const std::vector<TrackRecord> & tracks, const PipelineConfig & config);

struct LatencyStats
{
  double median{0.0};
  double p95{0.0};
};

struct TimingSummary
{
  std::size_t scans{0};  // scans included after warm-up
  LatencyStats seg;
  LatencyStats det;
  LatencyStats trk;
  LatencyStats flt;
  LatencyStats total;
};

inline constexpr std::size_t kWarmupScans = 10;

/// Median and nearest-rank p95 per stage. The first kWarmupScans records are
/// skipped unless that would leave nothing.
TimingSummary summarize_timing(const std::vector<TimingRecord> & timing);
std::string format_timing_summary(const TimingSummary & summary);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__PIPELINE_HPP_
