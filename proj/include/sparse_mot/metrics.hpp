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

#ifndef SPARSE_MOT__METRICS_HPP_
#define SPARSE_MOT__METRICS_HPP_

#include "sparse_mot/geometry.hpp"
#include "sparse_mot/scan_model.hpp"
#include "sparse_mot/track_io.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace sparse_mot
{

/// Ground truth trajectory: centroid of the labelled points per scan.
struct GtTrack
{
  int object_id{0};
  std::map<int, Vec3> centroids;  // scan index -> world centroid; keys are the presence set
};

struct HypothesisObservation
{
  int id{0};
  Vec3 position{Vec3::Zero()};
};

/// Hypothesis positions per scan index.
using HypothesisFrames = std::map<int, std::vector<HypothesisObservation>>;

struct MotReport
{
  double motp{0.0};
  double mota{0.0};
  long misses{0};
  long false_positives{0};
  long mismatches{0};
  long total_labels{0};
  long matches{0};
  double distance_sum{0.0};
  double mt{0.0};
  double pt{0.0};
  double ml{0.0};
  int gt_tracks{0};
};

struct CoverageRatios
{
  double mt{0.0};
  double pt{0.0};
  double ml{0.0};
};

/// Ground truth tracks from point labels. `scans` is indexed by scan_index and
/// must carry world poses. Background labels (object_id 0) are ignored.
std::vector<GtTrack> build_gt_tracks(
  const std::vector<OrganizedScan> & scans, const std::vector<PointLabel> & labels);

/// Positions from a track file. With `dynamic_only` only ids that were
/// classified dynamic in at least one record are kept.
HypothesisFrames frames_from_tracks(const std::vector<TrackRecord> & records, bool dynamic_only);

/// CLEAR MOT with persistent matches, plus MT/PT/ML coverage under the same
/// matching. Throws ErrorCode::kUndefinedMetric when there are no labels.
MotReport clear_mot(
  const std::vector<GtTrack> & gt, const HypothesisFrames & hypotheses, double match_threshold);

/// Throws ErrorCode::kUndefinedMetric without ground truth tracks.
CoverageRatios coverage(
  const std::vector<GtTrack> & gt, const HypothesisFrames & hypotheses, double match_threshold);

/// Throws ErrorCode::kInvalidArgument for mismatched or short inputs and
/// ErrorCode::kNumericalDomain for a constant sequence.
double pearson(std::span<const double> xs, std::span<const double> ys);

inline double cost(double mota) { return 1.0 - mota; }

/// key=value lines.
std::string format_report(const MotReport & report);

/// "MOTA MOTP MT PT ML" header plus one row.
std::string format_table_row(const MotReport & report, bool with_header = true);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__METRICS_HPP_
