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

#include "sparse_mot/pipeline.hpp"

#include "sparse_mot/detection.hpp"
#include "sparse_mot/error.hpp"
#include "sparse_mot/segmentation.hpp"
#include "sparse_mot/text_format.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace sparse_mot
{

namespace
{
using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b)
{
  return std::chrono::duration<double, std::milli>(b - a).count();
}
}  // namespace

Pipeline::Pipeline(PipelineConfig config)
: config_(std::move(config)), tracker_(config_.tracker), filter_(config_.filter_margin, config_.filter_floor_extension)
{
  config_.validate();
}

const TimingRecord & Pipeline::process(int scan_index, const OrganizedScan & raw)
{
  const auto t0 = Clock::now();
  const OrganizedScan scan = sanitize_invalid(raw, config_.sentinel);
  const SegmentMask mask = segment_scan(scan, config_.segmentation);
  const auto t1 = Clock::now();

  auto clusters = fuse_wraparound(region_grow(scan, mask, config_.cluster), scan, config_.cluster);
  last_detections_ = filter_clusters(clusters, config_.object_model, active_boxes_);
  const auto t2 = Clock::now();

  const UpdateResult update = tracker_.step(last_detections_, scan_index, scan.timestamp());
  active_boxes_ = tracker_.active_boxes();
  const auto t3 = Clock::now();

  filter_.filter_current(
    scan_index, scan, last_detections_, tracker_.hypotheses(), update.detection_track);
  for (const auto & h : tracker_.hypotheses()) {
    if (h.dynamic) {
      filter_.retro_filter(h);
    }
  }
  const auto t4 = Clock::now();

  const auto records = track_records(tracker_.hypotheses(), scan_index);
  tracks_.insert(tracks_.end(), records.begin(), records.end());
  for (std::size_t i = 0; i < last_detections_.size(); ++i) {
    detection_lines_.push_back(
      format_detection(scan_index, static_cast<int>(i), last_detections_[i]));
  }
  const auto t5 = Clock::now();

  timing_.push_back(
    {scan_index, ms_between(t0, t1), ms_between(t1, t2), ms_between(t2, t3), ms_between(t3, t4),
     ms_between(t0, t5)});
  return timing_.back();
}

Pipeline run_pipeline(const std::vector<OrganizedScan> & scans, const PipelineConfig & config)
{
  if (scans.empty()) {
    throw Error(ErrorCode::kTruncated, "scan sequence contains no scans");
  }
  Pipeline pipeline(config);
  for (std::size_t i = 0; i < scans.size(); ++i) {
    pipeline.process(static_cast<int>(i), scans[i]);
  }
  return pipeline;
}

ScanSequence load_scans(
  const std::filesystem::path & scans, const std::optional<std::filesystem::path> & poses)
{
  ScanSequence seq = read_scans(scans);
  if (poses) {
    attach_poses(seq.scans, read_poses(*poses));
  }
  return seq;
}

Dataset load_dataset(const std::filesystem::path & dir)
{
  Dataset d;
  d.sequence = load_scans(dir / "scans.oscn", dir / "poses.txt");
  d.labels = read_labels(dir / "labels.txt");
  return d;
}

std::string format_timing_csv(const std::vector<TimingRecord> & timing)
{
  std::string out = "scan,seg_ms,det_ms,trk_ms,flt_ms,total_ms\n";
  for (const auto & t : timing) {
    out += std::to_string(t.scan_index) + "," + format_fixed(t.seg_ms, 4) + "," +
           format_fixed(t.det_ms, 4) + "," + format_fixed(t.trk_ms, 4) + "," +
           format_fixed(t.flt_ms, 4) + "," + format_fixed(t.total_ms, 4) + "\n";
  }
  return out;
}

void write_run_outputs(const std::filesystem::path & dir, const Pipeline & pipeline)
{
  std::filesystem::create_directories(dir);
  std::string tracks = "# scan id dynamic x y z vx vy vz min_x min_y min_z max_x max_y max_z predicted\n";
  for (const auto & r : pipeline.tracks()) {
    tracks += format_track_record(r) + "\n";
  }
  write_text_file(dir / "tracks.txt", tracks);
  std::string detections = "# scan index relaxed cx cy cz min_x min_y min_z max_x max_y max_z points\n";
  for (const auto & line : pipeline.detection_lines()) {
    detections += line + "\n";
  }
  write_text_file(dir / "detections.txt", detections);
  write_text_file(dir / "timing.csv", format_timing_csv(pipeline.timing()));
  write_static_log(dir / "static", pipeline.filter().log());
}

MotReport evaluate(
  const std::vector<OrganizedScan> & scans, const std::vector<PointLabel> & labels,
  const std::vector<TrackRecord> & tracks, const PipelineConfig & config)
{
  const auto gt = build_gt_tracks(scans, labels);
  return clear_mot(gt, frames_from_tracks(tracks, config.dynamic_only), config.match_threshold);
}

namespace
{
LatencyStats stats(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  LatencyStats s;
  s.median = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95 = v[std::max<std::size_t>(rank, 1) - 1];
  return s;
}
}  // namespace

TimingSummary summarize_timing(const std::vector<TimingRecord> & timing)
{
  if (timing.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no timing records to summarize");
  }
  const std::size_t skip = timing.size() > kWarmupScans ? kWarmupScans : 0;
  std::vector<double> seg, det, trk, flt, total;
  for (std::size_t i = skip; i < timing.size(); ++i) {
    seg.push_back(timing[i].seg_ms);
    det.push_back(timing[i].det_ms);
    trk.push_back(timing[i].trk_ms);
    flt.push_back(timing[i].flt_ms);
    total.push_back(timing[i].total_ms);
  }
  return {timing.size() - skip, stats(seg), stats(det), stats(trk), stats(flt), stats(total)};
}

std::string format_timing_summary(const TimingSummary & s)
{
  std::string out = "scans " + std::to_string(s.scans) + "\nstage median_ms p95_ms\n";
  const std::pair<const char *, LatencyStats> rows[] = {
    {"segmentation", s.seg}, {"detection", s.det}, {"tracking", s.trk},
    {"filter", s.flt}, {"total", s.total}};
  for (const auto & [name, st] : rows) {
    out += std::string(name) + " " + format_fixed(st.median, 3) + " " + format_fixed(st.p95, 3) + "\n";
  }
  return out;
}

}  // namespace sparse_mot
