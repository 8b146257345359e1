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

#include "sparse_mot/dynamic_filter.hpp"

#include "sparse_mot/error.hpp"
#include "sparse_mot/text_format.hpp"

#include <algorithm>
#include <string>

namespace sparse_mot
{

const LogEntry * CloudLog::find(int scan_index) const
{
  const auto it = std::lower_bound(
    entries_.begin(), entries_.end(), scan_index,
    [](const LogEntry & e, int s) { return e.scan_index < s; });
  return (it != entries_.end() && it->scan_index == scan_index) ? &*it : nullptr;
}

LogEntry * CloudLog::find_mutable(int scan_index)
{
  return const_cast<LogEntry *>(std::as_const(*this).find(scan_index));
}

DynamicObjectFilter::DynamicObjectFilter(double box_margin, double floor_extension)
: box_margin_(box_margin), floor_extension_(floor_extension)
{
  if (!(box_margin_ >= 0.0)) {
    throw Error(ErrorCode::kConfig, "filter box margin must be non-negative");
  }
  if (!(floor_extension_ >= 0.0)) {
    throw Error(ErrorCode::kConfig, "filter floor extension must be non-negative");
  }
}

Box3 DynamicObjectFilter::removal_region(const Box3 & box) const
{
  Box3 region = box.inflated(box_margin_);
  region.min.z() -= floor_extension_;
  return region;
}

const LogEntry & DynamicObjectFilter::filter_current(
  int scan_index, const OrganizedScan & scan, const std::vector<Detection> & detections,
  const std::vector<Hypothesis> & hypotheses,
  const std::vector<std::optional<int>> & detection_track)
{
  if (!log_.entries_.empty() && scan_index <= log_.entries_.back().scan_index) {
    throw Error(ErrorCode::kConsistency, "scan indices must increase");
  }

  std::vector<std::uint8_t> drop(scan.size(), 0);
  for (std::size_t d = 0; d < detections.size() && d < detection_track.size(); ++d) {
    if (!detection_track[d]) {
      continue;
    }
    const auto owner = std::find_if(hypotheses.begin(), hypotheses.end(), [&](const Hypothesis & h) {
      return h.id == *detection_track[d];
    });
    if (owner == hypotheses.end() || !owner->dynamic) {
      continue;
    }
    for (const auto & cell : detections[d].cluster.cells) {
      drop[scan.index(cell.row, cell.col)] = 1;
    }
  }

  LogEntry entry;
  entry.scan_index = scan_index;
  for (int row = 0; row < scan.rows(); ++row) {
    for (int col = 0; col < scan.cols(); ++col) {
      const auto idx = scan.index(row, col);
      if (scan.valid(row, col) && !drop[idx]) {
        entry.cells.push_back({row, col});
        entry.points.push_back(point_position(scan, row, col));
      }
    }
  }
  log_.entries_.push_back(std::move(entry));
  return log_.entries_.back();
}

std::size_t DynamicObjectFilter::retro_filter(const Hypothesis & hypothesis)
{
  const auto & history = hypothesis.history;
  const auto last_assigned = std::find_if(
    history.rbegin(), history.rend(), [](const BoxRecord & r) { return !r.was_predicted; });
  if (last_assigned == history.rend()) {
    return 0;
  }

  auto & applied = log_.applied_[hypothesis.id];
  // applied entries always form a prefix of the history
  std::vector<const BoxRecord *> pending;
  for (auto it = last_assigned; it != history.rend(); ++it) {
    if (applied.contains(it->scan_index)) {
      break;
    }
    pending.push_back(&*it);
  }
  if (pending.empty()) {
    return 0;
  }

  std::size_t removed = 0;
  for (const auto * record : pending) {
    auto * entry = log_.find_mutable(record->scan_index);
    if (entry == nullptr) {
      throw Error(
        ErrorCode::kConsistency, "hypothesis " + std::to_string(hypothesis.id) +
                                   " references unlogged scan " +
                                   std::to_string(record->scan_index));
    }
    const Box3 region = removal_region(record->box);
    std::size_t keep = 0;
    for (std::size_t i = 0; i < entry->points.size(); ++i) {
      if (!region.contains(entry->points[i])) {
        entry->points[keep] = entry->points[i];
        entry->cells[keep] = entry->cells[i];
        ++keep;
      }
    }
    removed += entry->points.size() - keep;
    entry->points.resize(keep);
    entry->cells.resize(keep);
    applied.insert(record->scan_index);
  }
  log_.applications_.push_back(
    {hypothesis.id, pending.back()->scan_index, pending.front()->scan_index, removed});
  return removed;
}

void write_static_log(const std::filesystem::path & dir, const CloudLog & log)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  }
  for (const auto & entry : log.entries()) {
    std::string text;
    text.reserve(entry.points.size() * 36);
    for (const auto & p : entry.points) {
      text += format_fixed(p.x()) + " " + format_fixed(p.y()) + " " + format_fixed(p.z()) + "\n";
    }
    write_text_file(dir / ("static_" + std::to_string(entry.scan_index) + ".xyz"), text);
  }
  std::string manifest = "# hypothesis_id first_scan last_scan removed_points\n";
  for (const auto & a : log.applications()) {
    manifest += std::to_string(a.hypothesis_id) + " " + std::to_string(a.first_scan) + " " +
                std::to_string(a.last_scan) + " " + std::to_string(a.removed) + "\n";
  }
  write_text_file(dir / "manifest.txt", manifest);
}

}  // namespace sparse_mot
