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

#ifndef SPARSE_MOT__TRACK_IO_HPP_
#define SPARSE_MOT__TRACK_IO_HPP_

#include "sparse_mot/geometry.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace sparse_mot
{

struct Detection;
struct Hypothesis;

/// One line of the track file:
/// "scan_index id dynamic x y z vx vy vz minx miny minz maxx maxy maxz was_predicted"
struct TrackRecord
{
  int scan_index{0};
  int id{0};
  bool dynamic{false};
  Vec3 position{Vec3::Zero()};
  Vec3 velocity{Vec3::Zero()};
  Box3 box;
  bool was_predicted{false};
};

/// Snapshot of every live hypothesis after the update of `scan_index`.
std::vector<TrackRecord> track_records(const std::vector<Hypothesis> & hypotheses, int scan_index);

std::string format_track_record(const TrackRecord & record);
std::vector<TrackRecord> read_tracks(const std::filesystem::path & path);

/// "scan_index det_index relaxed cx cy cz minx miny minz maxx maxy maxz n_points"
std::string format_detection(int scan_index, int det_index, const Detection & detection);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__TRACK_IO_HPP_
