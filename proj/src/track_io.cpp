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

#include "sparse_mot/track_io.hpp"

#include "sparse_mot/detection.hpp"
#include "sparse_mot/error.hpp"
#include "sparse_mot/text_format.hpp"
#include "sparse_mot/tracking.hpp"

namespace sparse_mot
{

std::vector<TrackRecord> track_records(const std::vector<Hypothesis> & hypotheses, int scan_index)
{
  std::vector<TrackRecord> out;
  out.reserve(hypotheses.size());
  for (const auto & h : hypotheses) {
    const bool predicted = h.history.empty() || h.history.back().was_predicted;
    out.push_back({scan_index, h.id, h.dynamic, h.position(), h.velocity(), h.current_bbox, predicted});
  }
  return out;
}

std::string format_track_record(const TrackRecord & r)
{
  std::string line = std::to_string(r.scan_index) + " " + std::to_string(r.id) + " " +
                     (r.dynamic ? "1" : "0");
  for (const double v :
       {r.position.x(), r.position.y(), r.position.z(), r.velocity.x(), r.velocity.y(),
        r.velocity.z(), r.box.min.x(), r.box.min.y(), r.box.min.z(), r.box.max.x(), r.box.max.y(),
        r.box.max.z()}) {
    line += " " + format_fixed(v);
  }
  line += r.was_predicted ? " 1" : " 0";
  return line;
}

std::vector<TrackRecord> read_tracks(const std::filesystem::path & path)
{
  std::vector<TrackRecord> out;
  for_each_record(path, [&](std::size_t line_no, const std::vector<std::string> & f) {
    if (f.size() != 16) {
      throw Error(
        ErrorCode::kMalformedRecord,
        path.string() + ":" + std::to_string(line_no) + ": track lines have 16 fields");
    }
    TrackRecord r;
    r.scan_index = parse_int(f[0]);
    r.id = parse_int(f[1]);
    r.dynamic = parse_int(f[2]) != 0;
    double v[12];
    for (std::size_t i = 0; i < 12; ++i) {
      v[i] = parse_double(f[3 + i]);
    }
    r.position = Vec3(v[0], v[1], v[2]);
    r.velocity = Vec3(v[3], v[4], v[5]);
    r.box.min = Vec3(v[6], v[7], v[8]);
    r.box.max = Vec3(v[9], v[10], v[11]);
    r.was_predicted = parse_int(f[15]) != 0;
    out.push_back(r);
  });
  return out;
}

std::string format_detection(int scan_index, int det_index, const Detection & detection)
{
  const auto & c = detection.cluster;
  std::string line = std::to_string(scan_index) + " " + std::to_string(det_index) + " " +
                     (detection.relaxed ? "1" : "0");
  for (const double v :
       {c.centroid.x(), c.centroid.y(), c.centroid.z(), c.bbox.min.x(), c.bbox.min.y(),
        c.bbox.min.z(), c.bbox.max.x(), c.bbox.max.y(), c.bbox.max.z()}) {
    line += " " + format_fixed(v);
  }
  line += " " + std::to_string(c.points.size());
  return line;
}

}  // namespace sparse_mot
