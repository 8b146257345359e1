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

#include "sparse_mot/metrics.hpp"

#include "sparse_mot/error.hpp"
#include "sparse_mot/hungarian.hpp"
#include "sparse_mot/text_format.hpp"

#include <cmath>
#include <set>

namespace sparse_mot
{

std::vector<GtTrack> build_gt_tracks(
  const std::vector<OrganizedScan> & scans, const std::vector<PointLabel> & labels)
{
  struct Accumulator
  {
    Vec3 sum{Vec3::Zero()};
    int count{0};
  };
  std::map<int, std::map<int, Accumulator>> acc;
  for (const auto & label : labels) {
    if (label.object_id == 0) {
      continue;
    }
    if (label.scan_index < 0 || label.scan_index >= static_cast<int>(scans.size())) {
      throw Error(
        ErrorCode::kConsistency, "label references scan " + std::to_string(label.scan_index));
    }
    const auto & scan = scans[static_cast<std::size_t>(label.scan_index)];
    if (label.row >= scan.rows() || label.col >= scan.cols()) {
      throw Error(ErrorCode::kConsistency, "label cell outside the scan grid");
    }
    auto & a = acc[label.object_id][label.scan_index];
    a.sum += point_position(scan, label.row, label.col);
    ++a.count;
  }

  std::vector<GtTrack> tracks;
  for (const auto & [id, per_scan] : acc) {
    GtTrack track{id, {}};
    for (const auto & [scan_index, a] : per_scan) {
      track.centroids.emplace(scan_index, a.sum / static_cast<double>(a.count));
    }
    tracks.push_back(std::move(track));
  }
  return tracks;
}

HypothesisFrames frames_from_tracks(const std::vector<TrackRecord> & records, bool dynamic_only)
{
  std::set<int> dynamic_ids;
  for (const auto & r : records) {
    if (r.dynamic) {
      dynamic_ids.insert(r.id);
    }
  }
  HypothesisFrames frames;
  for (const auto & r : records) {
    if (dynamic_only && !dynamic_ids.contains(r.id)) {
      continue;
    }
    frames[r.scan_index].push_back({r.id, r.position});
  }
  return frames;
}

namespace
{

struct MatchingOutcome
{
  MotReport report;
  std::map<int, int> matched_scans;  // object id -> scans with a match
};

MatchingOutcome run_matching(
  const std::vector<GtTrack> & gt, const HypothesisFrames & hypotheses, double threshold)
{
  std::set<int> scan_indices;
  for (const auto & track : gt) {
    for (const auto & [s, c] : track.centroids) {
      scan_indices.insert(s);
    }
  }
  for (const auto & [s, obs] : hypotheses) {
    scan_indices.insert(s);
  }

  MatchingOutcome out;
  auto & rep = out.report;
  rep.gt_tracks = static_cast<int>(gt.size());
  std::map<int, int> previous;      // object id -> hypothesis id matched in the previous scan
  std::map<int, int> last_matched;  // object id -> most recent hypothesis id ever matched

  for (const int t : scan_indices) {
    std::vector<std::pair<int, Vec3>> labels;
    for (const auto & track : gt) {
      const auto it = track.centroids.find(t);
      if (it != track.centroids.end()) {
        labels.emplace_back(track.object_id, it->second);
      }
    }
    static const std::vector<HypothesisObservation> kNone;
    const auto hit = hypotheses.find(t);
    const auto & hyps = hit == hypotheses.end() ? kNone : hit->second;

    std::vector<char> label_used(labels.size(), 0);
    std::vector<char> hyp_used(hyps.size(), 0);
    std::map<int, int> current;
    double distance_sum = 0.0;

    // persistent pairs are kept before anything else is matched
    for (std::size_t l = 0; l < labels.size(); ++l) {
      const auto prev = previous.find(labels[l].first);
      if (prev == previous.end()) {
        continue;
      }
      for (std::size_t h = 0; h < hyps.size(); ++h) {
        if (hyp_used[h] || hyps[h].id != prev->second) {
          continue;
        }
        const double d = (hyps[h].position - labels[l].second).norm();
        if (d <= threshold) {
          label_used[l] = 1;
          hyp_used[h] = 1;
          current[labels[l].first] = hyps[h].id;
          distance_sum += d;
        }
        break;
      }
    }

    std::vector<std::size_t> free_labels;
    std::vector<std::size_t> free_hyps;
    for (std::size_t l = 0; l < labels.size(); ++l) {
      if (!label_used[l]) {
        free_labels.push_back(l);
      }
    }
    for (std::size_t h = 0; h < hyps.size(); ++h) {
      if (!hyp_used[h]) {
        free_hyps.push_back(h);
      }
    }
    Eigen::MatrixXd cost(
      static_cast<Eigen::Index>(free_labels.size()), static_cast<Eigen::Index>(free_hyps.size()));
    for (std::size_t a = 0; a < free_labels.size(); ++a) {
      for (std::size_t b = 0; b < free_hyps.size(); ++b) {
        const double d = (hyps[free_hyps[b]].position - labels[free_labels[a]].second).norm();
        cost(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          d <= threshold ? d : kForbidden;
      }
    }
    const auto assignment = hungarian(cost);
    for (const auto & [a, b] : assignment.pairs()) {
      const int object_id = labels[free_labels[static_cast<std::size_t>(a)]].first;
      const int hyp_id = hyps[free_hyps[static_cast<std::size_t>(b)]].id;
      const auto last = last_matched.find(object_id);
      if (last != last_matched.end() && last->second != hyp_id) {
        ++rep.mismatches;
      }
      current[object_id] = hyp_id;
      distance_sum += cost(a, b);
    }

    for (const auto & [object_id, hyp_id] : current) {
      last_matched[object_id] = hyp_id;
      ++out.matched_scans[object_id];
    }
    const auto c = static_cast<long>(current.size());
    rep.matches += c;
    rep.distance_sum += distance_sum;
    rep.total_labels += static_cast<long>(labels.size());
    rep.misses += static_cast<long>(labels.size()) - c;
    rep.false_positives += static_cast<long>(hyps.size()) - c;
    previous = std::move(current);
  }
  return out;
}

CoverageRatios coverage_from(const std::vector<GtTrack> & gt, const std::map<int, int> & matched)
{
  if (gt.empty()) {
    throw Error(ErrorCode::kUndefinedMetric, "coverage needs at least one ground truth track");
  }
  int mt = 0;
  int pt = 0;
  int ml = 0;
  for (const auto & track : gt) {
    const auto it = matched.find(track.object_id);
    const long hits = it == matched.end() ? 0 : it->second;
    const auto present = static_cast<long>(track.centroids.size());
    // integer forms of hits/present >= 0.8 and < 0.2
    if (5 * hits >= 4 * present) {
      ++mt;
    } else if (5 * hits < present) {
      ++ml;
    } else {
      ++pt;
    }
  }
  const double n = static_cast<double>(gt.size());
  return {mt / n, pt / n, ml / n};
}

}  // namespace

MotReport clear_mot(
  const std::vector<GtTrack> & gt, const HypothesisFrames & hypotheses, double match_threshold)
{
  if (!(match_threshold > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "match threshold must be positive");
  }
  auto outcome = run_matching(gt, hypotheses, match_threshold);
  auto & rep = outcome.report;
  if (rep.total_labels == 0) {
    throw Error(ErrorCode::kUndefinedMetric, "MOTA is undefined without labels");
  }
  rep.motp = rep.matches > 0 ? rep.distance_sum / static_cast<double>(rep.matches) : 0.0;
  rep.mota = 1.0 - static_cast<double>(rep.misses + rep.false_positives + rep.mismatches) /
                     static_cast<double>(rep.total_labels);
  const auto ratios = coverage_from(gt, outcome.matched_scans);
  rep.mt = ratios.mt;
  rep.pt = ratios.pt;
  rep.ml = ratios.ml;
  return rep;
}

CoverageRatios coverage(
  const std::vector<GtTrack> & gt, const HypothesisFrames & hypotheses, double match_threshold)
{
  if (!(match_threshold > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "match threshold must be positive");
  }
  return coverage_from(gt, run_matching(gt, hypotheses, match_threshold).matched_scans);
}

double pearson(std::span<const double> xs, std::span<const double> ys)
{
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "pearson needs two equal-length sequences of >= 2");
  }
  const double n = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kNumericalDomain, "pearson is undefined for a constant sequence");
  }
  return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

std::string format_report(const MotReport & r)
{
  std::string out;
  out += "mota=" + format_fixed(r.mota) + "\n";
  out += "motp=" + format_fixed(r.motp) + "\n";
  out += "mt=" + format_fixed(r.mt) + "\n";
  out += "pt=" + format_fixed(r.pt) + "\n";
  out += "ml=" + format_fixed(r.ml) + "\n";
  out += "misses=" + std::to_string(r.misses) + "\n";
  out += "false_positives=" + std::to_string(r.false_positives) + "\n";
  out += "mismatches=" + std::to_string(r.mismatches) + "\n";
  out += "matches=" + std::to_string(r.matches) + "\n";
  out += "total_labels=" + std::to_string(r.total_labels) + "\n";
  out += "distance_sum=" + format_fixed(r.distance_sum) + "\n";
  out += "gt_tracks=" + std::to_string(r.gt_tracks) + "\n";
  return out;
}

std::string format_table_row(const MotReport & r, bool with_header)
{
  std::string out = with_header ? "MOTA MOTP MT PT ML\n" : "";
  out += format_fixed(r.mota, 3) + " " + format_fixed(r.motp, 3) + " " + format_fixed(r.mt, 2) +
         " " + format_fixed(r.pt, 2) + " " + format_fixed(r.ml, 2) + "\n";
  return out;
}

}  // namespace sparse_mot
