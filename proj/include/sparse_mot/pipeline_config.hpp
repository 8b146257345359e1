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

#ifndef SPARSE_MOT__PIPELINE_CONFIG_HPP_
#define SPARSE_MOT__PIPELINE_CONFIG_HPP_

#include "sparse_mot/detection.hpp"
#include "sparse_mot/segmentation.hpp"
#include "sparse_mot/tracking.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace sparse_mot
{

/// Every tunable of the pipeline in one place.
struct PipelineConfig
{
  double sentinel{200.0};  // [m] range substituted for invalid cells
  SegmentationConfig segmentation;
  ClusterConfig cluster;
  ObjectModel object_model;
  TrackerConfig tracker;
  double filter_margin{0.1};     // [m] box inflation for retroactive removal
  double filter_floor_extension{0.5};  // [m] extra reach below the removal box
  double match_threshold{0.5};   // [m] evaluation gate
  bool dynamic_only{true};       // evaluate dynamic-classified hypotheses only

  /// Throws ErrorCode::kConfig.
  void validate() const;
};

/// Sections: [scan] [segmentation] [cluster] [object_model] [tracker]
/// [filter] [metrics]. Missing keys keep their defaults; unknown sections or
/// keys are rejected with ErrorCode::kConfig.
PipelineConfig parse_pipeline_config(const std::string & text, const std::string & source = "<config>");
PipelineConfig read_pipeline_config(const std::filesystem::path & path);
std::string format_pipeline_config(const PipelineConfig & config);

/// Qualified parameter names, e.g. "tracker.assign_gate".
std::vector<std::string> parameter_names();
bool parameter_is_integer(const std::string & name);
double get_parameter(const PipelineConfig & config, const std::string & name);
/// Integer and boolean parameters are rounded. Does not validate.
void set_parameter(PipelineConfig & config, const std::string & name, double value);
/// Applies "section.key=value".
void apply_override(PipelineConfig & config, const std::string & assignment);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__PIPELINE_CONFIG_HPP_
