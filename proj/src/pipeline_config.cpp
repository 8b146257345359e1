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

#include "sparse_mot/pipeline_config.hpp"

#include "sparse_mot/error.hpp"
#include "sparse_mot/key_value.hpp"
#include "sparse_mot/text_format.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

namespace sparse_mot
{

namespace
{

struct Field
{
  const char * section;
  const char * key;
  std::variant<double *, int *, bool *> target;
};

std::vector<Field> fields(PipelineConfig & c)
{
  return {
    {"scan", "sentinel", &c.sentinel},
    {"segmentation", "min_width", &c.segmentation.min_width},
    {"segmentation", "max_width", &c.segmentation.max_width},
    {"segmentation", "delta_seg", &c.segmentation.delta_seg},
    {"segmentation", "min_kernel", &c.segmentation.min_kernel},
    {"segmentation", "max_kernel", &c.segmentation.max_kernel},
    {"cluster", "search_radius", &c.cluster.search_radius},
    {"cluster", "distance_threshold", &c.cluster.distance_threshold},
    {"cluster", "min_cluster_size", &c.cluster.min_cluster_size},
    {"object_model", "min_height", &c.object_model.min_height},
    {"object_model", "max_height", &c.object_model.max_height},
    {"object_model", "max_diagonal", &c.object_model.max_diagonal},
    {"object_model", "relaxed_max_diagonal", &c.object_model.relaxed_max_diagonal},
    {"object_model", "vicinity_radius", &c.object_model.vicinity_radius},
    {"tracker", "process_noise_accel", &c.tracker.process_noise_accel},
    {"tracker", "measurement_noise", &c.tracker.measurement_noise},
    {"tracker", "assign_gate", &c.tracker.assign_gate},
    {"tracker", "cov_eigen_max", &c.tracker.cov_eigen_max},
    {"tracker", "prune_radius", &c.tracker.prune_radius},
    {"tracker", "v_zero", &c.tracker.v_zero},
    {"tracker", "v_max", &c.tracker.v_max},
    {"tracker", "default_dt", &c.tracker.default_dt},
    {"tracker", "initial_velocity_std", &c.tracker.initial_velocity_std},
    {"filter", "margin", &c.filter_margin},
    {"filter", "floor_extension", &c.filter_floor_extension},
    {"metrics", "match_threshold", &c.match_threshold},
    {"metrics", "dynamic_only", &c.dynamic_only},
  };
}

std::string qualified(const Field & f) { return std::string(f.section) + "." + f.key; }

Field & find_field(std::vector<Field> & all, const std::string & name)
{
  const auto it = std::find_if(all.begin(), all.end(), [&](const Field & f) { return qualified(f) == name; });
  if (it == all.end()) {
    throw Error(ErrorCode::kConfig, "unknown parameter '" + name + "'");
  }
  return *it;
}

void assign(Field & f, double value)
{
  std::visit(
    [&](auto * p) {
      using T = std::remove_pointer_t<decltype(p)>;
      if constexpr (std::is_same_v<T, double>) {
        *p = value;
      } else if constexpr (std::is_same_v<T, int>) {
        *p = static_cast<int>(std::lround(value));
      } else {
        *p = value != 0.0;
      }
    },
    f.target);
}

double read(const Field & f)
{
  return std::visit([](auto * p) { return static_cast<double>(*p); }, f.target);
}

std::string render(const Field & f)
{
  return std::visit(
    [](auto * p) -> std::string {
      using T = std::remove_pointer_t<decltype(p)>;
      if constexpr (std::is_same_v<T, double>) {
        return format_double(*p);
      } else if constexpr (std::is_same_v<T, int>) {
        return std::to_string(*p);
      } else {
        return *p ? "1" : "0";
      }
    },
    f.target);
}

}  // namespace

void PipelineConfig::validate() const
{
  if (!(sentinel > 0.0)) {
    throw Error(ErrorCode::kConfig, "scan.sentinel must be positive");
  }
  segmentation.validate();
  cluster.validate();
  object_model.validate();
  tracker.validate();
  if (!(filter_margin >= 0.0)) {
    throw Error(ErrorCode::kConfig, "filter.margin must be non-negative");
  }
  if (!(filter_floor_extension >= 0.0)) {
    throw Error(ErrorCode::kConfig, "filter.floor_extension must be non-negative");
  }
  if (!(match_threshold > 0.0)) {
    throw Error(ErrorCode::kConfig, "metrics.match_threshold must be positive");
  }
}

PipelineConfig parse_pipeline_config(const std::string & text, const std::string & source)
{
  PipelineConfig config;
  auto all = fields(config);
  for (const auto & section : parse_key_value(text, source)) {
    const bool known = std::any_of(
      all.begin(), all.end(), [&](const Field & f) { return section.name == f.section; });
    if (!known) {
      throw Error(
        ErrorCode::kConfig,
        source + ":" + std::to_string(section.line) + ": unknown section [" + section.name + "]");
    }
    for (const auto & e : section.entries) {
      const auto it = std::find_if(all.begin(), all.end(), [&](const Field & f) {
        return section.name == f.section && e.key == f.key;
      });
      const auto where = source + ":" + std::to_string(e.line) + ": ";
      if (it == all.end()) {
        throw Error(ErrorCode::kConfig, where + "unknown key '" + e.key + "' in [" + section.name + "]");
      }
      double value = 0.0;
      try {
        value = parse_double(e.value);
      } catch (const Error &) {
        throw Error(ErrorCode::kConfig, where + "'" + e.key + "' expects a number, got '" + e.value + "'");
      }
      if (!std::holds_alternative<double *>(it->target) && value != std::round(value)) {
        throw Error(ErrorCode::kConfig, where + "'" + e.key + "' expects an integer");
      }
      assign(*it, value);
    }
  }
  try {
    config.validate();
  } catch (const Error & e) {
    throw Error(ErrorCode::kConfig, source + ": " + e.what());
  }
  return config;
}

PipelineConfig read_pipeline_config(const std::filesystem::path & path)
{
  return parse_pipeline_config(read_text_file(path), path.string());
}

std::string format_pipeline_config(const PipelineConfig & config)
{
  PipelineConfig copy = config;
  std::string out;
  std::string section;
  for (const auto & f : fields(copy)) {
    if (section != f.section) {
      section = f.section;
      out += (out.empty() ? "[" : "\n[") + section + "]\n";
    }
    out += std::string(f.key) + " = " + render(f) + "\n";
  }
  return out;
}

std::vector<std::string> parameter_names()
{
  PipelineConfig c;
  std::vector<std::string> out;
  for (const auto & f : fields(c)) {
    out.push_back(qualified(f));
  }
  return out;
}

bool parameter_is_integer(const std::string & name)
{
  PipelineConfig c;
  auto all = fields(c);
  return !std::holds_alternative<double *>(find_field(all, name).target);
}

double get_parameter(const PipelineConfig & config, const std::string & name)
{
  PipelineConfig copy = config;
  auto all = fields(copy);
  return read(find_field(all, name));
}

void set_parameter(PipelineConfig & config, const std::string & name, double value)
{
  auto all = fields(config);
  assign(find_field(all, name), value);
}

void apply_override(PipelineConfig & config, const std::string & assignment)
{
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw Error(ErrorCode::kConfig, "override '" + assignment + "' is not section.key=value");
  }
  const auto name = trim(assignment.substr(0, eq));
  double value = 0.0;
  try {
    value = parse_double(trim(assignment.substr(eq + 1)));
  } catch (const Error &) {
    throw Error(ErrorCode::kConfig, "override '" + assignment + "' has a non-numeric value");
  }
  set_parameter(config, name, value);
}

}  // namespace sparse_mot
