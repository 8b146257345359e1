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

#ifndef SPARSE_MOT__SWEEP_HPP_
#define SPARSE_MOT__SWEEP_HPP_

#include "sparse_mot/pipeline.hpp"
#include "sparse_mot/pipeline_config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sparse_mot
{

struct ParameterRange
{
  std::string name;  // "section.key"
  double lo{0.0};
  double hi{0.0};
};

/// Lines "section.key = lo hi" or "section.key = value". Throws
/// ErrorCode::kConfig for unknown parameters, lo > hi or an empty space.
std::vector<ParameterRange> parse_search_space(const std::string & text, const std::string & source = "<space>");
std::vector<ParameterRange> read_search_space(const std::filesystem::path & path);

struct Trial
{
  int index{0};
  std::vector<double> values;  // parallel to the space
  bool valid{true};            // false when the sampled config fails validation
  double cost{0.0};            // 1 - train MOTA; +inf when invalid
  double train_mota{0.0};
  std::optional<double> test_mota;
};

struct SweepResult
{
  std::vector<ParameterRange> space;
  std::vector<Trial> trials;
  std::size_t best{0};
  PipelineConfig best_config;
  std::optional<double> correlation;  // Pearson of (train, test) MOTA over valid trials
};

struct SweepOptions
{
  int trials{20};
  std::uint64_t seed{1};
  bool include_base{true};  // trial 0 evaluates the base config as given
};

/// Mean MOTA over the datasets.
double mean_mota(const std::vector<Dataset> & datasets, const PipelineConfig & config);

/// Seeded uniform random search minimising 1 - MOTA on `train`.
SweepResult run_sweep(
  const PipelineConfig & base, const std::vector<ParameterRange> & space,
  const std::vector<Dataset> & train, const std::vector<Dataset> & test, const SweepOptions & options);

/// "trial,cost,train_mota,test_mota,<parameters...>".
std::string format_trials_csv(const SweepResult & result);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__SWEEP_HPP_
