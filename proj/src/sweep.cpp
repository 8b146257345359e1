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

#include "sparse_mot/sweep.hpp"

#include "sparse_mot/error.hpp"
#include "sparse_mot/key_value.hpp"
#include "sparse_mot/metrics.hpp"
#include "sparse_mot/text_format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace sparse_mot
{

std::vector<ParameterRange> parse_search_space(const std::string & text, const std::string & source)
{
  std::vector<ParameterRange> space;
  const auto known = parameter_names();
  for (const auto & section : parse_key_value(text, source)) {
    if (!section.name.empty()) {
      throw Error(
        ErrorCode::kConfig, source + ":" + std::to_string(section.line) +
                              ": search spaces take no sections, use section.key names");
    }
    for (const auto & e : section.entries) {
      const auto where = source + ":" + std::to_string(e.line) + ": ";
      if (std::find(known.begin(), known.end(), e.key) == known.end()) {
        throw Error(ErrorCode::kConfig, where + "unknown parameter '" + e.key + "'");
      }
      std::vector<double> v;
      try {
        for (const auto & f : split_fields(e.value)) {
          v.push_back(parse_double(f));
        }
      } catch (const Error &) {
        throw Error(ErrorCode::kConfig, where + "range values must be numbers");
      }
      if (v.size() == 1) {
        v.push_back(v[0]);
      }
      if (v.size() != 2 || !(v[0] <= v[1])) {
        throw Error(ErrorCode::kConfig, where + "expected 'lo hi' with lo <= hi");
      }
      space.push_back({e.key, v[0], v[1]});
    }
  }
  if (space.empty()) {
    throw Error(ErrorCode::kConfig, source + ": search space is empty");
  }
  return space;
}

std::vector<ParameterRange> read_search_space(const std::filesystem::path & path)
{
  return parse_search_space(read_text_file(path), path.string());
}

double mean_mota(const std::vector<Dataset> & datasets, const PipelineConfig & config)
{
  if (datasets.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no datasets to evaluate");
  }
  double sum = 0.0;
  for (const auto & d : datasets) {
    const Pipeline p = run_pipeline(d.sequence.scans, config);
    sum += evaluate(d.sequence.scans, d.labels, p.tracks(), config).mota;
  }
  return sum / static_cast<double>(datasets.size());
}

SweepResult run_sweep(
  const PipelineConfig & base, const std::vector<ParameterRange> & space,
  const std::vector<Dataset> & train, const std::vector<Dataset> & test, const SweepOptions & options)
{
  if (options.trials < 1) {
    throw Error(ErrorCode::kConfig, "sweep needs at least one trial");
  }
  if (space.empty()) {
    throw Error(ErrorCode::kConfig, "search space is empty");
  }
  base.validate();

  SweepResult result;
  result.space = space;
  std::mt19937_64 rng(options.seed);
  std::vector<PipelineConfig> configs;

  for (int t = 0; t < options.trials; ++t) {
    PipelineConfig config = base;
    Trial trial;
    trial.index = t;
    for (const auto & range : space) {
      double value = get_parameter(base, range.name);
      if (!(t == 0 && options.include_base)) {
        if (parameter_is_integer(range.name)) {
          const auto lo = static_cast<long>(std::ceil(range.lo));
          const auto hi = static_cast<long>(std::floor(range.hi));
          value = lo <= hi ? static_cast<double>(std::uniform_int_distribution<long>(lo, hi)(rng))
                           : range.lo;
        } else {
          value = range.lo == range.hi ? range.lo
                                       : std::uniform_real_distribution<double>(range.lo, range.hi)(rng);
        }
        set_parameter(config, range.name, value);
      }
      trial.values.push_back(get_parameter(config, range.name));
    }
    try {
      config.validate();
    } catch (const Error &) {
      trial.valid = false;
    }
    if (trial.valid) {
      trial.train_mota = mean_mota(train, config);
      trial.cost = cost(trial.train_mota);
      if (!test.empty()) {
        trial.test_mota = mean_mota(test, config);
      }
    } else {
      trial.train_mota = std::numeric_limits<double>::quiet_NaN();
      trial.cost = std::numeric_limits<double>::infinity();
    }
    result.trials.push_back(trial);
    configs.push_back(config);
  }

  for (std::size_t i = 1; i < result.trials.size(); ++i) {
    if (result.trials[i].cost < result.trials[result.best].cost) {
      result.best = i;
    }
  }
  if (!result.trials[result.best].valid) {
    throw Error(ErrorCode::kConfig, "no sampled configuration was valid");
  }
  result.best_config = configs[result.best];

  std::vector<double> xs, ys;
  for (const auto & t : result.trials) {
    if (t.valid && t.test_mota) {
      xs.push_back(t.train_mota);
      ys.push_back(*t.test_mota);
    }
  }
  try {
    if (xs.size() >= 2) {
      result.correlation = pearson(xs, ys);
    }
  } catch (const Error &) {
    result.correlation.reset();
  }
  return result;
}

std::string format_trials_csv(const SweepResult & result)
{
  std::string out = "trial,cost,train_mota,test_mota";
  for (const auto & r : result.space) {
    out += "," + r.name;
  }
  out += "\n";
  auto num = [](double v) { return std::isfinite(v) ? format_double(v) : std::string(std::isnan(v) ? "nan" : "inf"); };
  for (const auto & t : result.trials) {
    out += std::to_string(t.index) + "," + num(t.cost) + "," + num(t.train_mota) + "," +
           (t.test_mota ? num(*t.test_mota) : std::string("nan"));
    for (const double v : t.values) {
      out += "," + format_double(v);
    }
    out += "\n";
  }
  return out;
}

}  // namespace sparse_mot
