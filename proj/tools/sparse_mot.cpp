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

#include "sparse_mot/error.hpp"
#include "sparse_mot/pipeline.hpp"
#include "sparse_mot/pipeline_config.hpp"
#include "sparse_mot/simulator.hpp"
#include "sparse_mot/sweep.hpp"
#include "sparse_mot/text_format.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace sparse_mot;

namespace
{

constexpr int kExitOther = 1;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;
constexpr int kExitConfig = 5;

int exit_code_for(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kIo:
      return kExitIo;
    case ErrorCode::kMalformedHeader:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kNonMonotoneAzimuth:
    case ErrorCode::kTruncated:
    case ErrorCode::kMalformedRecord:
    case ErrorCode::kInvalidCell:
      return kExitFormat;
    case ErrorCode::kConfig:
      return kExitConfig;
    default:
      return kExitOther;
  }
}

struct ConfigOptions
{
  std::string path;
  std::vector<std::string> overrides;

  void add_to(CLI::App & app)
  {
    app.add_option("-c,--config", path, "pipeline config file (key = value sections)");
    app.add_option("--set", overrides, "override a parameter, section.key=value");
  }

  PipelineConfig load() const
  {
    PipelineConfig config = path.empty() ? PipelineConfig{} : read_pipeline_config(path);
    for (const auto & o : overrides) {
      apply_override(config, o);
    }
    config.validate();
    return config;
  }
};

std::optional<fs::path> optional_path(const std::string & s)
{
  return s.empty() ? std::nullopt : std::optional<fs::path>(s);
}

Scene scene_from(const std::string & arg)
{
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), arg) != names.end()) {
    return preset_scene(arg);
  }
  return read_scene(arg);
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Multi-object tracking on sparse rotating lidar scans"};
  app.require_subcommand(1);

  // simulate
  auto * simulate = app.add_subcommand("simulate", "generate a labelled scan sequence");
  std::string scene_arg = "baseline";
  std::string sim_out;
  double duration = 30.0;
  double rate = 10.0;
  int rows = 16;
  int cols = 900;
  std::optional<std::uint64_t> sim_seed;
  bool print_scene = false;
  simulate->add_option("--scene", scene_arg, "preset name or scene file")->capture_default_str();
  simulate->add_option("-o,--out", sim_out, "output directory")->required();
  simulate->add_option("--duration", duration, "seconds")->capture_default_str();
  simulate->add_option("--rate", rate, "scans per second")->capture_default_str();
  simulate->add_option("--rows", rows)->capture_default_str();
  simulate->add_option("--cols", cols)->capture_default_str();
  simulate->add_option("--seed", sim_seed, "override the scene seed");
  simulate->add_flag("--print-scene", print_scene, "write scene.txt next to the data");

  // run / filter / bench share inputs
  std::string scans_path;
  std::string poses_path;
  std::string out_dir;
  ConfigOptions run_cfg;
  auto * run = app.add_subcommand("run", "track a scan sequence");
  run->add_option("-s,--scans", scans_path, "scan file")->required();
  run->add_option("-p,--poses", poses_path, "pose file");
  run->add_option("-o,--out", out_dir, "output directory")->required();
  run_cfg.add_to(*run);

  auto * filter = app.add_subcommand("filter", "write the static cloud log only");
  filter->add_option("-s,--scans", scans_path, "scan file")->required();
  filter->add_option("-p,--poses", poses_path, "pose file");
  filter->add_option("-o,--out", out_dir, "output directory")->required();
  ConfigOptions filter_cfg;
  filter_cfg.add_to(*filter);

  auto * bench = app.add_subcommand("bench", "per-stage latency summary");
  bench->add_option("-s,--scans", scans_path, "scan file")->required();
  bench->add_option("-p,--poses", poses_path, "pose file");
  std::string bench_csv;
  bench->add_option("--timing", bench_csv, "also write the timing table here");
  ConfigOptions bench_cfg;
  bench_cfg.add_to(*bench);

  // eval
  auto * eval = app.add_subcommand("eval", "CLEAR MOT metrics of a track file");
  std::string labels_path;
  std::string tracks_path;
  std::string report_path;
  eval->add_option("-s,--scans", scans_path, "scan file")->required();
  eval->add_option("-p,--poses", poses_path, "pose file");
  eval->add_option("-l,--labels", labels_path, "label file")->required();
  eval->add_option("-t,--tracks", tracks_path, "track file")->required();
  eval->add_option("-o,--out", report_path, "report file");
  ConfigOptions eval_cfg;
  eval_cfg.add_to(*eval);

  // sweep
  auto * sweep = app.add_subcommand("sweep", "seeded random parameter search");
  std::vector<std::string> train_dirs;
  std::vector<std::string> test_dirs;
  std::string space_path;
  SweepOptions sweep_opts;
  bool no_base = false;
  sweep->add_option("--train", train_dirs, "dataset directories")->required();
  sweep->add_option("--test", test_dirs, "held-out dataset directories");
  sweep->add_option("--space", space_path, "search space file")->required();
  sweep->add_option("--trials", sweep_opts.trials)->capture_default_str();
  sweep->add_option("--seed", sweep_opts.seed)->capture_default_str();
  sweep->add_flag("--no-base", no_base, "sample every trial, including the first");
  sweep->add_option("-o,--out", out_dir, "output directory")->required();
  ConfigOptions sweep_cfg;
  sweep_cfg.add_to(*sweep);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      Scene scene = scene_from(scene_arg);
      if (sim_seed) {
        scene.seed = *sim_seed;
      }
      const auto seq = simulate_sequence(scene, duration, rate, rows, cols);
      write_sequence(sim_out, seq);
      if (print_scene) {
        write_text_file(fs::path(sim_out) / "scene.txt", format_scene(scene));
      }
      std::cout << "scans " << seq.scans.size() << "\nlabels " << seq.labels.size() << "\n";
    } else if (run->parsed() || filter->parsed()) {
      const PipelineConfig config = (run->parsed() ? run_cfg : filter_cfg).load();
      const auto seq = load_scans(scans_path, optional_path(poses_path));
      const Pipeline pipeline = run_pipeline(seq.scans, config);
      if (run->parsed()) {
        write_run_outputs(out_dir, pipeline);
      } else {
        write_static_log(out_dir, pipeline.filter().log());
      }
      long dynamic = 0;
      for (const auto & h : pipeline.tracker().hypotheses()) {
        dynamic += h.dynamic ? 1 : 0;
      }
      std::cout << "scans " << seq.scans.size() << "\nactive_hypotheses "
                << pipeline.tracker().hypotheses().size() << "\nactive_dynamic " << dynamic << "\n";
    } else if (bench->parsed()) {
      const PipelineConfig config = bench_cfg.load();
      const auto seq = load_scans(scans_path, optional_path(poses_path));
      const Pipeline pipeline = run_pipeline(seq.scans, config);
      if (!bench_csv.empty()) {
        write_text_file(bench_csv, format_timing_csv(pipeline.timing()));
      }
      std::cout << format_timing_summary(summarize_timing(pipeline.timing()));
    } else if (eval->parsed()) {
      const PipelineConfig config = eval_cfg.load();
      const auto seq = load_scans(scans_path, optional_path(poses_path));
      const auto report =
        evaluate(seq.scans, read_labels(labels_path), read_tracks(tracks_path), config);
      const std::string text = format_report(report);
      if (!report_path.empty()) {
        write_text_file(report_path, text);
      }
      std::cout << text;
    } else if (sweep->parsed()) {
      const PipelineConfig config = sweep_cfg.load();
      const auto space = read_search_space(space_path);
      sweep_opts.include_base = !no_base;
      std::vector<Dataset> train;
      std::vector<Dataset> test;
      for (const auto & d : train_dirs) {
        train.push_back(load_dataset(d));
      }
      for (const auto & d : test_dirs) {
        test.push_back(load_dataset(d));
      }
      const auto result = run_sweep(config, space, train, test, sweep_opts);
      fs::create_directories(out_dir);
      write_text_file(fs::path(out_dir) / "trials.csv", format_trials_csv(result));
      write_text_file(fs::path(out_dir) / "best.conf", format_pipeline_config(result.best_config));
      const auto & best = result.trials[result.best];
      std::cout << "best_trial " << best.index << "\nbest_cost " << format_double(best.cost) << "\n";
      if (result.correlation) {
        std::cout << "pearson " << format_double(*result.correlation) << "\n";
      }
    }
  } catch (const Error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return 0;
}
