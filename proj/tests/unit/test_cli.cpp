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

#include "sparse_mot/text_format.hpp"
#include "support/test_support.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <string>

namespace sparse_mot
{
namespace
{

namespace fs = std::filesystem;

int cli(const std::string & args)
{
  const std::string cmd = std::string(SPARSE_MOT_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliTest : public ::testing::Test
{
protected:
  static void SetUpTestSuite()
  {
    dir_ = new fs::path(test::temp_dir("cli"));
    ASSERT_EQ(cli("simulate --scene baseline --duration 3 -o " + (*dir_ / "data").string()), 0);
  }
  static void TearDownTestSuite() { delete dir_; }

  static std::string data(const std::string & name) { return (*dir_ / "data" / name).string(); }
  static std::string inputs() { return "-s " + data("scans.oscn") + " -p " + data("poses.txt"); }
  static fs::path * dir_;
};
fs::path * CliTest::dir_ = nullptr;

TEST_F(CliTest, RunWritesOutputs)
{
  const auto out = *dir_ / "run";
  ASSERT_EQ(cli("run " + inputs() + " -o " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "tracks.txt"));
  EXPECT_TRUE(fs::exists(out / "detections.txt"));
  EXPECT_TRUE(fs::exists(out / "static" / "static_29.xyz"));
  const auto timing = read_text_file(out / "timing.csv");
  EXPECT_EQ(std::count(timing.begin(), timing.end(), '\n'), 31);

  const auto report = (*dir_ / "report.txt").string();
  ASSERT_EQ(cli("eval " + inputs() + " -l " + data("labels.txt") + " -t " + (out / "tracks.txt").string() + " -o " + report), 0);
  EXPECT_NE(read_text_file(report).find("mota="), std::string::npos);
}

TEST_F(CliTest, RunIsDeterministic)
{
  ASSERT_EQ(cli("run " + inputs() + " -o " + (*dir_ / "a").string()), 0);
  ASSERT_EQ(cli("run " + inputs() + " -o " + (*dir_ / "b").string()), 0);
  EXPECT_EQ(read_text_file(*dir_ / "a" / "tracks.txt"), read_text_file(*dir_ / "b" / "tracks.txt"));
  EXPECT_EQ(read_text_file(*dir_ / "a" / "static" / "static_20.xyz"), read_text_file(*dir_ / "b" / "static" / "static_20.xyz"));
}

TEST_F(CliTest, FilterWritesOnlyTheLog)
{
  const auto out = *dir_ / "filtered";
  ASSERT_EQ(cli("filter " + inputs() + " -o " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "manifest.txt"));
  EXPECT_FALSE(fs::exists(out / "tracks.txt"));
}

TEST_F(CliTest, BenchAndOverrides)
{
  EXPECT_EQ(cli("bench " + inputs() + " --set tracker.assign_gate=5"), 0);
  EXPECT_EQ(cli("bench " + inputs() + " --set tracker.no_such=5"), 5);
}

TEST_F(CliTest, ErrorExitCodes)
{
  EXPECT_EQ(cli("run -s /nonexistent/scans.oscn -o " + (*dir_ / "x").string()), 3);
  const auto bad_cfg = *dir_ / "bad.conf";
  write_text_file(bad_cfg, "[tracker]\ngate = 3\n");
  EXPECT_EQ(cli("run " + inputs() + " -c " + bad_cfg.string() + " -o " + (*dir_ / "y").string()), 5);
  EXPECT_FALSE(fs::exists(*dir_ / "y"));

  const auto garbage = *dir_ / "garbage.oscn";
  write_text_file(garbage, "not a scan file\n");
  EXPECT_EQ(cli("run -s " + garbage.string() + " -o " + (*dir_ / "z").string()), 4);
}

TEST_F(CliTest, EmptySequenceLeavesNoOutputs)
{
  const auto empty = *dir_ / "empty.oscn";
  write_text_file(empty, "OSCN1\nrows 1\ncols 4\nelevations 0\nsentinel 200\n");
  const auto out = *dir_ / "empty_out";
  EXPECT_EQ(cli("run -s " + empty.string() + " -o " + out.string()), 4);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, SweepWritesTrialTable)
{
  const auto space = *dir_ / "space.txt";
  write_text_file(space, "tracker.assign_gate = 3 5\n");
  const auto out = *dir_ / "sweep";
  ASSERT_EQ(cli("sweep --train " + (*dir_ / "data").string() + " --test " + (*dir_ / "data").string() +
                " --space " + space.string() + " --trials 3 --seed 2 -o " + out.string()), 0);
  const auto csv = read_text_file(out / "trials.csv");
  EXPECT_EQ(csv.rfind("trial,cost,train_mota,test_mota,tracker.assign_gate\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_TRUE(fs::exists(out / "best.conf"));

  write_text_file(space, "\n");
  EXPECT_EQ(cli("sweep --train " + (*dir_ / "data").string() + " --space " + space.string() + " -o " + out.string()), 5);
}

TEST_F(CliTest, UsageErrors)
{
  EXPECT_NE(cli(""), 0);
  EXPECT_NE(cli("run"), 0);
}

}  // namespace
}  // namespace sparse_mot
