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

#ifndef SPARSE_MOT__TEXT_FORMAT_HPP_
#define SPARSE_MOT__TEXT_FORMAT_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace sparse_mot
{

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Fixed-point form with `digits` decimals, used by the text exports.
std::string format_fixed(double value, int digits = 6);

double parse_double(std::string_view text);
int parse_int(std::string_view text);

std::vector<std::string> split_fields(std::string_view line);
std::string trim(std::string_view text);

std::string read_text_file(const std::filesystem::path & path);
void write_text_file(const std::filesystem::path & path, const std::string & contents);

/// Calls `fn(line_number, fields)` for every non-blank line not starting with '#'.
void for_each_record(
  const std::filesystem::path & path,
  const std::function<void(std::size_t, const std::vector<std::string> &)> & fn);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__TEXT_FORMAT_HPP_
