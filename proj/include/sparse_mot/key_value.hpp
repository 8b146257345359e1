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

#ifndef SPARSE_MOT__KEY_VALUE_HPP_
#define SPARSE_MOT__KEY_VALUE_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace sparse_mot
{

struct KeyValueEntry
{
  std::string key;
  std::string value;
  std::size_t line{0};
};

struct KeyValueSection
{
  std::string name;  // empty for entries before the first header
  std::size_t line{0};
  std::vector<KeyValueEntry> entries;
};

/// Parses "[section]" headers and "key = value" lines. '#' starts a comment.
/// Sections may repeat; duplicate keys within one section are rejected.
/// Errors are reported as ErrorCode::kConfig with `source:line`.
std::vector<KeyValueSection> parse_key_value(const std::string & text, const std::string & source);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__KEY_VALUE_HPP_
