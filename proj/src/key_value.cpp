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

#include "sparse_mot/key_value.hpp"

#include "sparse_mot/error.hpp"
#include "sparse_mot/text_format.hpp"

#include <algorithm>
#include <sstream>

namespace sparse_mot
{

std::vector<KeyValueSection> parse_key_value(const std::string & text, const std::string & source)
{
  std::vector<KeyValueSection> sections(1);
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  auto fail = [&](const std::string & msg) {
    throw Error(ErrorCode::kConfig, source + ":" + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        fail("malformed section header '" + line + "'");
      }
      sections.push_back({trim(line.substr(1, line.size() - 2)), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail("expected key = value, got '" + line + "'");
    }
    KeyValueEntry entry{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no};
    if (entry.key.empty()) {
      fail("empty key");
    }
    auto & current = sections.back().entries;
    if (std::any_of(current.begin(), current.end(), [&](const KeyValueEntry & e) {
          return e.key == entry.key;
        })) {
      fail("duplicate key '" + entry.key + "'");
    }
    current.push_back(std::move(entry));
  }
  if (sections.front().entries.empty()) {
    sections.erase(sections.begin());
  }
  return sections;
}

}  // namespace sparse_mot
