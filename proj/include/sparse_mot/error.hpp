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

#ifndef SPARSE_MOT__ERROR_HPP_
#define SPARSE_MOT__ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sparse_mot
{

enum class ErrorCode {
  kIo,
  kMalformedHeader,
  kDimensionMismatch,
  kNonMonotoneAzimuth,
  kTruncated,
  kMalformedRecord,
  kInvalidCell,
  kInvalidArgument,
  kConfig,
  kConsistency,
  kUndefinedMetric,
  kNumericalDomain,
};

const char * to_string(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

inline const char * to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kIo:
      return "io error";
    case ErrorCode::kMalformedHeader:
      return "malformed header";
    case ErrorCode::kDimensionMismatch:
      return "dimension mismatch";
    case ErrorCode::kNonMonotoneAzimuth:
      return "non-monotone azimuths";
    case ErrorCode::kTruncated:
      return "truncated file";
    case ErrorCode::kMalformedRecord:
      return "malformed record";
    case ErrorCode::kInvalidCell:
      return "invalid cell";
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kConfig:
      return "config error";
    case ErrorCode::kConsistency:
      return "consistency error";
    case ErrorCode::kUndefinedMetric:
      return "undefined metric";
    case ErrorCode::kNumericalDomain:
      return "numerical domain error";
  }
  return "error";
}

}  // namespace sparse_mot

#endif  // SPARSE_MOT__ERROR_HPP_
