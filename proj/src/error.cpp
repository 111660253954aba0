// Copyright 2026 The qssvm Authors
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

#include "qssvm/error.hpp"

namespace qssvm {

const char* error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kSize: return "size";
    case ErrorKind::kLayout: return "layout";
    case ErrorKind::kSymmetry: return "symmetry";
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kDegree: return "degree";
    case ErrorKind::kEncoding: return "encoding";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kAmplitudeOverflow: return "amplitude-overflow";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

}  // namespace qssvm
