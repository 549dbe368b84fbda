// Copyright 2026 The geolgp Authors
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

#include "geolgp/error.hpp"

namespace geolgp {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kNoConvergence: return "no-convergence";
    case ErrorCode::kConvexityViolation: return "convexity-violation";
    case ErrorCode::kUnbalanced: return "unbalanced";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kRayOutsideGrid: return "ray-outside-grid";
    case ErrorCode::kDualityGap: return "duality-gap";
    case ErrorCode::kCrossingRays: return "crossing-rays";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace geolgp
