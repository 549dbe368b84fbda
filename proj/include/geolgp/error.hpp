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

#ifndef GEOLGP_ERROR_HPP_
#define GEOLGP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace geolgp {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDomain,
  kNoConvergence,
  kConvexityViolation,
  kUnbalanced,
  kDegenerate,
  kRayOutsideGrid,
  kDualityGap,
  kCrossingRays,
  kSchema,
  kIo,
};

const char* error_code_name(ErrorCode code);

// All library failures are reported through this type. The code is mapped
// one-to-one onto the status values of the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace geolgp

#endif  // GEOLGP_ERROR_HPP_
