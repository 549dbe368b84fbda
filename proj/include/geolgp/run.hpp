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

#ifndef GEOLGP_RUN_HPP_
#define GEOLGP_RUN_HPP_

#include <string>
#include <vector>

#include "geolgp/config.hpp"
#include "geolgp/verify.hpp"

namespace geolgp {

struct RunResult {
  bool failed = false;  // a solver stage raised; report.json is partial
  ErrorCode error_code = ErrorCode::kInvalidArgument;
  std::string error;
  std::vector<CheckResult> checks;
  bool checks_passed() const;
};

// Full pipeline for one config; writes plan.json, rays.json, sigma*.csv,
// sigma.pgm, u.csv, u.pgm, psi.csv, levels.json and report.json into
// config.out_dir. Solver failures are recorded in the result and the
// report instead of raising; I/O failures raise.
RunResult run(const Config& config);

}  // namespace geolgp

#endif  // GEOLGP_RUN_HPP_
