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

#ifndef GEOLGP_PROBLEM_HPP_
#define GEOLGP_PROBLEM_HPP_

#include <optional>
#include <string>
#include <vector>

#include "geolgp/boundary.hpp"
#include "geolgp/density.hpp"
#include "geolgp/domain.hpp"
#include "geolgp/metric.hpp"
#include "geolgp/reconstruct.hpp"
#include "geolgp/transport.hpp"
#include "geolgp/weight.hpp"

namespace geolgp {

enum class SolverKind { kNoncrossing, kLp };

// One weighted least gradient instance: domain, weight k, datum g and the
// atom budgets used to discretize f+ and f-.
struct Problem {
  Problem(DomainBoundary d, ConformalWeight w, BoundaryDatum g)
      : domain(std::move(d)), weight(std::move(w)), datum(std::move(g)) {}

  DomainBoundary domain;
  ConformalWeight weight;
  BoundaryDatum datum;
  int n_source = 64;
  int n_target = 64;
  double tau_split = 0.5;
  SolverKind solver = SolverKind::kNoncrossing;
  GeodesicOptions geodesic;
};

struct SolveOptions {
  GridSpec grid;
  bool certificate = true;
  int certificate_samples = 48;
  bool potential = true;
  bool reconstruct = true;
  // Record failures of the potential and reconstruction stages in
  // Solution::failures instead of raising.
  bool keep_going = false;
};

struct StageFailure {
  std::string stage;
  ErrorCode code = ErrorCode::kInvalidArgument;
  std::string message;
};

struct Solution {
  GridSpec grid;
  std::optional<ConvexityReport> convexity;
  BoundaryMeasure f;
  BoundaryMeasure f_plus;
  BoundaryMeasure f_minus;
  std::vector<BoundaryPoint> sources;
  std::vector<BoundaryPoint> targets;
  CostMatrix cost;
  TransportPlan plan;
  double g_base = 0.0;
  RaySet rays;
  TransportDensity density;
  VectorGrid flow;
  std::optional<Potential> potential;
  std::optional<SolutionField> u_flow;
  std::optional<SolutionField> u_rays;
  std::vector<StageFailure> failures;
};

// metric must be built from problem.weight and problem.domain.
Solution solve(const Problem& problem, const Metric& metric, const SolveOptions& options);

inline Metric make_metric(const Problem& problem) {
  return Metric(problem.weight, problem.domain, problem.geodesic);
}

}  // namespace geolgp

#endif  // GEOLGP_PROBLEM_HPP_
