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

#include "geolgp/problem.hpp"

#include <tuple>

namespace geolgp {

Solution solve(const Problem& problem, const Metric& metric, const SolveOptions& options) {
  Solution s;
  s.grid = options.grid;
  bool convex = true;
  if (options.certificate) {
    s.convexity = convexity_certificate(metric, options.certificate_samples);
    convex = s.convexity->passed();
  }
  s.f = tangential_derivative(problem.datum, problem.domain);
  std::tie(s.f_plus, s.f_minus) = split(s.f);
  s.sources = place_atoms(problem.domain, discretize(s.f_plus, problem.n_source));
  s.targets = place_atoms(problem.domain, discretize(s.f_minus, problem.n_target));
  s.cost = cost_matrix(metric, s.sources, s.targets);

  if (!s.sources.empty()) {
    if (problem.solver == SolverKind::kLp) {
      std::vector<double> ms, mt;
      for (const auto& a : s.sources) ms.push_back(a.mass);
      for (const auto& b : s.targets) mt.push_back(b.mass);
      s.plan = solve_lp(ms, mt, s.cost);
    } else {
      s.plan = solve_noncrossing(s.sources, s.targets, s.cost, convex);
    }
    s.g_base = level_base(problem.datum, s.sources, s.targets);
  }
  s.rays = build_rays(metric, s.plan, s.sources, s.targets, &problem.datum, s.g_base);
  s.density = assemble_density(problem.weight, s.rays, s.grid, problem.tau_split);
  s.flow = assemble_flow(problem.weight, s.rays, s.grid);

  auto stage = [&](const char* name, auto&& fn) {
    if (!options.keep_going) {
      fn();
      return;
    }
    try {
      fn();
    } catch (const Error& e) {
      s.failures.push_back({name, e.code(), e.what()});
    }
  };
  if (options.potential) {
    stage("potential", [&] {
      if (s.sources.empty()) {
        Potential p;
        p.grid = ScalarGrid(s.grid, 0.0);
        s.potential = std::move(p);
      } else {
        s.potential = potential_from_plan(metric, s.plan, s.sources, s.targets, s.cost, s.grid);
      }
    });
  }
  if (options.reconstruct) {
    stage("flow_to_u", [&] {
      s.u_flow = flow_to_u(s.flow, problem.weight, problem.datum, problem.domain);
    });
    if (problem.solver == SolverKind::kNoncrossing && convex) {
      stage("ray_sweep_u", [&] {
        s.u_rays = ray_sweep_u(s.rays, problem.datum, problem.domain, s.grid);
      });
    }
  }
  return s;
}

}  // namespace geolgp
