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

#ifndef GEOLGP_RECONSTRUCT_HPP_
#define GEOLGP_RECONSTRUCT_HPP_

#include <vector>

#include "geolgp/boundary.hpp"
#include "geolgp/grid.hpp"
#include "geolgp/transport.hpp"
#include "geolgp/weight.hpp"

namespace geolgp {

struct SolutionField {
  ScalarGrid u;             // NaN outside the domain mask
  std::vector<char> mask;   // cells whose centre lies in the domain
  std::vector<double> trace_theta;
  std::vector<double> trace;
};

struct PoissonOptions {
  double rel_tol = 1e-10;
  int max_iterations = 50000;
};

// Least-squares solution of grad u = R_{-pi/2}(v / k) on the masked cells,
// shifted so that the arclength mean of the boundary trace equals that of g.
SolutionField flow_to_u(const VectorGrid& v, const ConformalWeight& weight,
                        const BoundaryDatum& g, const DomainBoundary& domain,
                        PoissonOptions options = {});

// u from the ray structure: each ray is a level line carrying g_lo on its
// left and g_hi on its right (and g_hi on the ray itself); cells between
// rays interpolate by distance between the nearest ray and the nearer of the
// next ray or the boundary. Raises kCrossingRays when rays cross.
SolutionField ray_sweep_u(const RaySet& rays, const BoundaryDatum& g,
                          const DomainBoundary& domain, const GridSpec& grid);

// Level set polylines of u (marching squares on cell centres, masked cells
// only).
std::vector<std::vector<Vec2>> contour_lines(const SolutionField& field, double level);

// ||u||_p + ||sigma||_p; |Du| is identified with sigma.
double w1p_norm(const SolutionField& field, const ScalarGrid& sigma, double p);

// sum |u1 - u2| h^2 over cells masked in both.
double l1_difference(const SolutionField& a, const SolutionField& b);

// Discrete sum of k |grad u| h^2 (one-sided differences averaged).
double weighted_total_variation(const SolutionField& field, const ConformalWeight& weight);

// Arclength-weighted L1 distance between the trace and g.
double trace_error(const SolutionField& field, const BoundaryDatum& g,
                   const DomainBoundary& domain);

}  // namespace geolgp

#endif  // GEOLGP_RECONSTRUCT_HPP_
