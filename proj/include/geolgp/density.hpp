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

#ifndef GEOLGP_DENSITY_HPP_
#define GEOLGP_DENSITY_HPP_

#include <functional>
#include <vector>

#include "geolgp/grid.hpp"
#include "geolgp/transport.hpp"
#include "geolgp/weight.hpp"

namespace geolgp {

struct TransportDensity {
  ScalarGrid sigma;
  ScalarGrid sigma_plus;   // parts of rays with t <= tau_split
  ScalarGrid sigma_minus;  // parts of rays with t >= tau_split
};

// Calls fn(cell, t0, t1) for every grid cell crossed by the segment a -> b,
// with [t0, t1] the fraction of the segment inside the cell. Raises
// kRayOutsideGrid when the segment leaves the grid.
void traverse_segment(const GridSpec& grid, Vec2 a, Vec2 b,
                      const std::function<void(int, double, double)>& fn);

// Each ray deposits (mass) x (weighted length of the crossing) into every
// cell it crosses; values are divided by h^2.
TransportDensity assemble_density(const ConformalWeight& weight, const RaySet& rays,
                                  const GridSpec& grid, double tau_split = 0.5);

// Vector deposits mass * k * dx along each ray, divided by h^2.
VectorGrid assemble_flow(const ConformalWeight& weight, const RaySet& rays, const GridSpec& grid);

// max over 25 tensor cosines phi of
//   |sum grad phi . v / k h^2 + sum_atoms phi (f+ - f-)| / (Lip(phi) * mass).
double divergence_residual(const VectorGrid& v, const ConformalWeight& weight,
                           const std::vector<BoundaryPoint>& sources,
                           const std::vector<BoundaryPoint>& targets, const Box& box);

struct LpNorm {
  double norm = 0.0;
  double collar_mass = 0.0;
};

// Discrete L^p norm (p = INFINITY allowed); collar_mass is the mass of cells
// whose centre lies within `collar` of the boundary or outside the domain.
LpNorm lp_norm(const ScalarGrid& sigma, double p, double collar, const DomainBoundary& domain);

struct FlowAlignment {
  double max_angle_deg = 0.0;
  double p95_angle_deg = 0.0;
  int cells = 0;
};

// Angle between v and -grad psi over cells where sigma exceeds the given
// quantile of its positive values; grad psi by centred differences.
FlowAlignment flow_alignment(const VectorGrid& v, const ScalarGrid& sigma, const ScalarGrid& psi,
                             double quantile = 0.1);

}  // namespace geolgp

#endif  // GEOLGP_DENSITY_HPP_
