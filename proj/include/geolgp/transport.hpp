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

#ifndef GEOLGP_TRANSPORT_HPP_
#define GEOLGP_TRANSPORT_HPP_

#include <limits>
#include <string>
#include <vector>

#include "geolgp/boundary.hpp"
#include "geolgp/grid.hpp"
#include "geolgp/metric.hpp"

namespace geolgp {

// Atom on the boundary with a nonnegative mass.
struct BoundaryPoint {
  double theta = 0.0;
  Vec2 position;
  double mass = 0.0;
};

std::vector<BoundaryPoint> place_atoms(const DomainBoundary& domain,
                                       const std::vector<BoundaryMeasure::Atom>& atoms);

struct CostMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> entries;  // row-major

  double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * cols + j]; }
  double max_entry() const;
};

// d_k between every source and target; parallel over sources.
CostMatrix cost_matrix(const Metric& metric, const std::vector<BoundaryPoint>& sources,
                       const std::vector<BoundaryPoint>& targets);

struct Flow {
  int source = 0;
  int target = 0;
  double mass = 0.0;
  double cost = 0.0;
  // Range of the cumulative boundary mass carried by this flow; set by the
  // non-crossing solver, NaN otherwise.
  double level_lo = std::numeric_limits<double>::quiet_NaN();
  double level_hi = std::numeric_limits<double>::quiet_NaN();
  bool has_levels() const { return level_lo == level_lo; }
};

struct TransportPlan {
  std::vector<Flow> flows;
  double total_cost = 0.0;
  // Exact duals: psi_source[i] - psi_target[j] <= c_ij with equality on
  // flows. Empty when the solver does not produce them.
  std::vector<double> psi_source;
  std::vector<double> psi_target;
  std::vector<std::string> warnings;
};

// Exact network simplex with deterministic pricing (most negative reduced
// cost, lowest arc index on ties) and a strongly feasible leaving rule.
TransportPlan solve_lp(const std::vector<double>& source_mass,
                       const std::vector<double>& target_mass, const CostMatrix& cost);

// Non-crossing plan for boundary atoms. The cumulative signed mass S along
// the boundary is cut into level intervals; in each interval the atoms
// crossing the level alternate in sign and are paired by a minimum-cost
// non-crossing matching (interval dynamic programming). Falls back to
// solve_lp with a warning when `convex` is false.
TransportPlan solve_noncrossing(const std::vector<BoundaryPoint>& sources,
                                const std::vector<BoundaryPoint>& targets,
                                const CostMatrix& cost, bool convex = true);

struct Potential {
  std::vector<double> at_sources;
  std::vector<double> at_targets;
  ScalarGrid grid;
  double gap = 0.0;      // total_cost - dual value
  double relative_gap = 0.0;
};

// Dual values at atoms from exact LP duals (solved here when the plan has
// none), extended to the grid by the c-transform from the targets.
// Raises kDualityGap when |gap| > tol * total_cost.
Potential potential_from_plan(const Metric& metric, const TransportPlan& plan,
                              const std::vector<BoundaryPoint>& sources,
                              const std::vector<BoundaryPoint>& targets, const CostMatrix& cost,
                              const GridSpec& grid, double tol = 1e-6);

struct MongeEntry {
  int source = 0;
  double mass = 0.0;
  std::vector<int> targets;
  std::vector<double> masses;
  bool multi_valued() const { return targets.size() > 1; }
};

// One entry per source atom, or per split source atom for plans carrying
// levels.
std::vector<MongeEntry> monge_map(const TransportPlan& plan);

struct Ray {
  Geodesic geodesic;
  int source = 0;
  int target = 0;
  double mass = 0.0;
  // Boundary values carried by the ray: g_hi on the right of the direction
  // of travel, g_lo on the left.
  double g_lo = 0.0;
  double g_hi = 0.0;
};

struct RaySet {
  std::vector<Ray> rays;
};

// One geodesic per flow. g values come from the flow levels offset by
// `g_base` when present, else from the one-sided limits of `datum` at the
// source (pass nullptr to leave them zero).
RaySet build_rays(const Metric& metric, const TransportPlan& plan,
                  const std::vector<BoundaryPoint>& sources,
                  const std::vector<BoundaryPoint>& targets, const BoundaryDatum* datum,
                  double g_base);

// Value of g on the boundary arc preceding the first atom in counterclockwise
// order, so that g ~ g_base + S along the boundary.
double level_base(const BoundaryDatum& datum, const std::vector<BoundaryPoint>& sources,
                  const std::vector<BoundaryPoint>& targets);

struct CrossingReport {
  int crossings = 0;
  int first_ray = -1;
  int second_ray = -1;
};

// Proper intersections between ray polylines farther than `exclusion` from
// every ray endpoint.
CrossingReport count_interior_crossings(const RaySet& rays, double exclusion);

}  // namespace geolgp

#endif  // GEOLGP_TRANSPORT_HPP_
