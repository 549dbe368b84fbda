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

#ifndef GEOLGP_VERIFY_HPP_
#define GEOLGP_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "geolgp/problem.hpp"

namespace geolgp {

struct CheckResult {
  std::string name;
  bool pass = false;
  bool inconclusive = false;
  std::vector<std::pair<std::string, double>> metrics;  // insertion order
  std::vector<std::string> notes;

  void set(const std::string& key, double value);
  double get(const std::string& key) const;  // NaN when absent
};

// Jacobian lower bound J(s,t) >= (1-t)^C J(s,0)-bound over t <= t_cap.
struct JacobianBound {
  double c_estimate = 0.0;
  double min_ratio = 0.0;     // min J / ((1-t)^C k^-1 tau nu.n)
  double t0_ratio_min = 0.0;  // J(s,0) / (k^-1 tau nu.n)
  double t0_ratio_max = 0.0;
  double min_jacobian = 0.0;  // over interior samples
  int samples = 0;
  int nonpositive = 0;
  bool pass = false;
};
JacobianBound check_jacobian_bound(const GeodesicFan& fan, double t_cap = 0.95);

// ||f||_p on the boundary: total variation for p = 1, density part only
// otherwise.
double boundary_lp_norm(const BoundaryMeasure& f, double p);
// ||sigma||_p / ||f||_p.
double check_lp_ratio(const ScalarGrid& sigma, const BoundaryMeasure& f, double p,
                      const DomainBoundary& domain);

struct Ladder {
  double p = 1.0;
  std::vector<double> h;
  std::vector<double> values;
  double last_over_first = 0.0;
  bool bounded = false;     // last / first < threshold
  bool increasing = false;  // strictly increasing along the ladder
};
Ladder make_ladder(double p, std::vector<double> h, std::vector<double> values,
                   double threshold = 1.5);

// ||sigma_h||_p over grids of spacing hs; atom budgets grow like 1/h
// starting from the problem's budgets at hs.front().
std::vector<Ladder> lp_ladder(const Problem& problem, const Metric& metric,
                              const std::vector<double>& hs, const std::vector<double>& ps);

struct HolderReport {
  double alpha = 1.0;
  double p = 2.0;  // 2 / (1 - alpha); 16 stands in for infinity at alpha = 1
  Ladder ladder;
  bool bounded = false;
};
HolderReport check_holder_case(const Problem& problem, const Metric& metric, double alpha,
                               const std::vector<double>& hs);

struct DualEquivalence {
  double max_z_over_k = 0.0;
  double fraction_over = 0.0;  // cells with |z| > k (1 + 1e-3)
  double max_div = 0.0;        // max |div z| h / k_max
  double pairing = 0.0;        // boundary pairing of z with g, inward normal
  double cost = 0.0;
  double gap = 0.0;
  double relative_gap = 0.0;
  bool pass = false;
};
DualEquivalence check_dual_equivalence(const Potential& psi, const BoundaryDatum& g,
                                       const ConformalWeight& weight,
                                       const DomainBoundary& domain, double cost);

struct StabilityRow {
  int n = 0;
  double cost = 0.0;
  double cost_diff = 0.0;     // against the previous row
  double sigma_l1_diff = 0.0;
  double sigma_plus_l1_diff = 0.0;
  double sigma_minus_l1_diff = 0.0;
  double displacement = 0.0;  // max shift of the matched target barycentre
};
struct StabilityTable {
  std::vector<StabilityRow> rows;
  bool monotone = false;  // cost and sigma differences decrease
};
// Fixed source atoms, target budgets ns (doubling).
StabilityTable check_stability(const Problem& problem, const Metric& metric,
                               const GridSpec& grid, const std::vector<int>& ns);

// Hausdorff distance between the contour {u = t} and the rays whose level
// range contains t, ignoring points within `margin` of the boundary.
struct LevelSetReport {
  std::vector<double> levels;
  std::vector<double> hausdorff;
  double max_hausdorff = 0.0;
};
LevelSetReport check_level_sets(const SolutionField& u, const RaySet& rays,
                                const DomainBoundary& domain, int count, double margin);

struct CheckOptions {
  std::vector<double> p_values{1.0, 2.0};
  std::uint64_t seed = 0;
  double holder_alpha = 1.0;
  int ladder_levels = 3;
  std::vector<int> stability_n{16, 32, 64, 128};
};

// Single-run checks by name; see known_checks().
const std::vector<std::string>& known_checks();
CheckResult run_check(const std::string& name, const Problem& problem, const Metric& metric,
                      const Solution& solution, const CheckOptions& options);

}  // namespace geolgp

#endif  // GEOLGP_VERIFY_HPP_
