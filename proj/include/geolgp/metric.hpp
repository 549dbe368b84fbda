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

#ifndef GEOLGP_METRIC_HPP_
#define GEOLGP_METRIC_HPP_

#include <memory>
#include <vector>

#include "geolgp/domain.hpp"
#include "geolgp/error.hpp"
#include "geolgp/geometry.hpp"
#include "geolgp/grid.hpp"
#include "geolgp/weight.hpp"

namespace geolgp {

class SeedGraph;

// Curve sampled at constant metric speed: points[i] = gamma(i / (N-1)).
struct Geodesic {
  std::vector<Vec2> points;
  double weighted_length = 0.0;
  // Euclidean unit tangents at both ends, in the direction of travel.
  Vec2 start_direction;
  Vec2 end_direction;
  // Set when the angle search found several minimizers of equal length.
  bool ambiguous = false;

  Vec2 start() const { return points.front(); }
  Vec2 end() const { return points.back(); }
  Geodesic reversed() const;
  // Catmull-Rom interpolation of the samples, t in [0, 1].
  Vec2 position_at(double t) const;
};

class GeodesicError : public Error {
 public:
  GeodesicError(ErrorCode code, const std::string& what, Geodesic best)
      : Error(code, what), best_(std::move(best)) {}
  const Geodesic& best_candidate() const { return best_; }

 private:
  Geodesic best_;
};

struct GeodesicOptions {
  // Samples per returned geodesic.
  int samples = 256;
  // Relative tolerance on the endpoint miss.
  double rel_tol = 1e-4;
  // RK4 steps per domain diameter.
  int steps_per_diameter = 256;
  // Cells across the domain for the Dijkstra seed graph.
  int seed_cells = 64;
};

// Geodesics of the conformal metric k(x)|dx| inside a domain.
//
// In Euclidean arclength the geodesic equation reads
//   x' = e(phi),  phi' = grad k . e(phi)^perp / k,
// and is integrated with classical RK4. Two-point problems are solved by
// shooting on the initial angle, seeded by a shortest path on a
// 16-neighbour grid graph.
class Metric {
 public:
  Metric(ConformalWeight weight, DomainBoundary domain, GeodesicOptions options = {});

  const ConformalWeight& weight() const { return weight_; }
  const DomainBoundary& domain() const { return domain_; }
  const GeodesicOptions& options() const { return options_; }

  // Integrates from x in the given unit direction until the curve first
  // leaves the domain. step_count overrides steps_per_diameter when > 0.
  Geodesic shoot(Vec2 x, Vec2 direction, int step_count = 0) const;

  Geodesic connect(Vec2 x, Vec2 y) const;
  // One geodesic per target, sharing setup work.
  std::vector<Geodesic> connect_from(Vec2 x, const std::vector<Vec2>& ys) const;
  double distance(Vec2 x, Vec2 y) const { return connect(x, y).weighted_length; }

  // Fast-marching solution of |grad D| = k with D(y) = 0 on cells within
  // `band` of the domain (4h when band is 0); other cells hold +inf.
  ScalarGrid distance_field(Vec2 y, const GridSpec& grid) const;
  // Same with several sources carrying offsets:
  // D(z) = min_j [offset_j + d_k(y_j, z)].
  ScalarGrid distance_field(const std::vector<Vec2>& ys,
                            const std::vector<double>& offsets,
                            const GridSpec& grid, double band = 0.0) const;

 private:
  friend struct MetricInternals;
  ConformalWeight weight_;
  DomainBoundary domain_;
  GeodesicOptions options_;
  double step_ = 0.0;
  Box travel_box_;
  std::shared_ptr<const SeedGraph> seed_;
};

// Fan of geodesics from boundary points alpha(s) to a boundary point x.
// Row r of `jacobian` holds J(s_r, t_c) = det[d/ds Psi, d/dt Psi] with
// Psi(s, t) = gamma_s(t), s the arclength of the boundary.
struct GeodesicFan {
  std::vector<double> s;
  std::vector<double> theta;
  std::vector<double> t;
  Vec2 target;
  std::vector<std::vector<double>> jacobian;
  std::vector<Vec2> nu;
  std::vector<Vec2> normals;
  std::vector<double> tau;
  std::vector<double> k_at_s;

  // k^-1(s) tau(s) [nu(s) . n(s)]
  double initial_jacobian(std::size_t row) const;
};

// theta_samples are boundary parameters of the arc points; target_theta is
// the boundary parameter of x. Raises kDegenerate when an arc point
// coincides with x.
GeodesicFan jacobian_fan(const Metric& metric, const std::vector<double>& theta_samples,
                         double target_theta, const std::vector<double>& t_samples);

}  // namespace geolgp

#endif  // GEOLGP_METRIC_HPP_
