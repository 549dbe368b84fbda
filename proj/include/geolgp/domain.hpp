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

#ifndef GEOLGP_DOMAIN_HPP_
#define GEOLGP_DOMAIN_HPP_

#include <vector>

#include "geolgp/geometry.hpp"

namespace geolgp {

// Closed, simple, counterclockwise boundary curve alpha(theta), theta in
// [0, 2pi), of a star-shaped domain centred at the origin.
//
//   circle(R)          alpha = R (cos t, sin t)
//   ellipse(a, b)      alpha = (a cos t, b sin t)
//   polar(radii)       alpha = r(t) (cos t, sin t), r the trigonometric
//                      interpolant of equispaced radius samples
//
// The inward normal is the tangent rotated by +pi/2.
class DomainBoundary {
 public:
  enum class Kind { kCircle, kEllipse, kPolar };

  static DomainBoundary circle(double radius);
  static DomainBoundary ellipse(double a, double b);
  static DomainBoundary polar(std::vector<double> radii);

  Kind kind() const { return kind_; }

  Vec2 point(double theta) const;
  // d alpha / d theta
  Vec2 derivative(double theta) const;
  Vec2 second_derivative(double theta) const;
  double speed(double theta) const { return norm(derivative(theta)); }
  Vec2 unit_tangent(double theta) const { return normalized(derivative(theta)); }
  Vec2 inward_normal(double theta) const { return rotate_ccw(unit_tangent(theta)); }
  Vec2 outward_normal(double theta) const { return -inward_normal(theta); }

  // Boundary parameter of the ray from the origin through p.
  double param_of(Vec2 p) const;
  // Negative inside, positive outside, first-order accurate signed distance.
  double signed_distance_estimate(Vec2 p) const;
  bool contains(Vec2 p, double tol = 0.0) const {
    return signed_distance_estimate(p) <= tol;
  }
  // Parameter of the closest boundary point.
  double closest_param(Vec2 p) const;
  double distance_to_boundary(Vec2 p) const;

  // Euclidean arclength from theta = 0; extends periodically
  // (arclength(t + 2pi) = arclength(t) + perimeter()).
  double arclength(double theta) const;
  double theta_at_arclength(double s) const;
  double perimeter() const { return perimeter_; }

  Box bbox() const { return bbox_; }
  double diameter() const { return diameter_; }

  // Shape parameters, exposed for serialization.
  double radius() const { return a_; }
  double semi_a() const { return a_; }
  double semi_b() const { return b_; }
  const std::vector<double>& radii() const { return radii_; }

 private:
  DomainBoundary() = default;
  void finish();
  double polar_radius(double t, int order) const;
  double arclength_in_period(double theta) const;

  Kind kind_ = Kind::kCircle;
  double a_ = 1.0;
  double b_ = 1.0;
  std::vector<double> radii_;
  std::vector<double> cos_coef_;
  std::vector<double> sin_coef_;
  std::vector<double> arclength_table_;
  std::vector<Vec2> scan_;  // closest_param seeds
  double perimeter_ = 0.0;
  double diameter_ = 0.0;
  Box bbox_;
};

}  // namespace geolgp

#endif  // GEOLGP_DOMAIN_HPP_
