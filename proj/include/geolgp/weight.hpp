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

#ifndef GEOLGP_WEIGHT_HPP_
#define GEOLGP_WEIGHT_HPP_

#include <string>
#include <vector>

#include "geolgp/geometry.hpp"

namespace geolgp {

// Node samples of a weight on a regular lattice. Sample (i, j) sits at
// (x0 + i*h, y0 + j*h) and is stored at index j*nx + i.
struct WeightSamples {
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 0.0;
  std::vector<double> values;
};

struct WeightSample {
  double value = 0.0;
  Vec2 gradient;
};

// Positive conformal factor k of the metric k(x)|dx|.
//
// Three families are supported:
//   constant(a)                      k = a
//   radial-bump(a, b, center, width) k = a + b exp(-|x - center|^2 / width)
//   bilinear-grid(samples)           bilinear interpolation of node samples;
//                                    the gradient is the bilinear
//                                    interpolant of centered nodal
//                                    differences, so it is continuous.
//
// Queries outside valid_box() raise ErrorCode::kDomain.
class ConformalWeight {
 public:
  enum class Family { kConstant, kRadialBump, kBilinearGrid };

  static ConformalWeight constant(double a);
  static ConformalWeight radial_bump(double a, double b, Vec2 center,
                                     double width);
  static ConformalWeight bilinear_grid(WeightSamples samples);
  // CSV layout: optional header line "nx,ny,x0,y0,h", a line with those five
  // numbers, then nx*ny samples in row-major order.
  static ConformalWeight load_csv(const std::string& path);
  static ConformalWeight parse_csv(const std::string& text);

  Family family() const { return family_; }
  bool is_constant() const { return family_ == Family::kConstant; }

  WeightSample eval(Vec2 x) const;
  double value(Vec2 x) const;

  double k_min() const { return k_min_; }
  double k_max() const { return k_max_; }
  // Estimate of the sup norm of the Hessian of k.
  double hessian_bound() const { return hessian_bound_; }
  // Sup norm of the gradient (estimate for the grid family).
  double gradient_bound() const { return gradient_bound_; }

  const Box& valid_box() const { return valid_box_; }
  void set_valid_box(const Box& box) { valid_box_ = box; }

  // Same family with every value multiplied by c > 0.
  ConformalWeight scaled(double c) const;

  // Family parameters, exposed for serialization.
  double a() const { return a_; }
  double b() const { return b_; }
  Vec2 center() const { return center_; }
  double width() const { return width_; }
  const WeightSamples& samples() const { return samples_; }

 private:
  ConformalWeight() = default;
  void compute_grid_gradients();
  WeightSample eval_grid(Vec2 x) const;

  Family family_ = Family::kConstant;
  double a_ = 1.0;
  double b_ = 0.0;
  Vec2 center_;
  double width_ = 1.0;
  WeightSamples samples_;
  std::vector<double> grad_x_;
  std::vector<double> grad_y_;
  double k_min_ = 1.0;
  double k_max_ = 1.0;
  double hessian_bound_ = 0.0;
  double gradient_bound_ = 0.0;
  Box valid_box_;
};

}  // namespace geolgp

#endif  // GEOLGP_WEIGHT_HPP_
