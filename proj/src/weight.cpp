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

#include "geolgp/weight.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "geolgp/error.hpp"

namespace geolgp {

ConformalWeight ConformalWeight::constant(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    fail(ErrorCode::kInvalidArgument, "constant weight must be positive");
  }
  ConformalWeight w;
  w.family_ = Family::kConstant;
  w.a_ = a;
  w.k_min_ = a;
  w.k_max_ = a;
  return w;
}

ConformalWeight ConformalWeight::radial_bump(double a, double b, Vec2 center,
                                             double width) {
  if (!(width > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "radial-bump width must be positive");
  }
  if (!(a > 0.0) || !(a + b > 0.0)) {
    fail(ErrorCode::kInvalidArgument,
         "radial-bump weight must stay positive (a > 0 and a + b > 0)");
  }
  ConformalWeight w;
  w.family_ = Family::kRadialBump;
  w.a_ = a;
  w.b_ = b;
  w.center_ = center;
  w.width_ = width;
  w.k_min_ = std::min(a, a + b);
  w.k_max_ = std::max(a, a + b);
  // |D^2 exp(-r^2/w)| <= 2/w; |grad| peaks at r^2 = w/2.
  w.hessian_bound_ = 2.0 * std::abs(b) / width;
  w.gradient_bound_ = std::abs(b) * std::sqrt(2.0 / width) * std::exp(-0.5);
  return w;
}

ConformalWeight ConformalWeight::bilinear_grid(WeightSamples samples) {
  if (samples.nx < 2 || samples.ny < 2 || !(samples.h > 0.0)) {
    fail(ErrorCode::kInvalidArgument,
         "bilinear-grid weight needs nx, ny >= 2 and h > 0");
  }
  if (samples.values.size() !=
      static_cast<std::size_t>(samples.nx) * samples.ny) {
    fail(ErrorCode::kInvalidArgument,
         "bilinear-grid weight: expected nx*ny samples, got " +
             std::to_string(samples.values.size()));
  }
  for (double v : samples.values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorCode::kInvalidArgument,
           "bilinear-grid weight samples must be positive and finite");
    }
  }
  ConformalWeight w;
  w.family_ = Family::kBilinearGrid;
  w.samples_ = std::move(samples);
  const auto [lo, hi] = std::minmax_element(w.samples_.values.begin(),
                                            w.samples_.values.end());
  w.k_min_ = *lo;
  w.k_max_ = *hi;
  w.valid_box_ = {{w.samples_.x0, w.samples_.y0},
                  {w.samples_.x0 + (w.samples_.nx - 1) * w.samples_.h,
                   w.samples_.y0 + (w.samples_.ny - 1) * w.samples_.h}};
  w.compute_grid_gradients();
  return w;
}

void ConformalWeight::compute_grid_gradients() {
  const int nx = samples_.nx;
  const int ny = samples_.ny;
  const double h = samples_.h;
  const auto& v = samples_.values;
  auto at = [&](int i, int j) { return v[static_cast<std::size_t>(j) * nx + i]; };
  grad_x_.assign(v.size(), 0.0);
  grad_y_.assign(v.size(), 0.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int il = std::max(i - 1, 0), ir = std::min(i + 1, nx - 1);
      const int jl = std::max(j - 1, 0), jr = std::min(j + 1, ny - 1);
      const std::size_t idx = static_cast<std::size_t>(j) * nx + i;
      grad_x_[idx] = (at(ir, j) - at(il, j)) / ((ir - il) * h);
      grad_y_[idx] = (at(i, jr) - at(i, jl)) / ((jr - jl) * h);
      gradient_bound_ = std::max(gradient_bound_, std::hypot(grad_x_[idx],
                                                             grad_y_[idx]));
    }
  }
  // Second differences give the Hessian estimate.
  double bound = 0.0;
  for (int j = 1; j + 1 < ny; ++j) {
    for (int i = 1; i + 1 < nx; ++i) {
      const double dxx = (at(i + 1, j) - 2 * at(i, j) + at(i - 1, j)) / (h * h);
      const double dyy = (at(i, j + 1) - 2 * at(i, j) + at(i, j - 1)) / (h * h);
      const double dxy = (at(i + 1, j + 1) - at(i + 1, j - 1) -
                          at(i - 1, j + 1) + at(i - 1, j - 1)) /
                         (4 * h * h);
      // Spectral norm of the symmetric 2x2 Hessian.
      const double mean = 0.5 * (dxx + dyy);
      const double rad = std::hypot(0.5 * (dxx - dyy), dxy);
      bound = std::max(bound, std::abs(mean) + rad);
    }
  }
  hessian_bound_ = bound;
}

ConformalWeight ConformalWeight::parse_csv(const std::string& text) {
  std::vector<double> numbers;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      first = false;
      if (line.find_first_of("abcdefghijklmnopqrstuvwxyz") != std::string::npos) {
        continue;  // header names
      }
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double value;
    while (ls >> value) numbers.push_back(value);
    if (!ls.eof()) {
      fail(ErrorCode::kIo, "weight csv: unparsable line '" + line + "'");
    }
  }
  if (numbers.size() < 5) fail(ErrorCode::kIo, "weight csv: missing header values");
  WeightSamples s;
  s.nx = static_cast<int>(numbers[0]);
  s.ny = static_cast<int>(numbers[1]);
  s.x0 = numbers[2];
  s.y0 = numbers[3];
  s.h = numbers[4];
  s.values.assign(numbers.begin() + 5, numbers.end());
  return bilinear_grid(std::move(s));
}

ConformalWeight ConformalWeight::load_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file) fail(ErrorCode::kIo, "cannot open weight csv '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_csv(buffer.str());
}

WeightSample ConformalWeight::eval_grid(Vec2 x) const {
  const auto& s = samples_;
  double fx = (x.x - s.x0) / s.h;
  double fy = (x.y - s.y0) / s.h;
  int i = std::clamp(static_cast<int>(std::floor(fx)), 0, s.nx - 2);
  int j = std::clamp(static_cast<int>(std::floor(fy)), 0, s.ny - 2);
  const double tx = fx - i;
  const double ty = fy - j;
  auto lerp2 = [&](const std::vector<double>& f) {
    const std::size_t i00 = static_cast<std::size_t>(j) * s.nx + i;
    const std::size_t i01 = i00 + s.nx;
    return (1 - ty) * ((1 - tx) * f[i00] + tx * f[i00 + 1]) +
           ty * ((1 - tx) * f[i01] + tx * f[i01 + 1]);
  };
  return {lerp2(s.values), {lerp2(grad_x_), lerp2(grad_y_)}};
}

WeightSample ConformalWeight::eval(Vec2 x) const {
  if (!std::isfinite(x.x) || !std::isfinite(x.y) || !valid_box_.contains(x)) {
    fail(ErrorCode::kDomain, "weight queried outside its valid region at (" +
                                 std::to_string(x.x) + ", " +
                                 std::to_string(x.y) + ")");
  }
  switch (family_) {
    case Family::kConstant:
      return {a_, {0.0, 0.0}};
    case Family::kRadialBump: {
      const Vec2 d = x - center_;
      const double e = b_ * std::exp(-dot(d, d) / width_);
      return {a_ + e, (-2.0 * e / width_) * d};
    }
    case Family::kBilinearGrid:
      return eval_grid(x);
  }
  return {};
}

double ConformalWeight::value(Vec2 x) const { return eval(x).value; }

ConformalWeight ConformalWeight::scaled(double c) const {
  if (!(c > 0.0)) fail(ErrorCode::kInvalidArgument, "scale must be positive");
  ConformalWeight w;
  switch (family_) {
    case Family::kConstant:
      w = constant(c * a_);
      break;
    case Family::kRadialBump:
      w = radial_bump(c * a_, c * b_, center_, width_);
      break;
    case Family::kBilinearGrid: {
      WeightSamples s = samples_;
      for (double& v : s.values) v *= c;
      w = bilinear_grid(std::move(s));
      break;
    }
  }
  w.valid_box_ = valid_box_;
  return w;
}

}  // namespace geolgp
