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

#include "geolgp/domain.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "geolgp/error.hpp"

namespace geolgp {
namespace {

constexpr int kArclengthCells = 1024;

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {
    0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
    0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {
    0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
    0.2369268850561891, 0.2369268850561891};

}  // namespace

DomainBoundary DomainBoundary::circle(double radius) {
  if (!(radius > 0.0)) fail(ErrorCode::kInvalidArgument, "circle radius must be positive");
  DomainBoundary d;
  d.kind_ = Kind::kCircle;
  d.a_ = d.b_ = radius;
  d.finish();
  return d;
}

DomainBoundary DomainBoundary::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "ellipse semi-axes must be positive");
  }
  DomainBoundary d;
  d.kind_ = Kind::kEllipse;
  d.a_ = a;
  d.b_ = b;
  d.finish();
  return d;
}

DomainBoundary DomainBoundary::polar(std::vector<double> radii) {
  if (radii.size() < 3) {
    fail(ErrorCode::kInvalidArgument, "polar boundary needs at least 3 radius samples");
  }
  for (double r : radii) {
    if (!(r > 0.0)) fail(ErrorCode::kInvalidArgument, "polar radii must be positive");
  }
  DomainBoundary d;
  d.kind_ = Kind::kPolar;
  d.radii_ = std::move(radii);
  const int m = static_cast<int>(d.radii_.size());
  const int kmax = m / 2;
  d.cos_coef_.assign(kmax + 1, 0.0);
  d.sin_coef_.assign(kmax + 1, 0.0);
  for (int k = 0; k <= kmax; ++k) {
    double c = 0.0, s = 0.0;
    for (int j = 0; j < m; ++j) {
      const double t = kTwoPi * j / m;
      c += d.radii_[j] * std::cos(k * t);
      s += d.radii_[j] * std::sin(k * t);
    }
    const bool nyquist = (m % 2 == 0) && k == kmax;
    const double scale = (k == 0 || nyquist) ? 1.0 / m : 2.0 / m;
    d.cos_coef_[k] = c * scale;
    d.sin_coef_[k] = nyquist ? 0.0 : s * scale;
  }
  d.finish();
  for (int i = 0; i < 720; ++i) {
    const double t = kTwoPi * i / 720;
    if (!(d.polar_radius(t, 0) > 0.0)) {
      fail(ErrorCode::kInvalidArgument, "polar radius interpolant is not positive");
    }
  }
  return d;
}

double DomainBoundary::polar_radius(double t, int order) const {
  double r = 0.0;
  for (std::size_t k = 0; k < cos_coef_.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double c = std::cos(kk * t), s = std::sin(kk * t);
    switch (order) {
      case 0: r += cos_coef_[k] * c + sin_coef_[k] * s; break;
      case 1: r += kk * (-cos_coef_[k] * s + sin_coef_[k] * c); break;
      default: r += -kk * kk * (cos_coef_[k] * c + sin_coef_[k] * s); break;
    }
  }
  return r;
}

Vec2 DomainBoundary::point(double t) const {
  switch (kind_) {
    case Kind::kCircle:
    case Kind::kEllipse:
      return {a_ * std::cos(t), b_ * std::sin(t)};
    case Kind::kPolar:
      return polar_radius(t, 0) * unit_from_angle(t);
  }
  return {};
}

Vec2 DomainBoundary::derivative(double t) const {
  switch (kind_) {
    case Kind::kCircle:
    case Kind::kEllipse:
      return {-a_ * std::sin(t), b_ * std::cos(t)};
    case Kind::kPolar: {
      const double r = polar_radius(t, 0), dr = polar_radius(t, 1);
      return dr * unit_from_angle(t) + r * rotate_ccw(unit_from_angle(t));
    }
  }
  return {};
}

Vec2 DomainBoundary::second_derivative(double t) const {
  switch (kind_) {
    case Kind::kCircle:
    case Kind::kEllipse:
      return {-a_ * std::cos(t), -b_ * std::sin(t)};
    case Kind::kPolar: {
      const double r = polar_radius(t, 0), dr = polar_radius(t, 1),
                   ddr = polar_radius(t, 2);
      const Vec2 e = unit_from_angle(t);
      return (ddr - r) * e + 2.0 * dr * rotate_ccw(e);
    }
  }
  return {};
}

double DomainBoundary::param_of(Vec2 p) const {
  if (kind_ == Kind::kEllipse) return wrap_angle(std::atan2(p.y / b_, p.x / a_));
  return wrap_angle(std::atan2(p.y, p.x));
}

double DomainBoundary::signed_distance_estimate(Vec2 p) const {
  switch (kind_) {
    case Kind::kCircle:
      return norm(p) - a_;
    case Kind::kEllipse: {
      const Vec2 q{p.x / a_, p.y / b_};
      const double rho = norm(q);
      if (rho < 1e-12) return -std::min(a_, b_);
      const Vec2 grad = Vec2{q.x / a_, q.y / b_} / rho;
      return (rho - 1.0) / norm(grad);
    }
    case Kind::kPolar: {
      const double r = norm(p);
      const double t = std::atan2(p.y, p.x);
      const double rb = polar_radius(t, 0);
      if (r < 1e-12) return -rb;
      const double dr = polar_radius(t, 1);
      return (r - rb) / std::sqrt(1.0 + (dr / r) * (dr / r));
    }
  }
  return 0.0;
}

double DomainBoundary::closest_param(Vec2 p) const {
  if (kind_ == Kind::kCircle && norm(p) > 0.0) return wrap_angle(std::atan2(p.y, p.x));
  const int kScan = static_cast<int>(scan_.size());
  double best_t = 0.0;
  double best = INFINITY;
  for (int i = 0; i < kScan; ++i) {
    const Vec2 q = scan_[i] - p;
    const double d = dot(q, q);
    if (d < best) {
      best = d;
      best_t = kTwoPi * i / kScan;
    }
  }
  // Newton on f(t) = |alpha(t) - p|^2 / 2, safeguarded to one scan cell.
  double t = best_t;
  const double lo = best_t - kTwoPi / kScan, hi = best_t + kTwoPi / kScan;
  for (int it = 0; it < 30; ++it) {
    const Vec2 r = point(t) - p;
    const Vec2 d1 = derivative(t);
    const double g = dot(r, d1);
    const double hss = dot(d1, d1) + dot(r, second_derivative(t));
    double step = hss > 0.0 ? g / hss : 0.0;
    double next = std::clamp(t - step, lo, hi);
    if (std::abs(next - t) < 1e-15) break;
    t = next;
  }
  return wrap_angle(t);
}

double DomainBoundary::distance_to_boundary(Vec2 p) const {
  if (kind_ == Kind::kCircle) return std::abs(norm(p) - a_);
  return distance(point(closest_param(p)), p);
}

void DomainBoundary::finish() {
  scan_.resize(256);
  for (std::size_t i = 0; i < scan_.size(); ++i) scan_[i] = point(kTwoPi * i / scan_.size());
  arclength_table_.assign(kArclengthCells + 1, 0.0);
  const double dt = kTwoPi / kArclengthCells;
  for (int i = 0; i < kArclengthCells; ++i) {
    const double mid = (i + 0.5) * dt;
    double acc = 0.0;
    for (std::size_t g = 0; g < kGaussNodes.size(); ++g) {
      acc += kGaussWeights[g] * speed(mid + 0.5 * dt * kGaussNodes[g]);
    }
    arclength_table_[i + 1] = arclength_table_[i] + 0.5 * dt * acc;
  }
  perimeter_ = arclength_table_.back();

  Vec2 lo{INFINITY, INFINITY}, hi{-INFINITY, -INFINITY};
  std::vector<Vec2> pts;
  constexpr int kSamples = 720;
  for (int i = 0; i < kSamples; ++i) {
    const Vec2 q = point(kTwoPi * i / kSamples);
    pts.push_back(q);
    lo = {std::min(lo.x, q.x), std::min(lo.y, q.y)};
    hi = {std::max(hi.x, q.x), std::max(hi.y, q.y)};
  }
  bbox_ = {lo, hi};
  switch (kind_) {
    case Kind::kCircle:
    case Kind::kEllipse:
      diameter_ = 2.0 * std::max(a_, b_);
      break;
    case Kind::kPolar: {
      double d = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          d = std::max(d, distance(pts[i], pts[j]));
        }
      }
      diameter_ = d;
      break;
    }
  }
}

double DomainBoundary::arclength_in_period(double theta) const {
  const double dt = kTwoPi / kArclengthCells;
  int i = std::clamp(static_cast<int>(theta / dt), 0, kArclengthCells - 1);
  const double a = i * dt;
  const double len = theta - a;
  if (len <= 0.0) return arclength_table_[i];
  double acc = 0.0;
  for (std::size_t g = 0; g < kGaussNodes.size(); ++g) {
    acc += kGaussWeights[g] * speed(a + 0.5 * len * (1.0 + kGaussNodes[g]));
  }
  return arclength_table_[i] + 0.5 * len * acc;
}

double DomainBoundary::arclength(double theta) const {
  const double periods = std::floor(theta / kTwoPi);
  const double rest = theta - periods * kTwoPi;
  return periods * perimeter_ + arclength_in_period(rest);
}

double DomainBoundary::theta_at_arclength(double s) const {
  const double periods = std::floor(s / perimeter_);
  double rest = s - periods * perimeter_;
  auto it = std::upper_bound(arclength_table_.begin(), arclength_table_.end(), rest);
  int i = std::clamp(static_cast<int>(it - arclength_table_.begin()) - 1, 0,
                     kArclengthCells - 1);
  const double dt = kTwoPi / kArclengthCells;
  double lo = i * dt, hi = (i + 1) * dt;
  double t = lo + dt * (rest - arclength_table_[i]) /
                      (arclength_table_[i + 1] - arclength_table_[i]);
  for (int it2 = 0; it2 < 50; ++it2) {
    const double f = arclength_in_period(t) - rest;
    if (std::abs(f) < 1e-15 * std::max(1.0, perimeter_)) break;
    if (f > 0) hi = t; else lo = t;
    double next = t - f / speed(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  return periods * kTwoPi + t;
}

}  // namespace geolgp
