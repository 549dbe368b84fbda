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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "geolgp/metric.hpp"
#include "oracles.hpp"

using namespace geolgp;

namespace {

ConformalWeight tall_bump() { return ConformalWeight::radial_bump(1, 4, {0, 0}, 0.1); }

oracle::LatticeDijkstra lattice(const ConformalWeight& w, const DomainBoundary& d, double h) {
  return oracle::LatticeDijkstra([w](Vec2 p) { return w.value(p); },
                                 [d](Vec2 p) { return d.contains(p, 1e-12); },
                                 d.bbox().lo, d.bbox().hi, h);
}

}  // namespace

TEST_CASE("eval_weight: constant family") {
  const auto s = ConformalWeight::constant(2).eval({0.3, 0.3});
  CHECK(s.value == 2.0);
  CHECK(s.gradient.x == 0.0);
  CHECK(s.gradient.y == 0.0);
}

TEST_CASE("eval_weight: radial bump is symmetric at its center") {
  const auto s = ConformalWeight::radial_bump(1, 1, {0, 0}, 1).eval({0, 0});
  CHECK(s.value == doctest::Approx(2.0));
  CHECK(std::abs(s.gradient.x) < 1e-15);
  CHECK(std::abs(s.gradient.y) < 1e-15);
}

TEST_CASE("eval_weight: bilinear grid sampled from 1 + x^2") {
  WeightSamples ws;
  ws.nx = 41;
  ws.ny = 41;
  ws.x0 = -1;
  ws.y0 = -1;
  ws.h = 0.05;
  for (int j = 0; j < ws.ny; ++j) {
    for (int i = 0; i < ws.nx; ++i) {
      const double x = ws.x0 + i * ws.h;
      ws.values.push_back(1 + x * x);
    }
  }
  const auto w = ConformalWeight::bilinear_grid(ws);
  const auto s = w.eval({0.5, 0.0});
  CHECK(std::abs(s.value - 1.25) < 1e-6);
  CHECK(std::abs(s.gradient.x - 1.0) < 2 * ws.h);
  CHECK(std::abs(s.gradient.y) < 1e-9);
  CHECK(w.k_min() <= s.value);
  CHECK(s.value <= w.k_max());
}

TEST_CASE("eval_weight: bilinear grid from CSV text and out-of-range queries") {
  const auto w = ConformalWeight::parse_csv("nx,ny,x0,y0,h\n2,2,0,0,1\n1,2\n3,4\n");
  CHECK(w.value({0.5, 0.5}) == doctest::Approx(2.5));
  try {
    w.eval({2.0, 0.5});
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDomain);
  }
}

TEST_CASE("eval_weight: gradient agrees with centered differences to O(h^2)") {
  const auto w = ConformalWeight::radial_bump(1.5, -0.7, {0.2, -0.1}, 0.4);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 x{u(rng), u(rng)};
    const double e = 1e-4;
    const auto s = w.eval(x);
    const double gx = (w.value({x.x + e, x.y}) - w.value({x.x - e, x.y})) / (2 * e);
    const double gy = (w.value({x.x, x.y + e}) - w.value({x.x, x.y - e})) / (2 * e);
    CHECK(std::abs(gx - s.gradient.x) < 1e-6);
    CHECK(std::abs(gy - s.gradient.y) < 1e-6);
  }
}

TEST_CASE("shoot: Euclidean diameter and constant scaling") {
  const auto disk = DomainBoundary::circle(1);
  const Metric m(ConformalWeight::constant(1), disk);
  const auto g = m.shoot({-1, 0}, {1, 0});
  CHECK(distance(g.end(), {1, 0}) < 1e-9);
  CHECK(g.weighted_length == doctest::Approx(2.0).epsilon(1e-9));

  const Metric m3(ConformalWeight::constant(3), disk);
  const Vec2 dir = normalized(Vec2{0.8, 0.35});
  const auto a = m.shoot({-0.2, 0.1}, dir);
  const auto b = m3.shoot({-0.2, 0.1}, dir);
  CHECK(distance(a.end(), b.end()) < 1e-9);
  CHECK(b.weighted_length == doctest::Approx(3 * a.weighted_length).epsilon(1e-9));
}

TEST_CASE("shoot: rejects non-unit directions") {
  const Metric m(ConformalWeight::constant(1), DomainBoundary::circle(1));
  CHECK_THROWS_AS(m.shoot({0, 0}, {2, 0}), Error);
}

TEST_CASE("shoot: radial bump matches the lattice shortest path") {
  const auto disk = DomainBoundary::circle(1);
  const auto w = ConformalWeight::radial_bump(1, 1, {0, 0}, 1);
  const Metric m(w, disk);
  const auto g = m.shoot({-1, 0}, {1, 0});
  const double h = 1.0 / 64;
  auto dj = lattice(w, disk, h);
  dj.run({-1, 0});
  const auto path = dj.path_to(g.end());
  CHECK(oracle::hausdorff(g.points, path) <= 2 * h);
  CHECK(g.weighted_length <= dj.distance_to(g.end()) * (1 + 1e-9));
}

TEST_CASE("connect: trivial cases") {
  const auto disk = DomainBoundary::circle(1);
  const Metric m(ConformalWeight::constant(1), disk);
  const auto g = m.connect({1, 0}, {-1, 0});
  CHECK(g.weighted_length == doctest::Approx(2.0));
  const auto p = m.connect({0.3, 0.2}, {0.3, 0.2});
  CHECK(p.weighted_length == 0.0);
  CHECK(p.points.size() == 1);
}

TEST_CASE("connect: tall bump detours and matches the lattice oracle within 1%") {
  const auto disk = DomainBoundary::circle(1);
  const Metric m(tall_bump(), disk);
  const auto g = m.connect({1, 0}, {-1, 0});
  auto dj = lattice(tall_bump(), disk, 1.0 / 128);
  dj.run({1, 0});
  const double ref = dj.distance_to({-1, 0});
  CHECK(std::abs(g.weighted_length - ref) / ref < 0.01);
  CHECK(std::abs(g.position_at(0.5).y) > 0.3);
  CHECK(distance(g.start(), {1, 0}) < 1e-12);
  CHECK(distance(g.end(), {-1, 0}) < 1e-12);
  for (Vec2 p : g.points) CHECK(disk.contains(p, 1e-6));
}

TEST_CASE("connect: segment leaving a non-convex domain is a convexity violation") {
  std::vector<double> radii;
  for (int i = 0; i < 64; ++i) radii.push_back(1 + 0.35 * std::cos(2 * kTwoPi * i / 64));
  const auto peanut = DomainBoundary::polar(radii);
  const Metric m(ConformalWeight::constant(1), peanut);
  const Vec2 a = peanut.point(kPi / 2 - 0.5), b = peanut.point(kPi / 2 + 0.5);
  try {
    m.connect(a, b);
    FAIL("expected a convexity violation");
  } catch (const GeodesicError& e) {
    CHECK(e.code() == ErrorCode::kConvexityViolation);
    CHECK(e.best_candidate().points.size() > 1);
  }
}

TEST_CASE("distance: Euclidean and scaled constants") {
  const auto big = DomainBoundary::circle(6);
  CHECK(Metric(ConformalWeight::constant(1), big).distance({0, 0}, {3, 4}) ==
        doctest::Approx(5.0));
  CHECK(Metric(ConformalWeight::constant(2), big).distance({0, 0}, {3, 4}) ==
        doctest::Approx(10.0));
}

TEST_CASE("distance: bump weight matches the lattice oracle") {
  const auto disk = DomainBoundary::circle(1);
  const auto w = ConformalWeight::radial_bump(2, -1, {0.1, 0}, 0.5);
  const Metric m(w, disk);
  auto dj = lattice(w, disk, 1.0 / 128);
  dj.run({0.6, 0.5});
  for (Vec2 y : {Vec2{-0.7, 0.1}, Vec2{0.0, -0.9}, Vec2{-0.3, 0.6}}) {
    const double ref = dj.distance_to(y);
    CHECK(std::abs(m.distance({0.6, 0.5}, y) - ref) / ref < 0.01);
  }
}

TEST_CASE("metric properties: symmetry, triangle inequality, bounds, consistency") {
  const auto el = DomainBoundary::ellipse(1.2, 0.8);
  const auto w = ConformalWeight::radial_bump(2, -0.8, {0.1, 0}, 0.6);
  const Metric m(w, el);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> th(0, kTwoPi);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec2 x = el.point(th(rng)), y = el.point(th(rng)), z = 0.5 * el.point(th(rng));
    const double dxy = m.distance(x, y), dyx = m.distance(y, x);
    const double tol = 1e-4 * std::max(dxy, 1e-12);
    CHECK(std::abs(dxy - dyx) <= tol);
    CHECK(m.distance(x, z) <= dxy + m.distance(y, z) + tol);
    CHECK(w.k_min() * distance(x, y) <= dxy + 1e-12);
    CHECK(dxy <= w.k_max() * distance(x, y) + 1e-12);
    const auto g = m.connect(x, y);
    CHECK(g.weighted_length == doctest::Approx(dxy).epsilon(1e-12));
    CHECK(g.reversed().weighted_length == g.weighted_length);
    CHECK(g.reversed().start() == g.end());
  }
}

TEST_CASE("Euclidean reduction: connect returns straight segments") {
  const auto el = DomainBoundary::ellipse(1.0, 0.7);
  const Metric m(ConformalWeight::constant(1), el);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0, kTwoPi);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec2 x = el.point(th(rng)), y = el.point(th(rng));
    const auto g = m.connect(x, y);
    CHECK(oracle::directed_hausdorff(g.points, {x, y}) < 1e-12);
  }
}

TEST_CASE("connect_from agrees with pairwise connect") {
  const auto disk = DomainBoundary::circle(1);
  const Metric m(ConformalWeight::radial_bump(2, -1, {0, 0}, 0.5), disk);
  std::vector<Vec2> ys;
  for (int i = 1; i < 12; ++i) ys.push_back(disk.point(kTwoPi * i / 12));
  const auto fan = m.connect_from(disk.point(0), ys);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    CHECK(fan[j].weighted_length ==
          doctest::Approx(m.connect(disk.point(0), ys[j]).weighted_length).epsilon(1e-8));
  }
}

TEST_CASE("distance_field: Euclidean, zero at source, bump cross-validation") {
  const auto disk = DomainBoundary::circle(1);
  const GridSpec grid = grid_for_domain(disk, 96);
  const double h = grid.h;
  {
    const Metric m(ConformalWeight::constant(1), disk);
    const auto f = m.distance_field(Vec2{0, 0}, grid);
    const auto mask = domain_mask(grid, disk);
    double worst = 0.0;
    for (int c = 0; c < grid.size(); ++c) {
      if (!mask[c]) continue;
      CHECK(f.values[c] >= 0.0);
      worst = std::max(worst, std::abs(f.values[c] - norm(grid.center(c))));
    }
    CHECK(worst <= 2 * h);
    CHECK(f.at(grid.cell_x(0.0), grid.cell_y(0.0)) <= h);
  }
  {
    const auto w = tall_bump();
    const Metric m(w, disk);
    const Vec2 y{-1, 0};
    const auto f = m.distance_field(y, grid);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int trial = 0; trial < 20; ++trial) {
      const Vec2 z{u(rng), u(rng)};
      const int i = grid.cell_x(z.x), j = grid.cell_y(z.y);
      CHECK(std::abs(f.at(i, j) - m.distance(grid.center(i, j), y)) <= 3 * h * w.k_max());
    }
  }
}

TEST_CASE("jacobian_fan: Euclidean cone map") {
  const auto disk = DomainBoundary::circle(1);
  const Metric m(ConformalWeight::constant(1), disk);
  const std::vector<double> ts{0.0, 0.25, 0.5, 0.75, 0.9};
  const auto fan = jacobian_fan(m, {1.0, 2.0, 2.5, 4.0}, 0.0, ts);
  for (std::size_t r = 0; r < fan.s.size(); ++r) {
    const double j0 = fan.initial_jacobian(r);
    CHECK(j0 == doctest::Approx(fan.tau[r] * dot(fan.nu[r], fan.normals[r]) / fan.k_at_s[r]));
    for (std::size_t q = 0; q < ts.size(); ++q) {
      CHECK(fan.jacobian[r][q] == doctest::Approx((1 - ts[q]) * j0).epsilon(1e-5));
      CHECK(fan.jacobian[r][q] > 0.0);
    }
  }
}

TEST_CASE("jacobian_fan: t = 0 identity and positivity on a bump weight") {
  const auto disk = DomainBoundary::circle(1);
  const Metric m(ConformalWeight::radial_bump(1, 4, {0, 0}, 0.3), disk);
  const std::vector<double> ts{0.0, 0.3, 0.6, 0.9};
  const auto fan = jacobian_fan(m, {0.8, 2.0, 3.1, 4.5}, 0.0, ts);
  for (std::size_t r = 0; r < fan.s.size(); ++r) {
    CHECK(fan.jacobian[r][0] == doctest::Approx(fan.initial_jacobian(r)).epsilon(1e-4));
    for (std::size_t q = 0; q < ts.size(); ++q) CHECK(fan.jacobian[r][q] > 0.0);
  }
}

TEST_CASE("jacobian_fan: degenerate fan is an error") {
  const Metric m(ConformalWeight::constant(1), DomainBoundary::circle(1));
  CHECK_THROWS_AS(jacobian_fan(m, {0.0}, 0.0, {0.0, 0.5}), Error);
}
