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

#include "geolgp/density.hpp"
#include "instances.hpp"

using namespace geolgp;

namespace {

struct Pipeline {
  std::vector<BoundaryPoint> sources, targets;
  CostMatrix cost;
  TransportPlan plan;
  RaySet rays;
};

Pipeline run(const Metric& m, std::vector<BoundaryPoint> s, std::vector<BoundaryPoint> t) {
  Pipeline p{std::move(s), std::move(t), {}, {}, {}};
  p.cost = cost_matrix(m, p.sources, p.targets);
  p.plan = solve_noncrossing(p.sources, p.targets, p.cost);
  p.rays = build_rays(m, p.plan, p.sources, p.targets, nullptr, 0.0);
  return p;
}

Pipeline diameter(const Metric& m) {
  return run(m, place_atoms(m.domain(), {{0, 1}}), place_atoms(m.domain(), {{kPi, 1}}));
}

double mass(const ScalarGrid& g) {
  double s = 0.0;
  for (double v : g.values) s += v;
  return s * g.spec.h * g.spec.h;
}

}  // namespace

TEST_CASE("traverse_segment: fractions tile the segment inside the right cells") {
  const GridSpec grid{10, 10, 0.1, {0, 0}};
  const Vec2 a{0.05, 0.13}, b{0.93, 0.71};
  double covered = 0.0, last = 0.0;
  traverse_segment(grid, a, b, [&](int cell, double t0, double t1) {
    CHECK(t0 == doctest::Approx(last));
    CHECK(t1 >= t0);
    covered += t1 - t0;
    last = t1;
    const Vec2 mid = a + 0.5 * (t0 + t1) * (b - a);
    CHECK(grid.index(grid.cell_x(mid.x), grid.cell_y(mid.y)) == cell);
  });
  CHECK(covered == doctest::Approx(1.0).epsilon(1e-12));
  try {
    traverse_segment(grid, a, {1.5, 0.5}, [](int, double, double) {});
    FAIL("expected kRayOutsideGrid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kRayOutsideGrid);
  }
}

TEST_CASE("traverse_segment: nearly horizontal segment on a grid line") {
  const auto disk = DomainBoundary::circle(1);
  const GridSpec grid = grid_for_domain(disk, 96);
  const Vec2 a{0.99, 5e-19}, b{0.98, 1e-18};
  double covered = 0.0;
  int calls = 0;
  traverse_segment(grid, a, b, [&](int, double t0, double t1) {
    CHECK(t0 >= 0.0);
    covered += t1 - t0;
    ++calls;
  });
  CHECK(covered == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(calls <= 2);
}

TEST_CASE("assemble_density: diameter pair has mass 2, or 2c for k = c") {
  const auto disk = DomainBoundary::circle(1);
  const GridSpec grid = grid_for_domain(disk, 128);
  for (double c : {1.0, 2.5}) {
    const Metric m(ConformalWeight::constant(c), disk);
    const auto p = diameter(m);
    const auto d = assemble_density(m.weight(), p.rays, grid);
    CHECK(std::abs(mass(d.sigma) - 2 * c) <= 1e-3 * c);
    CHECK(mass(d.sigma_plus) == doctest::Approx(c).epsilon(1e-3));
    for (int k = 0; k < grid.size(); ++k) {
      CHECK(d.sigma.values[k] >= 0.0);
      CHECK(d.sigma.values[k] == d.sigma_plus.values[k] + d.sigma_minus.values[k]);
    }
  }
}

TEST_CASE("assemble_density: split parameter extremes") {
  const auto disk = DomainBoundary::circle(1);
  const Metric m(ConformalWeight::constant(1), disk);
  const auto p = diameter(m);
  const GridSpec grid = grid_for_domain(disk, 64);
  const auto d0 = assemble_density(m.weight(), p.rays, grid, 0.0);
  const auto d1 = assemble_density(m.weight(), p.rays, grid, 1.0);
  CHECK(mass(d0.sigma_plus) == 0.0);
  CHECK(mass(d1.sigma_minus) == 0.0);
  CHECK(mass(d0.sigma_minus) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("assemble_density: mass equals plan cost on random instances") {
  const auto el = DomainBoundary::ellipse(1.2, 0.8);
  const GridSpec grid = grid_for_domain(el, 96);
  for (const auto& w : {ConformalWeight::radial_bump(1.5, -0.6, {0.1, 0}, 0.5),
                        instances::wavy_grid(el.bbox())}) {
    const Metric m(w, el);
    const auto inst = instances::random_atoms(el, 9, 11, 4);
    const auto p = run(m, inst.sources, inst.targets);
    const auto d = assemble_density(w, p.rays, grid);
    CHECK(std::abs(mass(d.sigma) - p.plan.total_cost) <= 1e-3 * p.plan.total_cost);
    const auto v = assemble_flow(w, p.rays, grid);
    for (int k = 0; k < grid.size(); ++k) {
      CHECK(norm(v.values[k]) <= d.sigma.values[k] * (1 + 1e-9) + 1e-12);
    }
  }
}

TEST_CASE("assemble_flow: single horizontal ray") {
  const auto disk = DomainBoundary::circle(1);
  const Metric m(ConformalWeight::constant(1), disk);
  const auto p = diameter(m);
  const GridSpec grid = grid_for_domain(disk, 64);
  const auto d = assemble_density(m.weight(), p.rays, grid);
  const auto v = assemble_flow(m.weight(), p.rays, grid);
  int touched = 0;
  for (int k = 0; k < grid.size(); ++k) {
    if (d.sigma.values[k] == 0.0) continue;
    ++touched;
    CHECK(v.values[k].x < 0.0);
    CHECK(std::abs(v.values[k].y) <= 1e-12);
    CHECK(norm(v.values[k]) == doctest::Approx(d.sigma.values[k]).epsilon(1e-9));
  }
  CHECK(touched > 0);
}

TEST_CASE("flow direction follows the negative potential gradient") {
  const auto disk = DomainBoundary::circle(1);
  const Metric m(ConformalWeight::constant(1), disk);
  const BoundaryDatum g({{0, kTwoPi, DatumPiece::Kind::kSinusoid, {0, 1, 1, 0}}}, disk);
  const auto [fp, fm] = split(tangential_derivative(g, disk));
  const auto p = run(m, place_atoms(disk, discretize(fp, 48)), place_atoms(disk, discretize(fm, 48)));
  const GridSpec grid = grid_for_domain(disk, 96);
  const auto pot = potential_from_plan(m, p.plan, p.sources, p.targets, p.cost, grid);
  const auto d = assemble_density(m.weight(), p.rays, grid);
  const auto v = assemble_flow(m.weight(), p.rays, grid);
  const auto al = flow_alignment(v, d.sigma, pot.grid, 0.1);
  CHECK(al.cells > 100);
  CHECK(al.p95_angle_deg <= 5.0);
  // Away from the atoms the c-transform is smooth and every cell aligns.
  ScalarGrid inner = d.sigma;
  for (int k = 0; k < grid.size(); ++k) {
    if (norm(grid.center(k)) > 0.8) inner.values[k] = 0.0;
  }
  const auto in = flow_alignment(v, inner, pot.grid, 0.1);
  CHECK(in.max_angle_deg <= 5.0);
}

TEST_CASE("divergence_residual: diameter pair decays under refinement") {
  const auto disk = DomainBoundary::circle(1);
  const Metric m(ConformalWeight::constant(1), disk);
  const auto p = diameter(m);
  double prev = INFINITY;
  for (int n : {64, 128, 256}) {
    const GridSpec grid = grid_for_domain(disk, n);
    const auto v = assemble_flow(m.weight(), p.rays, grid);
    const double r = divergence_residual(v, m.weight(), p.sources, p.targets, disk.bbox());
    CHECK(r < prev);
    if (n == 256) CHECK(r <= 0.02);
    prev = r;
  }
}

TEST_CASE("lp_norm: unit density on the unit square") {
  const GridSpec grid{16, 16, 1.0 / 16, {0, 0}};
  const ScalarGrid one(grid, 1.0);
  const auto big = DomainBoundary::circle(10);
  CHECK(lp_norm(one, 1, 0.0, big).norm == doctest::Approx(1.0));
  CHECK(lp_norm(one, 2, 0.0, big).norm == doctest::Approx(1.0));
  CHECK(lp_norm(one, INFINITY, 0.0, big).norm == 1.0);
  CHECK(lp_norm(one, 2, 0.0, big).collar_mass == 0.0);
}

TEST_CASE("lp_norm: collar mass vanishes and atomic data blow up in L2") {
  const auto disk = DomainBoundary::circle(1);
  const Metric m(ConformalWeight::constant(1), disk);
  const auto p = diameter(m);
  std::vector<double> collar, l2;
  for (int n : {32, 64, 128, 256}) {
    const GridSpec grid = grid_for_domain(disk, n);
    const auto d = assemble_density(m.weight(), p.rays, grid);
    const auto r = lp_norm(d.sigma, 2, 2 * grid.h, disk);
    collar.push_back(r.collar_mass);
    l2.push_back(r.norm);
  }
  for (std::size_t i = 1; i < collar.size(); ++i) {
    CHECK(collar[i] < collar[i - 1]);
    CHECK(l2[i] > l2[i - 1]);
  }
  // sigma ~ 1/h on a strip of width h: the L2 norm grows like h^(-1/2).
  CHECK(l2.back() / l2.front() == doctest::Approx(std::sqrt(8.0)).epsilon(0.2));
}
