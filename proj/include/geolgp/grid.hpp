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

#ifndef GEOLGP_GRID_HPP_
#define GEOLGP_GRID_HPP_

#include <cmath>
#include <vector>

#include "geolgp/geometry.hpp"

namespace geolgp {

class DomainBoundary;

// Uniform cell-centred grid. Cell (i, j) covers
// [origin.x + i h, origin.x + (i+1) h] x [origin.y + j h, origin.y + (j+1) h]
// and is stored at index j * nx + i.
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double h = 0.0;
  Vec2 origin;

  int size() const { return nx * ny; }
  int index(int i, int j) const { return j * nx + i; }
  Vec2 center(int i, int j) const {
    return {origin.x + (i + 0.5) * h, origin.y + (j + 0.5) * h};
  }
  Vec2 center(int idx) const { return center(idx % nx, idx / nx); }
  // Cell containing p; may be out of range.
  int cell_x(double x) const { return static_cast<int>(std::floor((x - origin.x) / h)); }
  int cell_y(double y) const { return static_cast<int>(std::floor((y - origin.y) / h)); }
  bool in_range(int i, int j) const { return i >= 0 && j >= 0 && i < nx && j < ny; }
  Box box() const { return {origin, {origin.x + nx * h, origin.y + ny * h}}; }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Grid covering the domain's bounding box with `pad` extra cells on each
// side. `n` is the number of cells across the longer side of the box.
GridSpec grid_for_domain(const DomainBoundary& domain, int n, int pad = 2);
// Same, with the spacing given directly.
GridSpec grid_for_domain_h(const DomainBoundary& domain, double h, int pad = 2);

struct ScalarGrid {
  GridSpec spec;
  std::vector<double> values;

  ScalarGrid() = default;
  explicit ScalarGrid(const GridSpec& s, double fill = 0.0)
      : spec(s), values(static_cast<std::size_t>(s.size()), fill) {}
  double& at(int i, int j) { return values[spec.index(i, j)]; }
  double at(int i, int j) const { return values[spec.index(i, j)]; }
};

struct VectorGrid {
  GridSpec spec;
  std::vector<Vec2> values;

  VectorGrid() = default;
  explicit VectorGrid(const GridSpec& s)
      : spec(s), values(static_cast<std::size_t>(s.size())) {}
  Vec2& at(int i, int j) { return values[spec.index(i, j)]; }
  Vec2 at(int i, int j) const { return values[spec.index(i, j)]; }
};

// Cells whose centre lies inside the domain.
std::vector<char> domain_mask(const GridSpec& spec, const DomainBoundary& domain);

}  // namespace geolgp

#endif  // GEOLGP_GRID_HPP_
