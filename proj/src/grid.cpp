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

#include "geolgp/grid.hpp"

#include <algorithm>
#include <cmath>

#include "geolgp/domain.hpp"
#include "geolgp/error.hpp"

namespace geolgp {

GridSpec grid_for_domain(const DomainBoundary& domain, int n, int pad) {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "grid needs at least 2 cells");
  const Box b = domain.bbox();
  return grid_for_domain_h(domain, std::max(b.width(), b.height()) / n, pad);
}

GridSpec grid_for_domain_h(const DomainBoundary& domain, double h, int pad) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    fail(ErrorCode::kInvalidArgument, "grid spacing must be positive");
  }
  const Box b = domain.bbox();
  GridSpec g;
  g.h = h;
  g.nx = static_cast<int>(std::ceil(b.width() / h - 1e-9)) + 2 * pad;
  g.ny = static_cast<int>(std::ceil(b.height() / h - 1e-9)) + 2 * pad;
  const Vec2 mid = 0.5 * (b.lo + b.hi);
  g.origin = {mid.x - 0.5 * g.nx * h, mid.y - 0.5 * g.ny * h};
  return g;
}

std::vector<char> domain_mask(const GridSpec& spec, const DomainBoundary& domain) {
  std::vector<char> mask(spec.size(), 0);
  for (int j = 0; j < spec.ny; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      mask[spec.index(i, j)] = domain.contains(spec.center(i, j)) ? 1 : 0;
    }
  }
  return mask;
}

}  // namespace geolgp
