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

#include <algorithm>
#include <cmath>

#include "geolgp/metric.hpp"

namespace geolgp {

double GeodesicFan::initial_jacobian(std::size_t row) const {
  return tau[row] * dot(nu[row], normals[row]) / k_at_s[row];
}

GeodesicFan jacobian_fan(const Metric& metric, const std::vector<double>& theta_samples,
                         double target_theta, const std::vector<double>& t_samples) {
  const DomainBoundary& dom = metric.domain();
  const double diam = dom.diameter();
  GeodesicOptions fine = metric.options();
  fine.samples = 1025;
  fine.rel_tol = 1e-10;
  fine.steps_per_diameter = std::max(fine.steps_per_diameter, 2000);
  const Metric m(metric.weight(), dom, fine);

  GeodesicFan fan;
  fan.target = dom.point(target_theta);
  fan.t = t_samples;
  const double delta = 1e-4 * diam;
  std::vector<Vec2> ends;
  for (double th : theta_samples) {
    const double s = dom.arclength(th);
    if (distance(dom.point(th), fan.target) <= 1e-9 * diam) {
      fail(ErrorCode::kDegenerate, "fan arc point coincides with the target");
    }
    fan.s.push_back(s);
    fan.theta.push_back(th);
    ends.push_back(dom.point(dom.theta_at_arclength(s - delta)));
    ends.push_back(dom.point(th));
    ends.push_back(dom.point(dom.theta_at_arclength(s + delta)));
  }
  const std::vector<Geodesic> from_target = m.connect_from(fan.target, ends);
  const double dt = 1.0 / (fine.samples - 1);
  for (std::size_t r = 0; r < theta_samples.size(); ++r) {
    const Geodesic lo = from_target[3 * r].reversed();
    const Geodesic mid = from_target[3 * r + 1].reversed();
    const Geodesic hi = from_target[3 * r + 2].reversed();
    std::vector<double> row;
    for (double t : t_samples) {
      const Vec2 ds = (hi.position_at(t) - lo.position_at(t)) / (2.0 * delta);
      Vec2 dtv;
      if (t < dt) {
        dtv = (-3.0 * mid.position_at(t) + 4.0 * mid.position_at(t + dt) -
               mid.position_at(t + 2 * dt)) / (2.0 * dt);
      } else if (t > 1.0 - dt) {
        dtv = (3.0 * mid.position_at(t) - 4.0 * mid.position_at(t - dt) +
               mid.position_at(t - 2 * dt)) / (2.0 * dt);
      } else {
        dtv = (mid.position_at(t + dt) - mid.position_at(t - dt)) / (2.0 * dt);
      }
      row.push_back(cross(ds, dtv));
    }
    fan.jacobian.push_back(std::move(row));
    fan.nu.push_back(mid.start_direction);
    fan.normals.push_back(dom.inward_normal(theta_samples[r]));
    fan.tau.push_back(mid.weighted_length);
    fan.k_at_s.push_back(metric.weight().value(mid.start()));
  }
  return fan;
}

}  // namespace geolgp
