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

#include "geolgp/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "seed_graph.hpp"

namespace geolgp {
namespace {

struct State {
  Vec2 p;
  double phi = 0.0;
  double len = 0.0;
};

struct Deriv {
  Vec2 dp;
  double dphi = 0.0;
  double dlen = 0.0;
};

Deriv rhs(const ConformalWeight& w, const State& s) {
  const WeightSample ks = w.eval(s.p);
  const Vec2 e = unit_from_angle(s.phi);
  return {e, dot(ks.gradient, rotate_ccw(e)) / ks.value, ks.value};
}

State advance(const State& s, const Deriv& d, double h) {
  return {s.p + h * d.dp, s.phi + h * d.dphi, s.len + h * d.dlen};
}

State rk4(const ConformalWeight& w, const State& s, double h) {
  const Deriv k1 = rhs(w, s);
  const Deriv k2 = rhs(w, advance(s, k1, 0.5 * h));
  const Deriv k3 = rhs(w, advance(s, k2, 0.5 * h));
  const Deriv k4 = rhs(w, advance(s, k3, h));
  return {s.p + (h / 6.0) * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp),
          s.phi + (h / 6.0) * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi),
          s.len + (h / 6.0) * (k1.dlen + 2.0 * k2.dlen + 2.0 * k3.dlen + k4.dlen)};
}

enum class Stop { kEvent, kBox, kTooLong };

struct Trace {
  std::vector<State> states;
  Stop stop = Stop::kEvent;
};

// Integrates until g crosses from <= 0 to > 0 and refines the crossing
// inside the last step. If the start is a root of g (`start_on_root`), the
// first step uses g(f) / f so that the trivial root is skipped.
Trace integrate(const ConformalWeight& w, Vec2 x, double phi0, double h,
                const Box& travel, double max_len,
                const std::function<double(const State&)>& g, bool start_on_root) {
  Trace tr;
  State cur{x, phi0, 0.0};
  tr.states.push_back(cur);
  // Starting on the positive side: wait for the first negative value.
  bool armed = start_on_root || g(cur) <= 0.0;
  const Box safe = travel.expanded(-1.01 * h);
  const int max_steps = static_cast<int>(max_len / h) + 2;
  for (int step = 0; step < max_steps; ++step) {
    if (!safe.contains(cur.p)) {
      tr.stop = Stop::kBox;
      return tr;
    }
    const bool first = start_on_root && step == 0;
    auto value = [&](double f) {
      const double gv = g(rk4(w, cur, f * h));
      return first ? gv / f : gv;
    };
    const State next = rk4(w, cur, h);
    const double gn = g(next);
    if (!armed) {
      armed = gn < 0.0;
    } else if (gn > 0.0) {
      double lo = first ? 1e-9 : 0.0;
      double glo = first ? value(lo) : g(cur);
      if (glo > 0.0) return tr;
      double f = 1.0;
      if (glo < 0.0) {
        std::uintmax_t iters = 60;
        auto r = boost::math::tools::toms748_solve(
            value, lo, 1.0, glo, gn,
            boost::math::tools::eps_tolerance<double>(50), iters);
        f = r.second;
      } else {
        f = lo;
      }
      if (f > 0.0) tr.states.push_back(rk4(w, cur, f * h));
      return tr;
    }
    cur = next;
    tr.states.push_back(cur);
  }
  tr.stop = Stop::kTooLong;
  return tr;
}

// Resamples a trace at n points of constant metric speed with cubic
// Hermite interpolation in the weighted length.
Geodesic resample(const ConformalWeight& w, const Trace& tr, int n) {
  Geodesic geo;
  const auto& st = tr.states;
  geo.start_direction = unit_from_angle(st.front().phi);
  geo.end_direction = unit_from_angle(st.back().phi);
  geo.weighted_length = st.back().len;
  if (st.size() < 2 || geo.weighted_length <= 0.0) {
    geo.points = {st.front().p};
    geo.weighted_length = 0.0;
    return geo;
  }
  std::vector<double> kv(st.size());
  for (std::size_t i = 0; i < st.size(); ++i) kv[i] = w.value(st[i].p);
  geo.points.resize(n);
  std::size_t seg = 0;
  for (int i = 0; i < n; ++i) {
    const double target = geo.weighted_length * i / (n - 1);
    while (seg + 2 < st.size() && st[seg + 1].len < target) ++seg;
    const State& a = st[seg];
    const State& b = st[seg + 1];
    const double dl = b.len - a.len;
    if (dl <= 0.0) {
      geo.points[i] = b.p;
      continue;
    }
    const double u = std::clamp((target - a.len) / dl, 0.0, 1.0);
    const Vec2 ma = unit_from_angle(a.phi) / kv[seg] * dl;
    const Vec2 mb = unit_from_angle(b.phi) / kv[seg + 1] * dl;
    const double u2 = u * u, u3 = u2 * u;
    geo.points[i] = (2 * u3 - 3 * u2 + 1) * a.p + (u3 - 2 * u2 + u) * ma +
                    (-2 * u3 + 3 * u2) * b.p + (u3 - u2) * mb;
  }
  geo.points.front() = st.front().p;
  geo.points.back() = st.back().p;
  return geo;
}

Geodesic straight(Vec2 x, Vec2 y, double k, int n) {
  Geodesic geo;
  geo.points.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    geo.points[i] = (1.0 - t) * x + t * y;
  }
  geo.points.back() = y;
  geo.weighted_length = k * geolgp::distance(x, y);
  geo.start_direction = geo.end_direction = normalized(y - x);
  return geo;
}

Geodesic single_point(Vec2 x) {
  Geodesic geo;
  geo.points = {x};
  return geo;
}

}  // namespace

Geodesic Geodesic::reversed() const {
  Geodesic r = *this;
  std::reverse(r.points.begin(), r.points.end());
  r.start_direction = -end_direction;
  r.end_direction = -start_direction;
  return r;
}

Vec2 Geodesic::position_at(double t) const {
  const int n = static_cast<int>(points.size());
  if (n == 1) return points[0];
  const double u = std::clamp(t, 0.0, 1.0) * (n - 1);
  const int i = std::min(static_cast<int>(u), n - 2);
  const double f = u - i;
  const Vec2 p1 = points[i], p2 = points[i + 1];
  const Vec2 p0 = i > 0 ? points[i - 1] : 2.0 * p1 - p2;
  const Vec2 p3 = i + 2 < n ? points[i + 2] : 2.0 * p2 - p1;
  const double f2 = f * f, f3 = f2 * f;
  return 0.5 * ((2.0 * p1) + f * (p2 - p0) + f2 * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) +
                f3 * (3.0 * p1 - p0 - 3.0 * p2 + p3));
}

// Shared implementation detail with access to Metric's private state.
struct MetricInternals {
  const Metric& m;
  SeedGraph::Run run;

  double boundary_tol() const { return 1e-9 * m.domain_.diameter(); }
  bool on_boundary(Vec2 p) const {
    return std::abs(m.domain_.signed_distance_estimate(p)) <= 1e-9 * m.domain_.diameter();
  }

  Trace to_boundary(Vec2 x, double phi, double h) const {
    const bool start_on_root = on_boundary(x);
    return integrate(m.weight_, x, phi, h, m.travel_box_, 8.0 * m.domain_.diameter(),
                     [this](const State& s) { return m.domain_.signed_distance_estimate(s.p); },
                     start_on_root);
  }

  struct Shot {
    double phi = 0.0;
    double miss = 0.0;
    bool usable = false;
    // Traces cut by the travel box still give a continuous miss.
    bool bracket = false;
    Trace trace;
  };

  Shot closest_approach(Vec2 x, Vec2 y, double phi) const {
    Shot s;
    s.phi = phi;
    s.trace = integrate(m.weight_, x, phi, m.step_, m.travel_box_, 8.0 * m.domain_.diameter(),
                        [y](const State& st) { return dot(st.p - y, unit_from_angle(st.phi)); },
                        false);
    const State& end = s.trace.states.back();
    s.miss = cross(unit_from_angle(end.phi), y - end.p);
    s.usable = s.trace.stop == Stop::kEvent && s.trace.states.size() > 1;
    s.bracket = s.trace.stop != Stop::kTooLong && s.trace.states.size() > 1;
    return s;
  }

  Geodesic connect_seeded(Vec2 x, Vec2 y, const SeedGraph::Path& seed) const;
  void check_inside(const Trace& tr, const Geodesic& geo) const;
};

void MetricInternals::check_inside(const Trace& tr, const Geodesic& geo) const {
  const double tol = 1e-6 * m.domain_.diameter();
  for (const State& s : tr.states) {
    if (m.domain_.signed_distance_estimate(s.p) > tol) {
      throw GeodesicError(ErrorCode::kConvexityViolation,
                          "geodesic leaves the domain; domain is not geodesically convex", geo);
    }
  }
}

Geodesic MetricInternals::connect_seeded(Vec2 x, Vec2 y, const SeedGraph::Path& seed) const {
  const double sep = geolgp::distance(x, y);
  const double tol = m.options_.rel_tol * sep;
  std::vector<Shot> accepted;
  Shot best_miss;
  best_miss.miss = INFINITY;

  auto consider = [&](Shot s) {
    if (std::abs(s.miss) < std::abs(best_miss.miss)) best_miss = s;
    if (!s.usable) return;
    if (geolgp::distance(s.trace.states.back().p, y) > tol) return;
    for (const Shot& a : accepted) {
      if (std::abs(wrap_difference(a.phi - s.phi)) < 1e-7) return;
    }
    accepted.push_back(std::move(s));
  };

  auto scan = [&](double center, double half, int count, bool full) {
    std::vector<Shot> shots;
    for (int i = 0; i < count; ++i) {
      const double phi = full ? center + kTwoPi * i / count
                              : center + half * (2.0 * i / (count - 1) - 1.0);
      shots.push_back(closest_approach(x, y, phi));
      if (shots.back().usable && std::abs(shots.back().miss) < std::abs(best_miss.miss)) {
        best_miss = shots.back();
      }
    }
    if (full) shots.push_back(shots.front()), shots.back().phi += kTwoPi;
    for (std::size_t i = 0; i + 1 < shots.size(); ++i) {
      const Shot& a = shots[i];
      const Shot& b = shots[i + 1];
      if (a.miss == 0.0 && a.usable) consider(a);
      if (!a.bracket || !b.bracket) continue;
      if ((a.miss < 0.0) == (b.miss < 0.0)) continue;
      std::uintmax_t iters = 60;
      auto f = [&](double phi) { return closest_approach(x, y, phi).miss; };
      try {
        auto r = boost::math::tools::toms748_solve(
            f, a.phi, b.phi, a.miss, b.miss,
            boost::math::tools::eps_tolerance<double>(48), iters);
        Shot lo = closest_approach(x, y, r.first);
        Shot hi = closest_approach(x, y, r.second);
        consider(std::abs(lo.miss) <= std::abs(hi.miss) ? std::move(lo) : std::move(hi));
      } catch (const boost::math::evaluation_error&) {
      }
    }
  };

  auto best_length = [&]() {
    double best = INFINITY;
    for (const Shot& s : accepted) best = std::min(best, s.trace.states.back().len);
    return best;
  };

  scan(seed.direction, 0.35, 13, false);
  if (accepted.empty() || best_length() > 1.03 * seed.length) {
    scan(seed.direction, 0.0, 96, true);
  }
  if (accepted.empty()) {
    Geodesic cand = best_miss.trace.states.empty()
                        ? Geodesic{{x, y}, INFINITY, {}, {}, false}
                        : resample(m.weight_, best_miss.trace, m.options_.samples);
    throw GeodesicError(ErrorCode::kNoConvergence, "geodesic angle search did not converge",
                        cand);
  }
  std::sort(accepted.begin(), accepted.end(), [](const Shot& a, const Shot& b) {
    return a.trace.states.back().len < b.trace.states.back().len;
  });
  const Shot& win = accepted.front();
  Geodesic geo = resample(m.weight_, win.trace, m.options_.samples);
  geo.points.back() = y;
  const double len = win.trace.states.back().len;
  for (std::size_t i = 1; i < accepted.size(); ++i) {
    const double other = accepted[i].trace.states.back().len;
    if (other - len <= std::max(1e-9, 10.0 * m.options_.rel_tol) * len) geo.ambiguous = true;
  }
  check_inside(win.trace, geo);
  return geo;
}

Metric::Metric(ConformalWeight weight, DomainBoundary domain, GeodesicOptions options)
    : weight_(std::move(weight)), domain_(std::move(domain)), options_(options) {
  if (options_.samples < 2) fail(ErrorCode::kInvalidArgument, "geodesic needs >= 2 samples");
  if (options_.steps_per_diameter < 8) {
    fail(ErrorCode::kInvalidArgument, "steps_per_diameter too small");
  }
  const double diam = domain_.diameter();
  step_ = diam / options_.steps_per_diameter;
  const Box wide = domain_.bbox().expanded(0.25 * diam);
  const Box& vb = weight_.valid_box();
  travel_box_ = {{std::max(wide.lo.x, vb.lo.x), std::max(wide.lo.y, vb.lo.y)},
                 {std::min(wide.hi.x, vb.hi.x), std::min(wide.hi.y, vb.hi.y)}};
  seed_ = std::make_shared<SeedGraph>(weight_, domain_, options_.seed_cells);
}

Geodesic Metric::shoot(Vec2 x, Vec2 direction, int step_count) const {
  if (std::abs(norm(direction) - 1.0) > 1e-9) {
    fail(ErrorCode::kInvalidArgument, "shooting direction must be a unit vector");
  }
  if (!domain_.contains(x, 1e-9 * domain_.diameter())) {
    fail(ErrorCode::kInvalidArgument, "shooting origin outside the domain");
  }
  const double h = step_count > 0 ? domain_.diameter() / step_count : step_;
  MetricInternals in{*this, {}};
  Trace tr = in.to_boundary(x, std::atan2(direction.y, direction.x), h);
  Geodesic geo = resample(weight_, tr, options_.samples);
  if (tr.stop != Stop::kEvent) {
    throw GeodesicError(ErrorCode::kNoConvergence, "shot did not reach the boundary", geo);
  }
  return geo;
}

Geodesic Metric::connect(Vec2 x, Vec2 y) const {
  return connect_from(x, {y}).front();
}

std::vector<Geodesic> Metric::connect_from(Vec2 x, const std::vector<Vec2>& ys) const {
  const double diam = domain_.diameter();
  const double in_tol = 1e-9 * diam;
  if (!domain_.contains(x, in_tol)) fail(ErrorCode::kInvalidArgument, "geodesic endpoint outside the domain");
  for (Vec2 y : ys) {
    if (!domain_.contains(y, in_tol)) fail(ErrorCode::kInvalidArgument, "geodesic endpoint outside the domain");
  }
  std::vector<Geodesic> out(ys.size());
  std::vector<char> done(ys.size(), 0);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    if (geolgp::distance(x, ys[j]) <= 1e-14 * diam) {
      out[j] = single_point(x);
      done[j] = 1;
    }
  }
  if (weight_.is_constant()) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (done[j]) continue;
      out[j] = straight(x, ys[j], weight_.a(), options_.samples);
      for (Vec2 p : out[j].points) {
        if (domain_.signed_distance_estimate(p) > 1e-6 * diam) {
          throw GeodesicError(ErrorCode::kConvexityViolation,
                              "segment leaves the domain; domain is not convex", out[j]);
        }
      }
      done[j] = 1;
    }
    return out;
  }

  MetricInternals in{*this, seed_->run(x)};
  std::vector<SeedGraph::Path> seeds(ys.size());
  for (std::size_t j = 0; j < ys.size(); ++j) {
    if (!done[j]) seeds[j] = seed_->path(in.run, x, ys[j]);
  }

  // Boundary-to-boundary fast path: a fan of shots from x covers the
  // boundary monotonically on geodesically convex domains.
  std::size_t pending = 0;
  bool all_boundary = in.on_boundary(x);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    if (done[j]) continue;
    ++pending;
    all_boundary = all_boundary && in.on_boundary(ys[j]);
  }
  if (pending >= 4 && all_boundary) {
    const double tx = domain_.closest_param(x);
    const Vec2 n = domain_.inward_normal(tx);
    const double base = std::atan2(n.y, n.x) - 0.5 * kPi;
    auto exit_offset = [&](double phi, Trace* keep) {
      Trace tr = in.to_boundary(x, phi, step_);
      if (tr.stop != Stop::kEvent) return std::numeric_limits<double>::quiet_NaN();
      double off = wrap_angle(domain_.param_of(tr.states.back().p) - tx);
      const bool first_half = phi - base < 0.5 * kPi;
      if (first_half && off > 1.5 * kPi) off -= kTwoPi;
      if (!first_half && off < 0.5 * kPi) off += kTwoPi;
      if (keep) *keep = std::move(tr);
      return off;
    };
    constexpr int kFan = 64;
    std::vector<double> fan_phi{base}, fan_off{0.0};
    bool monotone = true;
    for (int i = 0; i < kFan; ++i) {
      const double phi = base + kPi * (i + 0.5) / kFan;
      const double off = exit_offset(phi, nullptr);
      if (!std::isfinite(off) || off <= fan_off.back()) monotone = false;
      fan_phi.push_back(phi);
      fan_off.push_back(off);
    }
    fan_phi.push_back(base + kPi);
    fan_off.push_back(kTwoPi);
    if (monotone && fan_off[kFan] < kTwoPi) {
      for (std::size_t j = 0; j < ys.size(); ++j) {
        if (done[j]) continue;
        const Vec2 y = ys[j];
        const double target = wrap_angle(domain_.param_of(y) - tx);
        const auto it = std::upper_bound(fan_off.begin(), fan_off.end(), target);
        const std::size_t b = std::clamp<std::size_t>(it - fan_off.begin(), 1, fan_off.size() - 1);
        const std::size_t a = b - 1;
        auto f = [&](double phi) {
          if (phi <= base) return -target;
          if (phi >= base + kPi) return kTwoPi - target;
          const double off = exit_offset(phi, nullptr);
          if (!std::isfinite(off)) throw boost::math::evaluation_error("shot failed");
          return off - target;
        };
        Trace tr;
        try {
          std::uintmax_t iters = 80;
          auto r = boost::math::tools::toms748_solve(
              f, fan_phi[a], fan_phi[b], fan_off[a] - target, fan_off[b] - target,
              boost::math::tools::eps_tolerance<double>(52), iters);
          const double phi = 0.5 * (r.first + r.second);
          exit_offset(phi, &tr);
        } catch (const boost::math::evaluation_error&) {
          continue;
        }
        if (tr.states.size() < 2) continue;
        const double len = tr.states.back().len;
        if (geolgp::distance(tr.states.back().p, y) > options_.rel_tol * geolgp::distance(x, y)) continue;
        if (len > 1.03 * seeds[j].length) continue;
        Geodesic geo = resample(weight_, tr, options_.samples);
        geo.points.back() = y;
        out[j] = std::move(geo);
        done[j] = 1;
      }
    }
  }
  for (std::size_t j = 0; j < ys.size(); ++j) {
    if (!done[j]) out[j] = in.connect_seeded(x, ys[j], seeds[j]);
  }
  return out;
}

}  // namespace geolgp
