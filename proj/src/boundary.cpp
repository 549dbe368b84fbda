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

#include "geolgp/boundary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace geolgp {
namespace {

constexpr std::array<double, 5> kNodes = {0.0, -0.5384693101056831, 0.5384693101056831,
                                          -0.9061798459386640, 0.9061798459386640};
constexpr std::array<double, 5> kWeights = {0.5688888888888889, 0.4786286704993665,
                                            0.4786286704993665, 0.2369268850561891,
                                            0.2369268850561891};

// Gauss-Legendre on `cells` equal subintervals of [a, b].
template <typename F>
double quadrature(F&& f, double a, double b, int cells) {
  const double w = (b - a) / cells;
  double acc = 0.0;
  for (int c = 0; c < cells; ++c) {
    const double mid = a + (c + 0.5) * w;
    for (std::size_t g = 0; g < kNodes.size(); ++g) {
      acc += kWeights[g] * f(mid + 0.5 * w * kNodes[g]);
    }
  }
  return 0.5 * w * acc;
}

std::size_t expected_params(DatumPiece::Kind k) {
  switch (k) {
    case DatumPiece::Kind::kConstant: return 1;
    case DatumPiece::Kind::kAffine: return 2;
    case DatumPiece::Kind::kSinusoid: return 4;
    case DatumPiece::Kind::kSinusoidPower: return 5;
    case DatumPiece::Kind::kPower: return 4;
  }
  return 0;
}

// Interior points of the piece where g may change monotonicity.
std::vector<double> critical_points(const DatumPiece& p) {
  std::vector<double> out;
  const auto& q = p.params;
  auto sinusoidal = [&](double step, double offset) {
    const double w = q[2], ph = q[3];
    if (w == 0.0) return;
    const double u0 = w * p.from + ph, u1 = w * p.to + ph;
    const double lo = std::min(u0, u1), hi = std::max(u0, u1);
    for (double m = std::ceil((lo - offset) / step); offset + m * step < hi; m += 1.0) {
      const double theta = (offset + m * step - ph) / w;
      if (theta > p.from && theta < p.to) out.push_back(theta);
    }
  };
  switch (p.kind) {
    case DatumPiece::Kind::kSinusoid: sinusoidal(kPi, 0.5 * kPi); break;
    case DatumPiece::Kind::kSinusoidPower: sinusoidal(0.5 * kPi, 0.0); break;
    case DatumPiece::Kind::kPower:
      if (q[2] > p.from && q[2] < p.to) out.push_back(q[2]);
      break;
    default: break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

BoundaryDatum::BoundaryDatum(std::vector<DatumPiece> pieces, const DomainBoundary& domain)
    : pieces_(std::move(pieces)), domain_(std::make_shared<DomainBoundary>(domain)) {
  if (pieces_.empty()) fail(ErrorCode::kInvalidArgument, "boundary datum needs a piece");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const DatumPiece& p = pieces_[i];
    if (!(p.to > p.from)) {
      fail(ErrorCode::kInvalidArgument, "piece " + std::to_string(i) + " has to <= from");
    }
    if (p.params.size() != expected_params(p.kind)) {
      fail(ErrorCode::kInvalidArgument,
           "piece " + std::to_string(i) + " has the wrong number of parameters");
    }
    for (double v : p.params) {
      if (!std::isfinite(v)) fail(ErrorCode::kInvalidArgument, "non-finite piece parameter");
    }
    if ((p.kind == DatumPiece::Kind::kSinusoidPower && !(p.params[4] > 0.0)) ||
        (p.kind == DatumPiece::Kind::kPower && !(p.params[3] > 0.0))) {
      fail(ErrorCode::kInvalidArgument, "piece exponent must be positive");
    }
    if (i + 1 < pieces_.size() && std::abs(pieces_[i + 1].from - p.to) > 1e-12) {
      fail(ErrorCode::kInvalidArgument, "pieces must tile the parameter circle");
    }
    arclength_from_.push_back(domain_->arclength(p.from));
  }
  if (std::abs(pieces_.back().to - pieces_.front().from - kTwoPi) > 1e-9) {
    fail(ErrorCode::kInvalidArgument, "pieces must cover exactly one turn");
  }

  const std::size_t n = pieces_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    const double before = i == 0 ? piece_value(prev, pieces_[prev].to)
                                 : piece_value(prev, pieces_[i].from);
    const double height = piece_value(i, pieces_[i].from) - before;
    if (std::abs(height) > 1e-13) jumps_.push_back({wrap_angle(pieces_[i].from), height});
  }

  min_ = INFINITY;
  max_ = -INFINITY;
  total_variation_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> pts{pieces_[i].from};
    for (double c : critical_points(pieces_[i])) pts.push_back(c);
    pts.push_back(pieces_[i].to);
    for (std::size_t a = 0; a + 1 < pts.size(); ++a) {
      const double ga = piece_value(i, pts[a]), gb = piece_value(i, pts[a + 1]);
      total_variation_ += std::abs(gb - ga);
      min_ = std::min({min_, ga, gb});
      max_ = std::max({max_, ga, gb});
    }
  }
  for (const Jump& j : jumps_) total_variation_ += std::abs(j.height);
}

std::size_t BoundaryDatum::locate(double theta, double* shifted) const {
  const double base = pieces_.front().from;
  double s = base + wrap_angle(theta - base);
  if (s >= pieces_.back().to) s = base;
  const auto it = std::upper_bound(pieces_.begin(), pieces_.end(), s,
                                   [](double v, const DatumPiece& p) { return v < p.from; });
  const std::size_t idx = it == pieces_.begin() ? 0 : static_cast<std::size_t>(it - pieces_.begin()) - 1;
  if (shifted) *shifted = s;
  return idx;
}

double BoundaryDatum::piece_value(std::size_t i, double t) const {
  const DatumPiece& p = pieces_[i];
  const auto& q = p.params;
  switch (p.kind) {
    case DatumPiece::Kind::kConstant: return q[0];
    case DatumPiece::Kind::kAffine:
      return q[0] + q[1] * (domain_->arclength(t) - arclength_from_[i]);
    case DatumPiece::Kind::kSinusoid: return q[0] + q[1] * std::sin(q[2] * t + q[3]);
    case DatumPiece::Kind::kSinusoidPower:
      return q[0] + q[1] * std::pow(std::abs(std::sin(q[2] * t + q[3])), q[4]);
    case DatumPiece::Kind::kPower: return q[0] + q[1] * std::pow(std::abs(t - q[2]), q[3]);
  }
  return 0.0;
}

double BoundaryDatum::piece_derivative(std::size_t i, double t) const {
  const DatumPiece& p = pieces_[i];
  const auto& q = p.params;
  switch (p.kind) {
    case DatumPiece::Kind::kConstant: return 0.0;
    case DatumPiece::Kind::kAffine: return q[1] * domain_->speed(t);
    case DatumPiece::Kind::kSinusoid: return q[1] * q[2] * std::cos(q[2] * t + q[3]);
    case DatumPiece::Kind::kSinusoidPower: {
      const double s = std::sin(q[2] * t + q[3]);
      if (s == 0.0) return q[4] > 1.0 ? 0.0 : INFINITY;
      return q[1] * q[4] * std::pow(std::abs(s), q[4] - 1.0) * (s > 0 ? 1.0 : -1.0) * q[2] *
             std::cos(q[2] * t + q[3]);
    }
    case DatumPiece::Kind::kPower: {
      const double d = t - q[2];
      if (d == 0.0) return q[3] > 1.0 ? 0.0 : INFINITY;
      return q[1] * q[3] * std::pow(std::abs(d), q[3] - 1.0) * (d > 0 ? 1.0 : -1.0);
    }
  }
  return 0.0;
}

double BoundaryDatum::value(double theta) const {
  double s = 0.0;
  const std::size_t i = locate(theta, &s);
  return piece_value(i, s);
}

double BoundaryDatum::left_limit(double theta) const {
  double s = 0.0;
  const std::size_t i = locate(theta, &s);
  if (std::abs(s - pieces_[i].from) <= 1e-13) {
    const std::size_t prev = (i + pieces_.size() - 1) % pieces_.size();
    return piece_value(prev, i == 0 ? pieces_[prev].to : pieces_[i].from);
  }
  return piece_value(i, s);
}

double BoundaryDatum::derivative(double theta) const {
  double s = 0.0;
  const std::size_t i = locate(theta, &s);
  return piece_derivative(i, s);
}

BoundaryMeasure BoundaryMeasure::from_atoms(std::vector<Atom> atoms) {
  BoundaryMeasure m;
  for (Atom& a : atoms) a.theta = wrap_angle(a.theta);
  m.atoms_ = std::move(atoms);
  return m;
}

double BoundaryMeasure::total_mass() const {
  double acc = 0.0;
  for (const Segment& s : segments_) acc += s.mass;
  for (const Atom& a : atoms_) acc += a.mass;
  return acc;
}

double BoundaryMeasure::total_variation() const {
  double acc = 0.0;
  for (const Segment& s : segments_) acc += std::abs(s.mass);
  for (const Atom& a : atoms_) acc += std::abs(a.mass);
  return acc;
}

bool BoundaryMeasure::is_nonnegative() const {
  for (const Segment& s : segments_) {
    if (s.mass < 0.0) return false;
  }
  for (const Atom& a : atoms_) {
    if (a.mass < 0.0) return false;
  }
  return true;
}

double BoundaryMeasure::density(double theta) const {
  if (segments_.empty()) return 0.0;
  double s = 0.0;
  datum_->locate(theta, &s);
  double acc = 0.0;
  for (const Segment& seg : segments_) {
    if (s >= seg.from && s < seg.to) {
      acc += seg.scale * datum_->piece_derivative(seg.piece, s) / domain_->speed(s);
    }
  }
  return acc;
}

double BoundaryMeasure::segment_cdf(std::size_t i, double theta) const {
  const Segment& seg = segments_[i];
  const double t = std::clamp(theta, seg.from, seg.to);
  const double v = seg.scale * (datum_->piece_value(seg.piece, t) -
                                datum_->piece_value(seg.piece, seg.from));
  return seg.mass >= 0.0 ? std::clamp(v, 0.0, seg.mass) : std::clamp(v, seg.mass, 0.0);
}

double BoundaryMeasure::segment_quantile(std::size_t i, double mass) const {
  const Segment& seg = segments_[i];
  double lo = seg.from, hi = seg.to;
  const bool up = seg.mass >= 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double c = segment_cdf(i, mid);
    if (up ? c < mass : c > mass) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double BoundaryMeasure::integrate(const std::function<double(double)>& phi) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& seg = segments_[i];
    const DatumPiece& piece = datum_->pieces()[seg.piece];
    double e = 1.0;
    if (piece.kind == DatumPiece::Kind::kPower) e = piece.params[3];
    if (piece.kind == DatumPiece::Kind::kSinusoidPower) e = piece.params[4];
    const bool cusp = e != std::floor(e);
    if (cusp) {
      // Substituting the cumulative mass keeps the singular derivative out.
      acc += quadrature([&](double m) { return phi(segment_quantile(i, m)); }, 0.0, seg.mass, 64);
    } else {
      acc += seg.scale * quadrature(
                             [&](double t) {
                               return phi(t) * datum_->piece_derivative(seg.piece, t);
                             },
                             seg.from, seg.to, 128);
    }
  }
  for (const Atom& a : atoms_) acc += a.mass * phi(a.theta);
  return acc;
}

double BoundaryMeasure::density_lp_norm(double p) const {
  if (std::isinf(p)) {
    double mx = 0.0;
    for (const Segment& seg : segments_) {
      for (int i = 0; i <= 2048; ++i) {
        const double t = seg.from + (seg.to - seg.from) * (i + 0.5) / 2049.0;
        mx = std::max(mx, std::abs(seg.scale * datum_->piece_derivative(seg.piece, t) /
                                   domain_->speed(t)));
      }
    }
    return mx;
  }
  double acc = 0.0;
  for (const Segment& seg : segments_) {
    acc += quadrature(
        [&](double t) {
          const double sp = domain_->speed(t);
          return std::pow(std::abs(datum_->piece_derivative(seg.piece, t)) / sp, p) * sp;
        },
        seg.from, seg.to, 256);
  }
  return std::pow(acc, 1.0 / p);
}

BoundaryMeasure tangential_derivative(const BoundaryDatum& g, const DomainBoundary& domain) {
  BoundaryMeasure m;
  m.datum_ = std::make_shared<BoundaryDatum>(g);
  m.domain_ = std::make_shared<DomainBoundary>(domain);
  const auto& pieces = g.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::vector<double> pts{pieces[i].from};
    for (double c : critical_points(pieces[i])) pts.push_back(c);
    pts.push_back(pieces[i].to);
    for (std::size_t a = 0; a + 1 < pts.size(); ++a) {
      const double inc = g.piece_value(i, pts[a + 1]) - g.piece_value(i, pts[a]);
      if (std::abs(inc) <= 1e-15) continue;
      m.segments_.push_back({pts[a], pts[a + 1], i, 1.0, inc});
    }
  }
  for (const Jump& j : g.jumps()) m.atoms_.push_back({j.at, j.height});
  return m;
}

std::pair<BoundaryMeasure, BoundaryMeasure> split(const BoundaryMeasure& f) {
  BoundaryMeasure plus, minus;
  plus.datum_ = minus.datum_ = f.datum_;
  plus.domain_ = minus.domain_ = f.domain_;
  for (const auto& s : f.segments_) {
    if (s.mass > 0.0) {
      plus.segments_.push_back(s);
    } else if (s.mass < 0.0) {
      BoundaryMeasure::Segment r = s;
      r.scale = -s.scale;
      r.mass = -s.mass;
      minus.segments_.push_back(r);
    }
  }
  for (const auto& a : f.atoms_) {
    if (a.mass > 0.0) plus.atoms_.push_back(a);
    if (a.mass < 0.0) minus.atoms_.push_back({a.theta, -a.mass});
  }
  const double mp = plus.total_mass(), mm = minus.total_mass();
  if (std::abs(mp - mm) > 1e-9 * std::max(1.0, mp)) {
    fail(ErrorCode::kUnbalanced, "positive and negative parts have different masses");
  }
  return {plus, minus};
}

std::vector<BoundaryMeasure::Atom> discretize(const BoundaryMeasure& m, int n) {
  if (!m.is_nonnegative()) fail(ErrorCode::kInvalidArgument, "discretize needs a nonnegative measure");
  const auto& atoms = m.atoms();
  const auto& segs = m.segments();
  if (n < static_cast<int>(atoms.size())) {
    fail(ErrorCode::kInvalidArgument, "atom budget below the number of intrinsic atoms");
  }
  std::vector<BoundaryMeasure::Atom> out;
  for (const auto& a : atoms) {
    if (a.mass > 0.0) out.push_back(a);
  }
  const int budget = n - static_cast<int>(atoms.size());
  double seg_mass = 0.0;
  for (const auto& s : segs) seg_mass += s.mass;
  std::vector<int> bins(segs.size(), 0);
  if (!segs.empty() && budget > 0 && seg_mass > 0.0) {
    const int ns = static_cast<int>(segs.size());
    const int base = budget >= ns ? 1 : 0;
    const int rest = budget - base * ns;
    std::vector<double> rem(segs.size());
    int used = 0;
    for (int i = 0; i < ns; ++i) {
      const double ideal = rest * segs[i].mass / seg_mass;
      bins[i] = base + static_cast<int>(std::floor(ideal));
      rem[i] = ideal - std::floor(ideal);
      used += bins[i];
    }
    std::vector<int> order(ns);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return rem[a] > rem[b]; });
    for (int k = 0; used < budget; ++k, ++used) ++bins[order[k % ns]];
  } else if (!segs.empty() && seg_mass > 0.0) {
    fail(ErrorCode::kInvalidArgument, "atom budget leaves no bins for the density part");
  }
  const BoundaryDatum* g = m.datum();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& seg = segs[i];
    const int k = bins[i];
    if (k == 0 || seg.mass <= 0.0) continue;
    const double bin_mass = seg.mass / k;
    double a = seg.from;
    for (int b = 0; b < k; ++b) {
      const double e = b + 1 == k ? seg.to : m.segment_quantile(i, bin_mass * (b + 1));
      // Mass barycentre: integral of theta dg by parts.
      auto gv = [&](double t) { return g->piece_value(seg.piece, t); };
      const double moment =
          seg.scale * (e * gv(e) - a * gv(a) - quadrature(gv, a, e, 8));
      const double bar = std::clamp(moment / bin_mass, a, e);
      out.push_back({wrap_angle(bar), bin_mass});
      a = e;
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.theta < y.theta; });
  return out;
}

ConvexityReport convexity_certificate(const Metric& metric, int samples) {
  if (samples < 3) fail(ErrorCode::kInvalidArgument, "certificate needs at least 3 samples");
  const DomainBoundary& dom = metric.domain();
  ConvexityReport rep;
  rep.min_nu_dot_n = INFINITY;
  rep.min_ratio = INFINITY;
  std::vector<Vec2> pts(samples);
  for (int i = 0; i < samples; ++i) pts[i] = dom.point(kTwoPi * i / samples);
  for (int i = 0; i < samples; ++i) {
    std::vector<Vec2> others;
    for (int j = 0; j < samples; ++j) {
      if (j != i) others.push_back(pts[j]);
    }
    std::vector<Geodesic> geos;
    std::vector<char> ok(others.size(), 1);
    try {
      geos = metric.connect_from(pts[i], others);
    } catch (const GeodesicError& e) {
      if (e.code() != ErrorCode::kConvexityViolation) throw;
      geos.resize(others.size());
      for (std::size_t j = 0; j < others.size(); ++j) {
        try {
          geos[j] = metric.connect(pts[i], others[j]);
        } catch (const GeodesicError& e2) {
          if (e2.code() != ErrorCode::kConvexityViolation) throw;
          ok[j] = 0;
        }
      }
    }
    const Vec2 n = dom.inward_normal(kTwoPi * i / samples);
    for (std::size_t j = 0; j < others.size(); ++j) {
      ++rep.pairs;
      if (!ok[j]) {
        ++rep.violations;
        continue;
      }
      const double nd = dot(geos[j].start_direction, n);
      if (nd <= 0.0) ++rep.violations;
      rep.min_nu_dot_n = std::min(rep.min_nu_dot_n, nd);
      rep.min_ratio = std::min(rep.min_ratio, nd / geos[j].weighted_length);
    }
  }
  rep.near_degenerate = rep.min_ratio < kDegeneracyThreshold;
  return rep;
}

}  // namespace geolgp
