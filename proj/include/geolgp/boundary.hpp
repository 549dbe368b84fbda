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

#ifndef GEOLGP_BOUNDARY_HPP_
#define GEOLGP_BOUNDARY_HPP_

#include <functional>
#include <memory>
#include <vector>

#include "geolgp/domain.hpp"
#include "geolgp/metric.hpp"

namespace geolgp {

// One analytic piece of the boundary datum on [from, to) in the boundary
// parameter theta.
//
//   kConstant       params {c}                      g = c
//   kAffine         params {c, slope}               g = c + slope * (s - s(from)),
//                                                   s the arclength
//   kSinusoid       params {c, A, w, p}             g = c + A sin(w theta + p)
//   kSinusoidPower  params {c, A, w, p, e}          g = c + A |sin(w theta + p)|^e
//   kPower          params {c, A, center, e}        g = c + A |theta - center|^e
struct DatumPiece {
  enum class Kind { kConstant, kAffine, kSinusoid, kSinusoidPower, kPower };
  double from = 0.0;
  double to = 0.0;
  Kind kind = Kind::kConstant;
  std::vector<double> params;
};

struct Jump {
  double at = 0.0;
  double height = 0.0;
};

// Piecewise-analytic boundary datum g. Jumps are the mismatches between
// consecutive pieces, height = g(at+) - g(at-).
class BoundaryDatum {
 public:
  BoundaryDatum(std::vector<DatumPiece> pieces, const DomainBoundary& domain);

  const std::vector<DatumPiece>& pieces() const { return pieces_; }
  const std::vector<Jump>& jumps() const { return jumps_; }

  // Right-continuous value g(theta+).
  double value(double theta) const;
  double left_limit(double theta) const;
  double right_limit(double theta) const { return value(theta); }
  // dg/dtheta away from piece ends and singular points.
  double derivative(double theta) const;

  double min_value() const { return min_; }
  double max_value() const { return max_; }
  double total_variation() const { return total_variation_; }

  // Index of the piece containing theta, and theta shifted into
  // [pieces.front().from, pieces.front().from + 2pi).
  std::size_t locate(double theta, double* shifted) const;
  double piece_value(std::size_t piece, double theta) const;
  double piece_derivative(std::size_t piece, double theta) const;

 private:
  std::vector<DatumPiece> pieces_;
  std::vector<double> arclength_from_;
  std::shared_ptr<const DomainBoundary> domain_;
  std::vector<Jump> jumps_;
  double min_ = 0.0;
  double max_ = 0.0;
  double total_variation_ = 0.0;
};

// Signed measure on the boundary: finitely many monotone segments of a
// datum plus atoms. A segment [from, to] of piece p with scale c carries
// the measure c * dg.
class BoundaryMeasure {
 public:
  struct Atom {
    double theta = 0.0;
    double mass = 0.0;
  };
  struct Segment {
    double from = 0.0;
    double to = 0.0;
    std::size_t piece = 0;
    double scale = 1.0;
    double mass = 0.0;  // scale * (g(to-) - g(from+))
  };

  BoundaryMeasure() = default;
  static BoundaryMeasure from_atoms(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Segment>& segments() const { return segments_; }

  double total_mass() const;
  double total_variation() const;
  bool is_nonnegative() const;
  bool is_atomic() const { return segments_.empty(); }

  // Density with respect to arclength at theta (atoms excluded).
  double density(double theta) const;
  // Mass of the part of segment i between its start and theta.
  double segment_cdf(std::size_t i, double theta) const;
  // Inverse of segment_cdf.
  double segment_quantile(std::size_t i, double mass) const;
  // Integral of phi(theta) against the measure.
  double integrate(const std::function<double(double)>& phi) const;
  // (integral of |density|^p ds)^(1/p), atoms ignored.
  double density_lp_norm(double p) const;

  const DomainBoundary* domain() const { return domain_.get(); }
  const BoundaryDatum* datum() const { return datum_.get(); }

 private:
  friend BoundaryMeasure tangential_derivative(const BoundaryDatum&, const DomainBoundary&);
  friend std::pair<BoundaryMeasure, BoundaryMeasure> split(const BoundaryMeasure&);

  std::shared_ptr<const BoundaryDatum> datum_;
  std::shared_ptr<const DomainBoundary> domain_;
  std::vector<Segment> segments_;
  std::vector<Atom> atoms_;
};

BoundaryMeasure tangential_derivative(const BoundaryDatum& g, const DomainBoundary& domain);
std::pair<BoundaryMeasure, BoundaryMeasure> split(const BoundaryMeasure& f);

// Equal-mass binning of every segment, atoms kept verbatim; bins are
// represented by atoms at their mass barycentres. Empty bins are dropped.
std::vector<BoundaryMeasure::Atom> discretize(const BoundaryMeasure& m, int n);

struct ConvexityReport {
  double min_nu_dot_n = 0.0;
  // Largest c with nu . n >= c tau over the sampled chords.
  double min_ratio = 0.0;
  int violations = 0;
  int pairs = 0;
  bool near_degenerate = false;
  bool passed() const { return violations == 0 && min_nu_dot_n > 0.0; }
};

inline constexpr double kDegeneracyThreshold = 1e-3;

ConvexityReport convexity_certificate(const Metric& metric, int samples);

}  // namespace geolgp

#endif  // GEOLGP_BOUNDARY_HPP_
