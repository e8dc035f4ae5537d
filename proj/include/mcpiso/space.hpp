#pragma once

#include <cmath>
#include <vector>

#include "mcpiso/density.hpp"
#include "mcpiso/numerics.hpp"

namespace mcpiso {

/// ([0, D], |.|, h L^1) with D finite or +inf.
class WeightedInterval {
 public:
  WeightedInterval(double D, Density h);

  double D() const noexcept { return D_; }
  bool bounded() const noexcept { return std::isfinite(D_); }
  const Density& density() const noexcept { return h_; }
  double h(double x) const { return h_(x); }

 private:
  double D_;
  Density h_;
};

struct Interval {
  double lo;
  double hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint closed intervals, sorted. Overlapping or touching
/// intervals are merged on construction; degenerate [s, s] components are kept.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> intervals);

  const std::vector<Interval>& components() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  std::size_t size() const noexcept { return parts_.size(); }

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> parts_;
};

namespace space {

/// m(E) = \int_E h; DomainError when E leaves [0, D].
double measure(const WeightedInterval& X, const IntervalUnion& E);

/// Outer Minkowski content of an interval union: h at every endpoint that
/// lies in the interior of [0, D]. Endpoints on the boundary of the ambient
/// space cannot grow and contribute nothing.
double minkowski_content(const WeightedInterval& X, const IntervalUnion& E);

struct MinkowskiEstimate {
  double value;                    // quotient at the smallest eps
  std::vector<double> quotients;   // one per eps, in input order
  double extrapolated;             // Richardson limit of the last two quotients
};

/// (m(E^eps) - m(E)) / eps for each eps of a strictly decreasing sequence.
/// The increment is integrated over the added slivers directly, so there is
/// no cancellation between m(E^eps) and m(E).
MinkowskiEstimate minkowski_content_estimator(const WeightedInterval& X,
                                              const IntervalUnion& E,
                                              const std::vector<double>& eps);

std::vector<double> default_eps_sequence();

struct AvrResult {
  double value;
  bool certified;
};

/// m([0, r]) / (w_N r^N).
double volume_ratio(const WeightedInterval& X, RealDimension n, double r);

/// Asymptotic volume ratio with balls centred at 0. Certified (analytic) for
/// bounded spaces and monomial tails; otherwise volume_ratio at r_max, which
/// under Bishop-Gromov monotonicity is an upper bound.
AvrResult avr(const WeightedInterval& X, RealDimension n, double r_max = 1e6);

/// Checks r -> m([0, r]) / r^N is non-increasing on the given radii, up to
/// rel_tol. A failure carries the offending consecutive pair.
Verdict bishop_gromov_check(const WeightedInterval& X, RealDimension n,
                            const std::vector<double>& radii,
                            const Tolerance& tol = kDefaultTolerance);

struct SharpSpace {
  WeightedInterval space;
  IntervalUnion extremal_set;
  double threshold;
};

/// Half-line space with AVR = avr whose set [0, x*] of measure `mass` attains
/// equality in the MCP isoperimetric bound.
SharpSpace sharp_space(double avr, double mass, RealDimension n);

/// minkowski_content(extremal set) - avr_lower_bound(N, avr, mass).
double verify_sharpness(double avr, double mass, RealDimension n);

}  // namespace space
}  // namespace mcpiso
