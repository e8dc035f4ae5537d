#pragma once

#include "mcpiso/density.hpp"
#include "mcpiso/numerics.hpp"

namespace mcpiso::localization {

/// Rotationally symmetric model space: rays of length ray_length emanate from
/// a pole, indexed by an angle set of total mass theta, and
/// m = theta-measure (x) w(t) dt. Every ray is a needle of the decomposition.
class RadialModel {
 public:
  // Throws PreconditionError when w is not an MCP(0,N) density on its rays.
  RadialModel(double theta, Density weight, RealDimension n,
              double ray_length = kHalfLine,
              const Tolerance& tol = kDefaultTolerance);

  double theta() const noexcept { return theta_; }
  const Density& weight() const noexcept { return weight_; }
  RealDimension n() const noexcept { return n_; }
  double ray_length() const noexcept { return ray_length_; }

  // m(B_r) about the pole.
  double ball_measure(double r) const;
  // Asymptotic volume ratio of the whole model (0 for finite rays).
  double avr() const;

 private:
  double theta_;
  Density weight_;
  RealDimension n_;
  double ray_length_;
};

// Normalized needle restricted to [0, T].
struct TruncatedNeedle {
  double T;
  Density normalized_density;
};

struct Disintegration {
  TruncatedNeedle needle;
  double quotient_mass;     // total mass of the quotient measure = m(B_R)
  double needle_ball_mass;  // normalized needle mass of B_r = m(B_r) / m(B_R)
};

/// Truncated, normalized needle decomposition of B_R for E = B_r, r <= R/4.
/// By symmetry every needle is the same, T = R.
Disintegration disintegrate_ball(const RadialModel& model, double r, double R);

/// |m(B_r) - quotient_mass * needle_ball_mass|.
double verify_disintegration(const RadialModel& model, double r, double R);

struct ChainReport {
  double R;
  double m_plus;                  // m^+(B_r) = theta w(r)
  double needle_integral;         // \int needle content of B_r dq
  double needle_profile_integral; // \int I_{0,N,T}(needle mass) dq
  double scaled_profile_bound;    // m(B_R) I_{0,N,R+2r}(m(B_r)/m(B_R))
  double avr_bound;               // (N w_N AVR)^{1/N} m(B_r)^{(N-1)/N}
  bool ordered;
};

/// Evaluates every line of the dimension-reduction chain
///   m^+(E) >= \int m_a^+(E) dq >= \int I_{0,N,T}(m_a(E)) dq
///          >= m(B_R) I_{0,N,R+diam E}(m(E)/m(B_R))
/// for E = B_r, plus the limit comparator m^+(E) >= avr_bound. `ordered`
/// holds when each of these inequalities holds up to abs_tol (scaled by the
/// larger side).
ChainReport dimension_reduction_chain(const RadialModel& model, double r, double R,
                                      const Tolerance& tol = kDefaultTolerance);

}  // namespace mcpiso::localization
