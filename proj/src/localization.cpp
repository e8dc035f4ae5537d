#include "mcpiso/localization.hpp"

#include <algorithm>
#include <cmath>

#include "mcpiso/errors.hpp"
#include "mcpiso/profile.hpp"
#include "mcpiso/space.hpp"

namespace mcpiso::localization {

RadialModel::RadialModel(double theta, Density weight, RealDimension n,
                         double ray_length, const Tolerance& tol)
    : theta_(theta), weight_(std::move(weight)), n_(n), ray_length_(ray_length) {
  if (!std::isfinite(theta) || !(theta > 0.0))
    throw DomainError("radial model: theta must be > 0");
  if (std::isnan(ray_length) || !(ray_length > 0.0))
    throw DomainError("radial model: ray_length must be > 0");
  if (!check_mcp_density(weight_, ray_length_, n_, tol).passed())
    throw PreconditionError("radial model: ray weight is not an MCP(0,N) density");
}

double RadialModel::ball_measure(double r) const {
  if (!(r >= 0.0) || r > ray_length_)
    throw DomainError("radial model: radius outside [0, ray_length]");
  return theta_ * weight_.integral(0.0, r);
}

double RadialModel::avr() const {
  const WeightedInterval line(ray_length_, weight_.scaled(theta_));
  const auto a = space::avr(line, n_);
  if (!a.certified) throw PreconditionError("radial model: AVR is not certified");
  return a.value;
}

namespace {

void check_radii(const RadialModel& model, double r, double R) {
  if (!(r > 0.0) || !std::isfinite(R) || !(R > 0.0))
    throw PreconditionError("localization: need 0 < r and finite R > 0");
  if (r > R / 4.0) throw PreconditionError("localization: requires r <= R/4");
  if (R > model.ray_length())
    throw PreconditionError("localization: requires R <= ray_length");
}

// Relative tolerance applied to an inequality lhs >= rhs.
bool holds(double lhs, double rhs, double abs_tol) {
  return lhs - rhs >= -abs_tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

}  // namespace

Disintegration disintegrate_ball(const RadialModel& model, double r, double R) {
  check_radii(model, r, R);
  const double ray_mass = model.weight().integral(0.0, R);
  if (!(ray_mass > 0.0)) throw PreconditionError("localization: m(B_R) = 0");
  return {{R, model.weight().scaled(1.0 / ray_mass)},
          model.theta() * ray_mass,
          model.weight().integral(0.0, r) / ray_mass};
}

double verify_disintegration(const RadialModel& model, double r, double R) {
  const auto d = disintegrate_ball(model, r, R);
  return std::abs(model.ball_measure(r) - d.quotient_mass * d.needle_ball_mass);
}

ChainReport dimension_reduction_chain(const RadialModel& model, double r, double R,
                                      const Tolerance& tol) {
  const auto d = disintegrate_ball(model, r, R);
  const RealDimension n = model.n();
  const double mass_e = model.ball_measure(r);

  ChainReport rep{};
  rep.R = R;
  rep.m_plus = model.theta() * model.weight()(r);
  // Inside a needle [0, T] the set [0, r] only grows at r < T.
  rep.needle_integral = d.quotient_mass * d.needle.normalized_density(r);
  rep.needle_profile_integral =
      d.quotient_mass * profile::profile_mcp(n, d.needle.T, d.needle_ball_mass, tol).profile;
  rep.scaled_profile_bound =
      d.quotient_mass *
      profile::profile_mcp(n, R + 2.0 * r, mass_e / d.quotient_mass, tol).profile;
  rep.avr_bound = profile::avr_lower_bound(n, model.avr(), mass_e);

  const double eps = tol.abs_tol;
  rep.ordered = holds(rep.m_plus, rep.needle_integral, eps) &&
                holds(rep.needle_integral, rep.needle_profile_integral, eps) &&
                holds(rep.needle_profile_integral, rep.scaled_profile_bound, eps) &&
                holds(rep.m_plus, rep.avr_bound, eps);
  return rep;
}

}  // namespace mcpiso::localization
