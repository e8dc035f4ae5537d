#include "mcpiso/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mcpiso/errors.hpp"

namespace mcpiso::profile {
namespace {

void check_interior(double D, double x, const char* what) {
  if (!std::isfinite(D) || !(D > 0.0))
    throw DomainError(std::string(what) + ": D must be finite and positive");
  if (!(x > 0.0 && x < D))
    throw DomainError(std::string(what) + ": argument must lie in (0, D)");
}

// (1-xi)^{-(N-1)} - 1, accurate for small xi.
double inv_pow_minus_one(double n, double xi) {
  return std::expm1(-(n - 1.0) * std::log1p(-xi));
}

double f_unit(double n, double xi) {
  const double denom = inv_pow_minus_one(n, xi) + std::pow(xi, -(n - 1.0));
  return n / denom;
}

// v_{0,N,1}(xi) = (1 - (1-xi)^N) / (1 - (1-xi)^{N-1} + ((1-xi)/xi)^{N-1}).
double v_unit(double n, double xi) {
  const double l = std::log1p(-xi);
  const double num = -std::expm1(n * l);
  const double den = -std::expm1((n - 1.0) * l) + std::pow((1.0 - xi) / xi, n - 1.0);
  return num / den;
}

void check_nonneg(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0)
    throw DomainError(std::string(what) + " must be finite and >= 0");
}

}  // namespace

double eval_f(RealDimension n, double D, double x) {
  check_interior(D, x, "eval_f");
  return f_unit(n, x / D) / D;
}

double eval_v(RealDimension n, double D, double a) {
  check_interior(D, a, "eval_v");
  return v_unit(n, a / D);
}

double invert_v(RealDimension n, double D, double v, const Tolerance& tol) {
  if (!std::isfinite(D) || !(D > 0.0))
    throw DomainError("invert_v: D must be finite and positive");
  if (!(v > 0.0 && v < 1.0)) throw DomainError("invert_v: v must lie in (0, 1)");
  // Solve in xi = a / D on [eps, 1 - eps], away from the singular endpoints.
  constexpr double eps = 1e-14;
  const double nn = n;
  // v flattens near xi = 1, so a small residual in v says little about xi;
  // accept a residual only at rounding level and otherwise shrink the bracket.
  Tolerance inner = tol;
  inner.rel_tol = std::min(tol.rel_tol, 4.0 * std::numeric_limits<double>::epsilon());
  try {
    const double xi = numerics::invert_monotone(
        [nn](double t) { return v_unit(nn, t); }, v, eps, 1.0 - eps, inner);
    return xi * D;
  } catch (const BracketError& e) {
    throw Error(std::string("invert_v: internal bracketing failure: ") + e.what());
  }
}

ProfileResult profile_mcp(RealDimension n, double D, double v, const Tolerance& tol) {
  if (!std::isfinite(D) || !(D > 0.0))
    throw DomainError("profile_mcp: D must be finite and positive");
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("profile_mcp: v must lie in [0, 1]");
  if (v == 0.0) return {n, D, v, 0.0, 0.0, 0.0};
  if (v == 1.0) return {n, D, v, D, 0.0, 0.0};
  const double a = invert_v(n, D, v, tol);
  const double f = eval_f(n, D, a);
  return {n, D, v, a, f, f};
}

double expansion_leading_coefficient(RealDimension n) {
  return std::pow(n.value(), 1.0 / n.value());
}

double avr_lower_bound(RealDimension n, double avr, double mass) {
  check_nonneg(avr, "avr");
  check_nonneg(mass, "mass");
  const double nn = n;
  return std::pow(nn * numerics::unit_ball_volume(nn) * avr, 1.0 / nn) *
         std::pow(mass, (nn - 1.0) / nn);
}

double cd_lower_bound(RealDimension n, double avr, double mass) {
  check_nonneg(avr, "avr");
  check_nonneg(mass, "mass");
  const double nn = n;
  return nn * std::pow(numerics::unit_ball_volume(nn), 1.0 / nn) *
         std::pow(avr, 1.0 / nn) * std::pow(mass, (nn - 1.0) / nn);
}

}  // namespace mcpiso::profile
