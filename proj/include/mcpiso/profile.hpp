#pragma once

#include "mcpiso/numerics.hpp"

namespace mcpiso {

// A point (v, a, f(a), I) of the MCP(0,N) model profile on diameter D.
struct ProfileResult {
  double n;
  double D;
  double v;
  double a;
  double f_at_a;
  double profile;
};

namespace profile {

/// f_{0,N,D}(x) = ( \int_0^x ((D-y)/(D-x))^{N-1} dy + \int_x^D (y/x)^{N-1} dy )^{-1}
/// evaluated in closed form. Uses f_{0,N,D}(D xi) = f_{0,N,1}(xi) / D.
double eval_f(RealDimension n, double D, double x);

/// v_{0,N,D}(a) = f_{0,N,D}(a) (D^N - (D-a)^N) / (N (D-a)^{N-1}); this only
/// depends on a / D.
double eval_v(RealDimension n, double D, double a);

/// a_{0,N,D}(v): the inverse of eval_v on (0, D).
double invert_v(RealDimension n, double D, double v,
                const Tolerance& tol = kDefaultTolerance);

/// I^MCP_{0,N,D}(v) = f(a(v)), with I(0) = I(1) = 0.
ProfileResult profile_mcp(RealDimension n, double D, double v,
                          const Tolerance& tol = kDefaultTolerance);

/// N^{1/N}, the constant in I_{0,N,1}(v) ~ N^{1/N} v^{(N-1)/N} as v -> 0.
double expansion_leading_coefficient(RealDimension n);

/// (N w_N AVR)^{1/N} m^{(N-1)/N}: the sharp bound under MCP(0,N).
double avr_lower_bound(RealDimension n, double avr, double mass);

/// N w_N^{1/N} AVR^{1/N} m^{(N-1)/N}: the bound known under CD(0,N).
double cd_lower_bound(RealDimension n, double avr, double mass);

}  // namespace profile
}  // namespace mcpiso
