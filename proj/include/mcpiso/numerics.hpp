#pragma once

#include <functional>

namespace mcpiso {

struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_iter = 10000;

  // Throws DomainError when a field breaks its invariant.
  void validate() const;
};

// Library-wide default. The CLI may replace it from MCP_ISO_TOL.
inline constexpr Tolerance kDefaultTolerance{};

// Real dimension parameter N > 1.
class RealDimension {
 public:
  explicit RealDimension(double n);
  double value() const noexcept { return n_; }
  operator double() const noexcept { return n_; }

 private:
  double n_;
};

namespace numerics {

/// Gamma function via the Lanczos approximation (g = 7, 9 terms), with the
/// reflection formula below 1/2. Relative error is a few ulps for moderate x.
double gamma(double x);

/// log Gamma for x > 0, used where Gamma itself would overflow.
double log_gamma(double x);

/// Volume of the unit ball in R^N, extended to real N > 0 through Gamma.
double unit_ball_volume(double n);

/// Adaptive Simpson quadrature with a Richardson correction (exact for
/// polynomials up to degree 5). The estimated error satisfies
/// err <= max(abs_tol, rel_tol * |result|); if the subdivision budget
/// (tol.max_iter) runs out an AccuracyError carrying the best estimate is
/// thrown.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Tolerance& tol = kDefaultTolerance);

/// Solves g(x) = target for strictly increasing g on [lo, hi] by bracketing
/// (Illinois false position with bisection fallback). Returns x with
/// |g(x) - target| <= abs_tol or a final bracket narrower than abs_tol.
///
/// Throws BracketError when target is outside [g(lo), g(hi)] and
/// PreconditionError when a coarse sample of g is not increasing.
double invert_monotone(const std::function<double(double)>& g, double target,
                       double lo, double hi,
                       const Tolerance& tol = kDefaultTolerance);

}  // namespace numerics
}  // namespace mcpiso
