#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mcpiso/numerics.hpp"

namespace mcpiso {

struct ConstantDensity {
  double c;
};

// x -> c * x^p, p >= 0.
struct MonomialDensity {
  double c;
  double p;
};

struct MonomialPiece {
  double c;
  double p;
};

// Piece i lives on [b_{i-1}, b_i] with b_{-1} = 0 and b_n = +inf, so there is
// one more piece than breakpoints. Continuity at every breakpoint is enforced.
struct PiecewiseMonomialDensity {
  std::vector<double> breakpoints;
  std::vector<MonomialPiece> pieces;
};

// The extremal half-line density: constant up to the threshold
// (mass / (N w_N avr))^(1/N), then N w_N avr x^(N-1).
struct PaperSharpDensity {
  double avr;
  double mass;
  double n;
};

// Linear interpolation of non-negative samples on an increasing grid.
struct TabulatedDensity {
  std::vector<double> grid;
  std::vector<double> values;
};

// A monomial tail c * x^p valid on [start, inf).
struct MonomialTail {
  double c;
  double p;
  double start;
};

/// A non-negative continuous weight h on an interval anchored at 0.
///
/// Values are immutable; construction validates the family invariants and
/// throws DomainError on violation. Integrals are exact for every family
/// (closed-form antiderivatives for the monomial families, trapezoids for
/// tabulated data, which is exact under linear interpolation).
class Density {
 public:
  using Family = std::variant<ConstantDensity, MonomialDensity,
                              PiecewiseMonomialDensity, PaperSharpDensity,
                              TabulatedDensity>;

  explicit Density(Family family);

  static Density constant(double c) { return Density(ConstantDensity{c}); }
  static Density monomial(double c, double p) {
    return Density(MonomialDensity{c, p});
  }
  static Density paper_sharp(double avr, double mass, double n) {
    return Density(PaperSharpDensity{avr, mass, n});
  }

  const Family& family() const noexcept { return family_; }
  std::string kind() const;

  // True for the families checked algebraically (constant, monomial, sharp).
  bool is_closed_form_checkable() const noexcept;

  // [lo, hi] on which h can be evaluated; hi may be +inf.
  double domain_lo() const noexcept;
  double domain_hi() const noexcept;

  double operator()(double x) const;
  // \int_a^b h, a <= b, both inside the evaluation domain.
  double integral(double a, double b) const;

  // c * h as a density of the same family (c > 0).
  Density scaled(double c) const;

  // Monomial behaviour at infinity, absent for tabulated data.
  std::optional<MonomialTail> tail() const;

  // Points where h may fail to be smooth (piece joins, table nodes, the sharp
  // threshold).
  std::vector<double> breakpoints() const;

  // Threshold x* of the sharp density: (mass / (N w_N avr))^(1/N).
  double sharp_threshold() const;

 private:
  Family family_;
  // Cached parameters of the sharp family.
  double sharp_x_ = 0.0;
  double sharp_level_ = 0.0;
  double sharp_tail_c_ = 0.0;
};

enum class BoundSide { lower, upper };
enum class VerdictStatus { pass_exact, pass_sampled, fail };

std::string to_string(BoundSide side);
std::string to_string(VerdictStatus status);

/// A pair x0 < x1 at which a ratio bound is violated. lhs and rhs are the two
/// sides of the cross-multiplied inequality "lhs <= rhs"; a witness has lhs > rhs.
struct Witness {
  double x0;
  double x1;
  BoundSide side;
  double lhs;
  double rhs;
};

struct Verdict {
  VerdictStatus status;
  std::optional<Witness> witness;
  std::size_t samples_used = 0;

  bool passed() const noexcept { return status != VerdictStatus::fail; }
};

// Right endpoint value for the half-line [0, inf).
inline constexpr double kHalfLine = std::numeric_limits<double>::infinity();

struct CheckOptions {
  std::size_t resolution = 512;
};

/// Checks the MCP(0,N) ratio bounds for h on [0, D]:
///   ((D-x1)/(D-x0))^(N-1) <= h(x1)/h(x0) <= (x1/x0)^(N-1)     (D finite)
///   1 <= h(x1)/h(x0) <= (x1/x0)^(N-1)                         (D = inf)
/// for all 0 <= x0 < x1 <= D. Constant, monomial and sharp densities are
/// decided algebraically; the other families are swept over a deterministic
/// grid (uniform points plus every breakpoint) and the witness is the
/// lexicographically smallest violating grid pair.
///
/// A tabulated density on the half-line can only be refuted: if the sweep of
/// its table finds no violation a DomainError is thrown.
Verdict check_mcp_density(const Density& h, double D, RealDimension n,
                          const Tolerance& tol = kDefaultTolerance,
                          const CheckOptions& opts = {});

/// Smallest N in [n_lo, n_hi] for which the check passes (bracket width
/// abs_tol), or nullopt when n_hi already fails. For sampled families this is
/// the minimal dimension consistent with the sampled pairs.
std::optional<double> minimal_mcp_dimension(
    const Density& h, double D, double n_lo, double n_hi,
    const Tolerance& tol = kDefaultTolerance, const CheckOptions& opts = {});

namespace detail {

// Sample points used by the sweep of h on [lo, hi].
std::vector<double> sample_grid(const Density& h, double lo, double hi,
                                std::size_t resolution);

// Lexicographically first violating pair on the grid. D = inf selects the
// half-line bounds. The parallel and serial versions must agree exactly.
std::optional<Witness> sweep_pairs(const Density& h,
                                   const std::vector<double>& grid, double D,
                                   double n, double rel_tol);
std::optional<Witness> sweep_pairs_serial(const Density& h,
                                          const std::vector<double>& grid,
                                          double D, double n, double rel_tol);

}  // namespace detail
}  // namespace mcpiso
