#include "mcpiso/density.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <string>

#include "mcpiso/errors.hpp"

namespace mcpiso {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

double monomial_value(double c, double p, double x) {
  if (c == 0.0) return 0.0;
  if (p == 0.0) return c;
  return c * std::pow(x, p);
}

// \int_a^b c x^p dx without cancellation for short intervals.
double monomial_integral(double c, double p, double a, double b) {
  if (c == 0.0 || b <= a) return 0.0;
  const double q = p + 1.0;
  if (a > 0.0)
    return c * std::pow(a, q) * std::expm1(q * std::log1p((b - a) / a)) / q;
  return c * std::pow(b, q) / q;
}

}  // namespace

Density::Density(Family family) : family_(std::move(family)) {
  std::visit(
      Overloaded{
          [](const ConstantDensity& d) {
            require(finite_nonneg(d.c), "constant density: c must be >= 0");
          },
          [](const MonomialDensity& d) {
            require(finite_nonneg(d.c), "monomial density: c must be >= 0");
            require(finite_nonneg(d.p),
                    "monomial density: exponent p must be >= 0");
          },
          [](const PiecewiseMonomialDensity& d) {
            require(d.pieces.size() == d.breakpoints.size() + 1,
                    "piecewise_monomial density: need one more piece than "
                    "breakpoints");
            double prev = 0.0;
            for (double b : d.breakpoints) {
              require(std::isfinite(b) && b > prev,
                      "piecewise_monomial density: breakpoints must be "
                      "positive and strictly increasing");
              prev = b;
            }
            for (const auto& pc : d.pieces) {
              require(finite_nonneg(pc.c),
                      "piecewise_monomial density: c must be >= 0");
              require(std::isfinite(pc.p),
                      "piecewise_monomial density: p must be finite");
            }
            require(d.pieces.front().c == 0.0 || d.pieces.front().p >= 0.0,
                    "piecewise_monomial density: first piece must be bounded "
                    "at 0");
            for (std::size_t i = 0; i < d.breakpoints.size(); ++i) {
              const double b = d.breakpoints[i];
              const double l = monomial_value(d.pieces[i].c, d.pieces[i].p, b);
              const double r =
                  monomial_value(d.pieces[i + 1].c, d.pieces[i + 1].p, b);
              require(std::abs(l - r) <= 1e-12 * std::max(std::abs(l), std::abs(r)),
                      "piecewise_monomial density: discontinuous at breakpoint " +
                          std::to_string(b));
            }
          },
          [](const PaperSharpDensity& d) {
            require(std::isfinite(d.avr) && d.avr > 0.0,
                    "paper_sharp density: avr must be > 0");
            require(std::isfinite(d.mass) && d.mass > 0.0,
                    "paper_sharp density: mass must be > 0");
            require(std::isfinite(d.n) && d.n > 1.0,
                    "paper_sharp density: N must be > 1");
          },
          [](const TabulatedDensity& d) {
            require(d.grid.size() >= 2 && d.grid.size() == d.values.size(),
                    "tabulated density: grid and values need equal size >= 2");
            for (std::size_t i = 0; i < d.grid.size(); ++i) {
              require(std::isfinite(d.grid[i]),
                      "tabulated density: grid must be finite");
              require(i == 0 || d.grid[i] > d.grid[i - 1],
                      "tabulated density: grid must be strictly increasing");
              require(finite_nonneg(d.values[i]),
                      "tabulated density: values must be >= 0");
            }
            require(d.grid.front() >= 0.0,
                    "tabulated density: grid must lie in [0, inf)");
          },
      },
      family_);

  if (const auto* s = std::get_if<PaperSharpDensity>(&family_)) {
    const double k = s->n * numerics::unit_ball_volume(s->n) * s->avr;
    sharp_tail_c_ = k;
    sharp_x_ = std::pow(s->mass / k, 1.0 / s->n);
    sharp_level_ = std::pow(k, 1.0 / s->n) * std::pow(s->mass, (s->n - 1.0) / s->n);
  }
}

std::string Density::kind() const {
  return std::visit(Overloaded{
                        [](const ConstantDensity&) { return "constant"; },
                        [](const MonomialDensity&) { return "monomial"; },
                        [](const PiecewiseMonomialDensity&) {
                          return "piecewise_monomial";
                        },
                        [](const PaperSharpDensity&) { return "paper_sharp"; },
                        [](const TabulatedDensity&) { return "tabulated"; },
                    },
                    family_);
}

bool Density::is_closed_form_checkable() const noexcept {
  return std::holds_alternative<ConstantDensity>(family_) ||
         std::holds_alternative<MonomialDensity>(family_) ||
         std::holds_alternative<PaperSharpDensity>(family_);
}

double Density::domain_lo() const noexcept {
  if (const auto* t = std::get_if<TabulatedDensity>(&family_))
    return t->grid.front();
  return 0.0;
}

double Density::domain_hi() const noexcept {
  if (const auto* t = std::get_if<TabulatedDensity>(&family_))
    return t->grid.back();
  return kHalfLine;
}

double Density::operator()(double x) const {
  if (!(x >= domain_lo() && x <= domain_hi()))
    throw DomainError("density evaluated outside its domain at x = " +
                      std::to_string(x));
  return std::visit(
      Overloaded{
          [](const ConstantDensity& d) { return d.c; },
          [x](const MonomialDensity& d) { return monomial_value(d.c, d.p, x); },
          [x](const PiecewiseMonomialDensity& d) {
            const auto it =
                std::lower_bound(d.breakpoints.begin(), d.breakpoints.end(), x);
            const auto& pc = d.pieces[static_cast<std::size_t>(it - d.breakpoints.begin())];
            return monomial_value(pc.c, pc.p, x);
          },
          [this, x](const PaperSharpDensity& d) {
            if (x <= sharp_x_) return sharp_level_;
            return monomial_value(sharp_tail_c_, d.n - 1.0, x);
          },
          [x](const TabulatedDensity& d) {
            const auto it = std::upper_bound(d.grid.begin(), d.grid.end(), x);
            if (it == d.grid.end()) return d.values.back();
            const auto i = static_cast<std::size_t>(it - d.grid.begin());
            const double t = (x - d.grid[i - 1]) / (d.grid[i] - d.grid[i - 1]);
            return d.values[i - 1] + t * (d.values[i] - d.values[i - 1]);
          },
      },
      family_);
}

double Density::integral(double a, double b) const {
  if (!(a <= b)) throw DomainError("density integral requires a <= b");
  if (!(a >= domain_lo() && b <= domain_hi()))
    throw DomainError("density integrated outside its domain");
  if (a == b) return 0.0;
  return std::visit(
      Overloaded{
          [=](const ConstantDensity& d) { return d.c * (b - a); },
          [=](const MonomialDensity& d) {
            return monomial_integral(d.c, d.p, a, b);
          },
          [=](const PiecewiseMonomialDensity& d) {
            double sum = 0.0;
            double left = 0.0;
            for (std::size_t i = 0; i < d.pieces.size(); ++i) {
              const double right =
                  i < d.breakpoints.size() ? d.breakpoints[i] : kHalfLine;
              const double lo = std::max(a, left);
              const double hi = std::min(b, right);
              if (lo < hi) sum += monomial_integral(d.pieces[i].c, d.pieces[i].p, lo, hi);
              if (right >= b) break;
              left = right;
            }
            return sum;
          },
          [=, this](const PaperSharpDensity& d) {
            double sum = 0.0;
            if (a < sharp_x_) sum += sharp_level_ * (std::min(b, sharp_x_) - a);
            if (b > sharp_x_)
              sum += monomial_integral(sharp_tail_c_, d.n - 1.0,
                                       std::max(a, sharp_x_), b);
            return sum;
          },
          [=, this](const TabulatedDensity& d) {
            double sum = 0.0;
            for (std::size_t i = 1; i < d.grid.size(); ++i) {
              const double lo = std::max(a, d.grid[i - 1]);
              const double hi = std::min(b, d.grid[i]);
              if (lo < hi) sum += 0.5 * (hi - lo) * ((*this)(lo) + (*this)(hi));
              if (d.grid[i] >= b) break;
            }
            return sum;
          },
      },
      family_);
}

Density Density::scaled(double c) const {
  if (!(std::isfinite(c) && c > 0.0))
    throw DomainError("density scale factor must be positive");
  return std::visit(
      Overloaded{
          [c](const ConstantDensity& d) { return Density(ConstantDensity{c * d.c}); },
          [c](const MonomialDensity& d) {
            return Density(MonomialDensity{c * d.c, d.p});
          },
          [c](PiecewiseMonomialDensity d) {
            for (auto& pc : d.pieces) pc.c *= c;
            return Density(std::move(d));
          },
          // c*h keeps the threshold and multiplies both the level and the
          // tail coefficient by c, which is the sharp density of (c*avr, c*mass).
          [c](const PaperSharpDensity& d) {
            return Density(PaperSharpDensity{c * d.avr, c * d.mass, d.n});
          },
          [c](TabulatedDensity d) {
            for (auto& v : d.values) v *= c;
            return Density(std::move(d));
          },
      },
      family_);
}

std::optional<MonomialTail> Density::tail() const {
  return std::visit(
      Overloaded{
          [](const ConstantDensity& d) -> std::optional<MonomialTail> {
            return MonomialTail{d.c, 0.0, 0.0};
          },
          [](const MonomialDensity& d) -> std::optional<MonomialTail> {
            return MonomialTail{d.c, d.p, 0.0};
          },
          [](const PiecewiseMonomialDensity& d) -> std::optional<MonomialTail> {
            const double start = d.breakpoints.empty() ? 0.0 : d.breakpoints.back();
            return MonomialTail{d.pieces.back().c, d.pieces.back().p, start};
          },
          [this](const PaperSharpDensity& d) -> std::optional<MonomialTail> {
            return MonomialTail{sharp_tail_c_, d.n - 1.0, sharp_x_};
          },
          [](const TabulatedDensity&) -> std::optional<MonomialTail> {
            return std::nullopt;
          },
      },
      family_);
}

std::vector<double> Density::breakpoints() const {
  if (const auto* p = std::get_if<PiecewiseMonomialDensity>(&family_))
    return p->breakpoints;
  if (const auto* t = std::get_if<TabulatedDensity>(&family_)) return t->grid;
  if (std::holds_alternative<PaperSharpDensity>(family_)) return {sharp_x_};
  return {};
}

double Density::sharp_threshold() const {
  if (!std::holds_alternative<PaperSharpDensity>(family_))
    throw DomainError("sharp_threshold: not a paper_sharp density");
  return sharp_x_;
}

std::string to_string(BoundSide side) {
  return side == BoundSide::lower ? "lower" : "upper";
}

std::string to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::pass_exact:
      return "pass_exact";
    case VerdictStatus::pass_sampled:
      return "pass_sampled";
    case VerdictStatus::fail:
      return "fail";
  }
  return "unknown";
}

namespace detail {
namespace {

bool violates(double lhs, double rhs, double rel_tol) {
  return lhs - rhs > rel_tol * std::max(lhs, rhs);
}

// Precomputed per-point data for the pair sweep.
struct SweepTable {
  std::vector<double> h;
  std::vector<double> left_pow;   // x^(N-1)
  std::vector<double> right_pow;  // (D-x)^(N-1), bounded domains only
  bool bounded;

  SweepTable(const Density& dens, const std::vector<double>& grid, double D,
             double n)
      : bounded(std::isfinite(D)) {
    h.reserve(grid.size());
    left_pow.reserve(grid.size());
    for (double x : grid) {
      h.push_back(dens(x));
      left_pow.push_back(std::pow(x, n - 1.0));
      if (bounded) right_pow.push_back(std::pow(std::max(D - x, 0.0), n - 1.0));
    }
  }

  double lower_lhs(std::size_t i, std::size_t j) const {
    return bounded ? h[i] * right_pow[j] : h[i];
  }
  double lower_rhs(std::size_t i, std::size_t j) const {
    return bounded ? h[j] * right_pow[i] : h[j];
  }
  double upper_lhs(std::size_t i, std::size_t j) const { return h[j] * left_pow[i]; }
  double upper_rhs(std::size_t i, std::size_t j) const { return h[i] * left_pow[j]; }

  bool violated(std::size_t i, std::size_t j, double rel_tol) const {
    return violates(lower_lhs(i, j), lower_rhs(i, j), rel_tol) ||
           violates(upper_lhs(i, j), upper_rhs(i, j), rel_tol);
  }

  Witness witness(const std::vector<double>& grid, std::size_t i, std::size_t j,
                  double rel_tol) const {
    if (violates(lower_lhs(i, j), lower_rhs(i, j), rel_tol))
      return {grid[i], grid[j], BoundSide::lower, lower_lhs(i, j), lower_rhs(i, j)};
    return {grid[i], grid[j], BoundSide::upper, upper_lhs(i, j), upper_rhs(i, j)};
  }
};

}  // namespace

std::vector<double> sample_grid(const Density& h, double lo, double hi,
                                std::size_t resolution) {
  if (!(lo < hi) || !std::isfinite(hi))
    throw DomainError("sample_grid: need a finite range lo < hi");
  if (resolution < 2) throw DomainError("sample_grid: resolution must be >= 2");
  std::vector<double> grid;
  grid.reserve(resolution);
  for (std::size_t i = 0; i < resolution; ++i)
    grid.push_back(i + 1 == resolution
                       ? hi
                       : lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(resolution - 1));
  for (double b : h.breakpoints())
    if (b > lo && b < hi) grid.push_back(b);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::optional<Witness> sweep_pairs_serial(const Density& h,
                                          const std::vector<double>& grid,
                                          double D, double n, double rel_tol) {
  const SweepTable table(h, grid, D, n);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j)
      if (table.violated(i, j, rel_tol)) return table.witness(grid, i, j, rel_tol);
  return std::nullopt;
}

std::optional<Witness> sweep_pairs(const Density& h,
                                   const std::vector<double>& grid, double D,
                                   double n, double rel_tol) {
  const SweepTable table(h, grid, D, n);
  const long long g = static_cast<long long>(grid.size());
  long long first = LLONG_MAX;  // i * g + j of the first violating pair

#pragma omp parallel for schedule(dynamic, 8) reduction(min : first)
  for (long long i = 0; i < g; ++i) {
    if (i * g >= first) continue;
    for (long long j = i + 1; j < g; ++j) {
      if (table.violated(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                         rel_tol)) {
        first = std::min(first, i * g + j);
        break;
      }
    }
  }
  if (first == LLONG_MAX) return std::nullopt;
  return table.witness(grid, static_cast<std::size_t>(first / g),
                       static_cast<std::size_t>(first % g), rel_tol);
}

}  // namespace detail

namespace {

Witness upper_witness(const Density& h, double x0, double x1, double n) {
  return {x0, x1, BoundSide::upper, h(x1) * std::pow(x0, n - 1.0),
          h(x0) * std::pow(x1, n - 1.0)};
}

// Pair with x1/x0 = 64 inside [0, D]; makes an exponent excess of at least
// rel_tol show up as a violation larger than rel_tol.
std::pair<double, double> exponent_witness_pair(double D, double start) {
  if (std::isfinite(D)) return {D / 128.0, D / 2.0};
  const double x0 = 2.0 * std::max(start, 1.0);
  return {x0, 64.0 * x0};
}

Verdict evaluate(const Density& h, double D, double n, const Tolerance& tol,
                 const CheckOptions& opts, bool allow_unrefuted_table) {
  tol.validate();
  if (!(D > 0.0) || std::isnan(D)) throw DomainError("check: D must be > 0");
  if (std::isfinite(D) && (h.domain_lo() > 0.0 || h.domain_hi() < D))
    throw DomainError("check: density is not defined on all of [0, D]");

  const double exp_slack = tol.rel_tol;
  const bool half_line = !std::isfinite(D);

  if (const auto* c = std::get_if<ConstantDensity>(&h.family())) {
    (void)c;
    return {VerdictStatus::pass_exact, std::nullopt, 0};
  }
  if (const auto* m = std::get_if<MonomialDensity>(&h.family())) {
    if (m->c == 0.0 || m->p <= n - 1.0 + exp_slack)
      return {VerdictStatus::pass_exact, std::nullopt, 0};
    const auto [x0, x1] = exponent_witness_pair(D, 0.0);
    return {VerdictStatus::fail, upper_witness(h, x0, x1, n), 0};
  }
  if (const auto* s = std::get_if<PaperSharpDensity>(&h.family()); s && half_line) {
    // h is non-decreasing and h(x)/x^(N-1) is non-increasing iff N_h <= N.
    if (s->n <= n + exp_slack) return {VerdictStatus::pass_exact, std::nullopt, 0};
    const auto [x0, x1] = exponent_witness_pair(D, h.sharp_threshold());
    return {VerdictStatus::fail, upper_witness(h, x0, x1, n), 0};
  }

  double lo = 0.0;
  double hi = D;
  const auto tail = h.tail();
  if (half_line) {
    if (tail) {
      hi = 2.0 * std::max(tail->start, 1.0);
    } else {
      lo = h.domain_lo();
      hi = h.domain_hi();
    }
  }
  const auto grid = detail::sample_grid(h, lo, hi, opts.resolution);
  if (auto w = detail::sweep_pairs(h, grid, D, n, tol.rel_tol))
    return {VerdictStatus::fail, w, grid.size()};

  if (half_line) {
    if (!tail) {
      if (allow_unrefuted_table)
        return {VerdictStatus::pass_sampled, std::nullopt, grid.size()};
      throw DomainError(
          "check: a tabulated density has no tail, so the half-line bounds "
          "cannot be certified (no violation found on its table)");
    }
    if (tail->c > 0.0 && tail->p > n - 1.0 + exp_slack) {
      const auto [x0, x1] = exponent_witness_pair(D, tail->start);
      return {VerdictStatus::fail, upper_witness(h, x0, x1, n), grid.size()};
    }
  }
  return {VerdictStatus::pass_sampled, std::nullopt, grid.size()};
}

}  // namespace

Verdict check_mcp_density(const Density& h, double D, RealDimension n,
                          const Tolerance& tol, const CheckOptions& opts) {
  return evaluate(h, D, n, tol, opts, false);
}

std::optional<double> minimal_mcp_dimension(const Density& h, double D,
                                             double n_lo, double n_hi,
                                             const Tolerance& tol,
                                             const CheckOptions& opts) {
  RealDimension lo_dim(n_lo);
  if (!(n_hi >= n_lo) || !std::isfinite(n_hi))
    throw DomainError("minimal_mcp_dimension: need n_lo <= n_hi < inf");
  auto passes = [&](double n) {
    return evaluate(h, D, n, tol, opts, true).passed();
  };
  if (passes(lo_dim)) return n_lo;
  if (!passes(n_hi)) return std::nullopt;
  double lo = n_lo, hi = n_hi;
  for (int it = 0; it < tol.max_iter && hi - lo > tol.abs_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (passes(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace mcpiso
