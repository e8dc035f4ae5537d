#include "mcpiso/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mcpiso/errors.hpp"

namespace mcpiso {

void Tolerance::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol))
    throw DomainError("tolerance: abs_tol must be positive");
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
    throw DomainError("tolerance: rel_tol must be positive");
  if (max_iter < 1) throw DomainError("tolerance: max_iter must be >= 1");
}

RealDimension::RealDimension(double n) : n_(n) {
  if (!std::isfinite(n) || !(n > 1.0))
    throw DomainError("dimension N must be a finite real > 1, got " +
                      std::to_string(n));
}

namespace numerics {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series A_g(x) for the shifted argument x = z - 1.
double lanczos_sum(double x) {
  double a = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i)
    a += kLanczosCoeff[i] / (x + static_cast<double>(i));
  return a;
}

}  // namespace

double gamma(double x) {
  using std::numbers::pi;
  if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
  if (x <= 0.0 && x == std::floor(x))
    throw DomainError("gamma: pole at non-positive integer");
  if (x < 0.5) return pi / (std::sin(pi * x) * gamma(1.0 - x));
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) e^-t split in two halves to delay overflow.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * pi) * half * (half * std::exp(-t)) * lanczos_sum(z);
}

double log_gamma(double x) {
  using std::numbers::pi;
  if (!std::isfinite(x) || !(x > 0.0))
    throw DomainError("log_gamma: argument must be positive");
  if (x < 0.5) return std::log(pi / std::sin(pi * x)) - log_gamma(1.0 - x);
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(z));
}

double unit_ball_volume(double n) {
  using std::numbers::pi;
  if (!std::isfinite(n) || !(n > 0.0))
    throw DomainError("unit_ball_volume: N must be finite and positive");
  const double half = 0.5 * n;
  if (half + 1.0 < 140.0) return std::pow(pi, half) / gamma(half + 1.0);
  return std::exp(half * std::log(pi) - log_gamma(half + 1.0));
}

namespace {

struct Panel {
  double a, b, fa, fm, fb;
  double estimate;  // Richardson-corrected two-panel Simpson value
  double error;     // |two-panel - one-panel| / 15
  double flm, frm;
};

Panel make_panel(const std::function<double(double)>& f, double a, double b, double fa,
                 double fm, double fb) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m));
  const double frm = f(0.5 * (m + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  return {a, b, fa, fm, fb, left + right + delta / 15.0, std::abs(delta) / 15.0, flm, frm};
}

constexpr int kMaxDepth = 60;

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const Tolerance& tol) {
  tol.validate();
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate: bounds must be finite");
  if (a > b) throw DomainError("integrate: requires a <= b");
  if (a == b) return 0.0;

  // Global adaptive Simpson: always split the panel with the largest error
  // estimate, so endpoint singularities only cost a few levels.
  auto worse = [](const Panel& x, const Panel& y) {
    return x.error < y.error || (x.error == y.error && x.a > y.a);
  };
  std::vector<Panel> heap{make_panel(f, a, b, f(a), f(0.5 * (a + b)), f(b))};
  double total_err = heap.front().error;
  const double width = b - a;
  bool exhausted = false;
  for (int it = 0;; ++it) {
    double sum = 0.0;
    for (const auto& p : heap) sum += p.estimate;
    if (!std::isfinite(sum) || !std::isfinite(total_err))
      throw DomainError("integrate: integrand is not finite on [a,b]");
    if (total_err <= std::max(tol.abs_tol, tol.rel_tol * std::abs(sum))) break;
    if (it >= tol.max_iter) {
      exhausted = true;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Panel p = heap.back();
    const double m = 0.5 * (p.a + p.b);
    if ((p.b - p.a) < width * std::ldexp(1.0, -kMaxDepth) || !(m > p.a && m < p.b)) {
      // Cannot split further; keep it and stop refining.
      std::push_heap(heap.begin(), heap.end(), worse);
      exhausted = true;
      break;
    }
    heap.pop_back();
    total_err -= p.error;
    for (Panel q : {make_panel(f, p.a, m, p.fa, p.flm, p.fm), make_panel(f, m, p.b, p.fm, p.frm, p.fb)}) {
      total_err += q.error;
      heap.push_back(q);
      std::push_heap(heap.begin(), heap.end(), worse);
    }
    // Rebuild the running error occasionally to shed cancellation drift.
    if (it % 256 == 255) {
      total_err = 0.0;
      for (const auto& q : heap) total_err += q.error;
    }
  }
  // Sum in left-to-right order so the result does not depend on heap layout.
  std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double result = 0.0;
  for (const auto& p : heap) result += p.estimate;
  if (!std::isfinite(result))
    throw DomainError("integrate: integrand is not finite on [a,b]");
  if (exhausted) throw AccuracyError("integrate: subdivision budget exhausted", result);
  return result;
}

double invert_monotone(const std::function<double(double)>& g, double target,
                       double lo, double hi, const Tolerance& tol) {
  tol.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi))
    throw DomainError("invert_monotone: requires finite lo <= hi");
  if (!std::isfinite(target))
    throw DomainError("invert_monotone: target must be finite");

  double glo = g(lo);
  double ghi = g(hi);
  if (target < glo || target > ghi)
    throw BracketError("invert_monotone: target outside [g(lo), g(hi)]");
  if (target == glo) return lo;
  if (target == ghi) return hi;

  // Coarse monotonicity probe.
  constexpr int kProbe = 16;
  double prev = glo;
  for (int i = 1; i <= kProbe; ++i) {
    const double x = lo + (hi - lo) * i / kProbe;
    const double gx = i == kProbe ? ghi : g(x);
    if (gx < prev)
      throw PreconditionError("invert_monotone: g is not increasing");
    prev = gx;
  }

  double a = lo, b = hi;
  double fa = glo - target, fb = ghi - target;
  double best_x = std::abs(fa) < std::abs(fb) ? a : b;
  double best_r = std::min(std::abs(fa), std::abs(fb));
  int side = 0;  // which end was retained last: -1 = a, +1 = b
  double width_two_ago = b - a;
  double width_prev = b - a;

  for (int it = 0; it < tol.max_iter; ++it) {
    if (b - a <= tol.abs_tol) return best_x;

    double x;
    const bool stalled = (b - a) > 0.5 * width_two_ago;
    if (stalled && it >= 2) {
      x = 0.5 * (a + b);
    } else {
      x = b - fb * (b - a) / (fb - fa);
      if (!(x > a && x < b)) x = 0.5 * (a + b);
    }
    width_two_ago = width_prev;
    width_prev = b - a;

    const double fx = g(x) - target;
    const double r = std::abs(fx);
    if (r < best_r) {
      best_r = r;
      best_x = x;
    }
    if (fx == 0.0) return x;
    if (r <= tol.abs_tol && r <= tol.rel_tol * std::abs(target)) return x;

    if (fx < 0.0) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;  // Illinois modification
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == +1) fa *= 0.5;
      side = +1;
    }
  }
  if (best_r <= tol.abs_tol) return best_x;
  throw AccuracyError("invert_monotone: iteration budget exhausted", best_x);
}

}  // namespace numerics
}  // namespace mcpiso
