#include "mcpiso/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mcpiso/errors.hpp"
#include "mcpiso/profile.hpp"

namespace mcpiso::search {

void SearchConfig::validate() const {
  if (grid_points < 2) throw DomainError("search: grid_points must be >= 2");
  if (max_components < 1) throw DomainError("search: max_components must be >= 1");
  if (!(volume_tolerance > 0.0) || !std::isfinite(volume_tolerance))
    throw DomainError("search: volume_tolerance must be > 0");
  if (!std::isfinite(target_volume) || target_volume < 0.0)
    throw DomainError("search: target_volume must be finite and >= 0");
  if (!std::isfinite(window) || window < 0.0)
    throw DomainError("search: window must be finite and >= 0");
}

double effective_window(const WeightedInterval& X, const SearchConfig& cfg) {
  if (cfg.window > 0.0) return X.bounded() ? std::min(cfg.window, X.D()) : cfg.window;
  if (X.bounded()) return X.D();
  if (std::holds_alternative<PaperSharpDensity>(X.density().family()))
    return 4.0 * X.density().sharp_threshold();
  throw PreconditionError("search: a half-line space needs a finite window");
}

namespace {

struct Grid {
  std::vector<double> x;
  std::vector<double> mass;    // m([0, x_i])
  std::vector<double> left;    // weight of x_i as a left endpoint
  std::vector<double> right;   // weight of x_i as a right endpoint
  double slack = 0.0;
};

Grid make_grid(const WeightedInterval& X, const SearchConfig& cfg) {
  const double L = effective_window(X, cfg);
  const std::size_t g = cfg.grid_points;
  Grid grid;
  grid.x.resize(g);
  for (std::size_t i = 0; i < g; ++i)
    grid.x[i] = i + 1 == g ? L : L * static_cast<double>(i) / static_cast<double>(g - 1);
  grid.mass.resize(g);
  grid.left.resize(g);
  grid.right.resize(g);
  double max_cell = 0.0, max_h = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    const double h = X.h(grid.x[i]);
    max_h = std::max(max_h, h);
    grid.left[i] = grid.x[i] > 0.0 ? h : 0.0;
    grid.right[i] = grid.x[i] < X.D() ? h : 0.0;
    if (i == 0) {
      grid.mass[i] = 0.0;
    } else {
      const double cell = X.density().integral(grid.x[i - 1], grid.x[i]);
      grid.mass[i] = grid.mass[i - 1] + cell;
      max_cell = std::max(max_cell, cell);
    }
  }
  grid.slack = max_cell * max_h;
  return grid;
}

// Endpoint indices s1 < e1 < s2 < e2 < ... plus the content they carry.
struct Candidate {
  double content = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> idx;
  bool valid = false;
};

bool better(double content, const std::vector<std::size_t>& idx, const Candidate& best) {
  if (!best.valid) return true;
  if (content != best.content) return content < best.content;
  return std::lexicographical_compare(idx.begin(), idx.end(), best.idx.begin(),
                                      best.idx.end());
}

void offer(Candidate& best, double content, const std::vector<std::size_t>& idx) {
  if (better(content, idx, best)) {
    best.content = content;
    best.idx = idx;
    best.valid = true;
  }
}

void merge(Candidate& into, const Candidate& other) {
  if (other.valid) offer(into, other.content, other.idx);
}

class Enumerator {
 public:
  Enumerator(const Grid& grid, const SearchConfig& cfg)
      : g_(grid), v_(cfg.target_volume), tol_(cfg.volume_tolerance),
        kmax_(cfg.max_components), n_(grid.x.size()) {}

  // Candidates whose first component starts at s1.
  void from_first_start(std::size_t s1, Candidate& best, std::uint64_t& count) const {
    std::vector<std::size_t> idx;
    idx.reserve(2 * kmax_);
    // Last (and only) component.
    close_at(s1, 0.0, 0.0, idx, best, count);
    if (kmax_ < 2) return;
    for (std::size_t e1 = s1 + 1; e1 < n_; ++e1) {
      const double vol = g_.mass[e1] - g_.mass[s1];
      if (vol > v_ + tol_) break;
      idx.assign({s1, e1});
      recurse(e1 + 1, vol, g_.left[s1] + g_.right[e1], idx, 1, best, count);
    }
  }

 private:
  // Components placed so far in idx; the next one starts at >= start.
  void recurse(std::size_t start, double vol, double content,
               std::vector<std::size_t>& idx, std::size_t placed, Candidate& best,
               std::uint64_t& count) const {
    if (start + 1 >= n_) return;
    const double rem = v_ - vol;
    sweep_last(start, rem, content, idx, best, count);
    if (placed + 1 >= kmax_) return;
    for (std::size_t s = start; s + 1 < n_; ++s) {
      for (std::size_t e = s + 1; e < n_; ++e) {
        const double add = g_.mass[e] - g_.mass[s];
        if (add > rem + tol_) break;
        idx.push_back(s);
        idx.push_back(e);
        recurse(e + 1, vol + add, content + g_.left[s] + g_.right[e], idx, placed + 1,
                best, count);
        idx.resize(idx.size() - 2);
      }
    }
  }

  // Last component [s, e] with fixed start s.
  void close_at(std::size_t s, double vol, double content,
                std::vector<std::size_t>& idx, Candidate& best,
                std::uint64_t& count) const {
    const double rem = v_ - vol;
    const double base = g_.mass[s];
    auto first = std::lower_bound(g_.mass.begin() + static_cast<std::ptrdiff_t>(s) + 1,
                                  g_.mass.end(), base + rem - tol_);
    auto last = std::upper_bound(first, g_.mass.end(), base + rem + tol_);
    pick(s, static_cast<std::size_t>(first - g_.mass.begin()),
         static_cast<std::size_t>(last - g_.mass.begin()), content, idx, best, count);
  }

  // Last component over every start >= start; the volume window moves right
  // monotonically with s, so two pointers suffice.
  void sweep_last(std::size_t start, double rem, double content,
                  std::vector<std::size_t>& idx, Candidate& best,
                  std::uint64_t& count) const {
    std::size_t lo = start + 1, hi = start + 1;
    for (std::size_t s = start; s + 1 < n_; ++s) {
      const double base = g_.mass[s];
      if (g_.mass[n_ - 1] - base < rem - tol_) break;
      lo = std::max(lo, s + 1);
      while (lo < n_ && g_.mass[lo] - base < rem - tol_) ++lo;
      hi = std::max(hi, lo);
      while (hi < n_ && g_.mass[hi] - base <= rem + tol_) ++hi;
      pick(s, lo, hi, content, idx, best, count);
    }
  }

  void pick(std::size_t s, std::size_t lo, std::size_t hi, double content,
            std::vector<std::size_t>& idx, Candidate& best,
            std::uint64_t& count) const {
    if (lo >= hi) return;
    count += hi - lo;
    std::size_t e_best = lo;
    for (std::size_t e = lo + 1; e < hi; ++e)
      if (g_.right[e] < g_.right[e_best]) e_best = e;
    const double c = content + g_.left[s] + g_.right[e_best];
    idx.push_back(s);
    idx.push_back(e_best);
    offer(best, c, idx);
    idx.resize(idx.size() - 2);
  }

  const Grid& g_;
  double v_;
  double tol_;
  std::size_t kmax_;
  std::size_t n_;
};

SearchResult finish(const Grid& grid, const Candidate& best, std::uint64_t count) {
  if (!best.valid)
    throw InfeasibleError(
        "search: no grid-aligned union lands in the volume window; refine the "
        "grid or widen volume_tolerance");
  std::vector<Interval> parts;
  for (std::size_t k = 0; k + 1 < best.idx.size(); k += 2)
    parts.push_back({grid.x[best.idx[k]], grid.x[best.idx[k + 1]]});
  return {IntervalUnion(std::move(parts)), best.content, count, grid.slack};
}

}  // namespace

SearchResult brute_force_profile(const WeightedInterval& X, const SearchConfig& cfg) {
  cfg.validate();
  const Grid grid = make_grid(X, cfg);
  const Enumerator en(grid, cfg);
  const long long n = static_cast<long long>(grid.x.size());

  Candidate best;
  std::uint64_t count = 0;
  if (cfg.target_volume <= cfg.volume_tolerance) {
    offer(best, 0.0, {});
    ++count;
  }

#pragma omp parallel
  {
    Candidate local;
    std::uint64_t local_count = 0;
#pragma omp for schedule(dynamic, 4) nowait
    for (long long s1 = 0; s1 < n - 1; ++s1)
      en.from_first_start(static_cast<std::size_t>(s1), local, local_count);
#pragma omp critical(mcpiso_search_merge)
    {
      merge(best, local);
      count += local_count;
    }
  }
  return finish(grid, best, count);
}

namespace detail {
namespace {

void enumerate_serial(const WeightedInterval& X, const Grid& grid,
                      const SearchConfig& cfg, std::size_t start,
                      std::vector<std::size_t>& idx, Candidate& best,
                      std::uint64_t& count) {
  std::vector<Interval> parts;
  for (std::size_t k = 0; k + 1 < idx.size(); k += 2)
    parts.push_back({grid.x[idx[k]], grid.x[idx[k + 1]]});
  const IntervalUnion E(std::move(parts));
  if (std::abs(space::measure(X, E) - cfg.target_volume) <= cfg.volume_tolerance) {
    ++count;
    offer(best, space::minkowski_content(X, E), idx);
  }
  if (idx.size() / 2 >= cfg.max_components) return;
  const std::size_t n = grid.x.size();
  for (std::size_t s = start; s + 1 < n; ++s)
    for (std::size_t e = s + 1; e < n; ++e) {
      idx.push_back(s);
      idx.push_back(e);
      enumerate_serial(X, grid, cfg, e + 1, idx, best, count);
      idx.resize(idx.size() - 2);
    }
}

}  // namespace

SearchResult brute_force_profile_serial(const WeightedInterval& X,
                                        const SearchConfig& cfg) {
  cfg.validate();
  const Grid grid = make_grid(X, cfg);
  Candidate best;
  std::uint64_t count = 0;
  std::vector<std::size_t> idx;
  enumerate_serial(X, grid, cfg, 0, idx, best, count);
  return finish(grid, best, count);
}

}  // namespace detail

CertifyReport certify_bound(const WeightedInterval& X, RealDimension n, double avr,
                            const std::vector<double>& volumes, SearchConfig cfg,
                            const Tolerance& tol) {
  if (!std::isfinite(avr) || avr < 0.0)
    throw DomainError("certify_bound: avr must be finite and >= 0");
  if (!check_mcp_density(X.density(), X.D(), n, tol).passed())
    throw PreconditionError("certify_bound: density fails the MCP(0,N) check");

  CertifyReport report{{}, true};
  for (double v : volumes) {
    cfg.target_volume = v;
    const SearchResult r = brute_force_profile(X, cfg);
    const double bound = profile::avr_lower_bound(n, avr, v);
    const double window_drop =
        bound - profile::avr_lower_bound(n, avr, std::max(v - cfg.volume_tolerance, 0.0));
    const double slack = r.slack + window_drop;
    const double margin = r.content - bound;
    report.passed = report.passed && margin >= -slack;
    report.rows.push_back({v, r.content, bound, margin, slack, r.best_set});
  }
  return report;
}

}  // namespace mcpiso::search
