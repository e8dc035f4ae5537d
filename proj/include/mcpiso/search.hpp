#pragma once

#include <cstdint>
#include <vector>

#include "mcpiso/numerics.hpp"
#include "mcpiso/space.hpp"

namespace mcpiso::search {

struct SearchConfig {
  std::size_t grid_points = 512;
  std::size_t max_components = 2;
  double target_volume = 0.0;
  double volume_tolerance = 1e-3;
  // Right end of the search window; 0 selects D (bounded spaces) or the
  // default window of a sharp half-line space.
  double window = 0.0;

  void validate() const;
};

struct SearchResult {
  IntervalUnion best_set;
  double content;
  std::uint64_t sets_examined;
  // (largest measure of a grid cell) x (largest h on the grid).
  double slack;
};

/// Minimal Minkowski content over unions of at most max_components
/// grid-aligned intervals whose measure is within volume_tolerance of
/// target_volume. Ties go to the lexicographically smallest endpoint list,
/// so the result does not depend on the thread schedule.
///
/// Throws InfeasibleError when nothing lands in the volume window.
SearchResult brute_force_profile(const WeightedInterval& X, const SearchConfig& cfg);

struct CertifyRow {
  double v;
  double content;
  double bound;
  double margin;
  double slack;
  IntervalUnion best_set;
};

struct CertifyReport {
  std::vector<CertifyRow> rows;
  bool passed;
};

/// Runs the search at each volume and compares against the AVR bound
/// (N w_N avr)^{1/N} v^{(N-1)/N}. A row passes when margin >= -slack, where
/// slack is the search slack plus the bound's variation across the volume
/// window.
CertifyReport certify_bound(const WeightedInterval& X, RealDimension n, double avr,
                            const std::vector<double>& volumes, SearchConfig cfg,
                            const Tolerance& tol = kDefaultTolerance);

// Window actually searched for cfg on X.
double effective_window(const WeightedInterval& X, const SearchConfig& cfg);

namespace detail {

// Enumerates every endpoint tuple and measures each union through
// space::measure / space::minkowski_content. O(G^{2k}); small grids only.
SearchResult brute_force_profile_serial(const WeightedInterval& X,
                                        const SearchConfig& cfg);

}  // namespace detail
}  // namespace mcpiso::search
