#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mcpiso/errors.hpp"
#include "mcpiso/profile.hpp"
#include "mcpiso/space.hpp"

using namespace mcpiso;
using namespace mcpiso::space;
using std::numbers::pi;

namespace {

double omega(double n) { return numerics::unit_ball_volume(n); }

WeightedInterval cone(double n) {
  return WeightedInterval(kHalfLine, Density::monomial(n * omega(n), n - 1.0));
}

}  // namespace

TEST(IntervalUnion, MergesTouchingAndSorts) {
  const IntervalUnion E({{0.5, 0.7}, {0.1, 0.2}, {0.2, 0.3}, {0.6, 0.9}});
  ASSERT_EQ(E.size(), 2u);
  EXPECT_EQ(E.components()[0], (Interval{0.1, 0.3}));
  EXPECT_EQ(E.components()[1], (Interval{0.5, 0.9}));
  EXPECT_THROW(IntervalUnion({{0.3, 0.2}}), DomainError);
}

TEST(Measure, Examples) {
  const WeightedInterval unit(1.0, Density::constant(1.0));
  EXPECT_NEAR(measure(unit, IntervalUnion({{0.2, 0.5}})), 0.3, 1e-15);

  const WeightedInterval lin(kHalfLine, Density::monomial(1.0, 1.0));
  EXPECT_NEAR(measure(lin, IntervalUnion({{0.0, 3.0}})), 4.5, 1e-14);

  for (double n : {1.5, 2.0, 3.0}) {
    const double a = 0.8, v = 2.5;
    const auto s = sharp_space(a, v, RealDimension(n));
    const double x_star = std::pow(v / (n * omega(n) * a), 1.0 / n);
    EXPECT_NEAR(measure(s.space, IntervalUnion({{0.0, x_star}})), v, 1e-13);
  }
  EXPECT_THROW(measure(unit, IntervalUnion({{0.5, 1.5}})), DomainError);
  EXPECT_EQ(measure(unit, IntervalUnion()), 0.0);
}

TEST(Measure, AdditiveAndMonotone) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  const WeightedInterval X(kHalfLine, Density(PiecewiseMonomialDensity{
                                           {1.0, 2.0}, {{1.0, 0.0}, {1.0, 1.0}, {0.5, 2.0}}}));
  for (int t = 0; t < 200; ++t) {
    double p[4] = {u(rng), u(rng), u(rng), u(rng)};
    std::sort(p, p + 4);
    const IntervalUnion A({{p[0], p[1]}}), B({{p[2], p[3]}}), AB({{p[0], p[1]}, {p[2], p[3]}});
    EXPECT_NEAR(measure(X, AB), measure(X, A) + measure(X, B), 1e-12 * measure(X, AB));
    const IntervalUnion hull({{p[0], p[3]}});
    EXPECT_GE(measure(X, hull), measure(X, AB) - 1e-12);
  }
}

TEST(Minkowski, Examples) {
  const WeightedInterval X(2.0, Density::monomial(1.0, 2.0));
  EXPECT_EQ(minkowski_content(X, IntervalUnion()), 0.0);
  EXPECT_NEAR(minkowski_content(X, IntervalUnion({{0.5, 1.5}})), 0.25 + 2.25, 1e-15);
  // Endpoints on the boundary of [0, D] do not grow.
  EXPECT_NEAR(minkowski_content(X, IntervalUnion({{0.0, 1.5}})), 2.25, 1e-15);
  EXPECT_NEAR(minkowski_content(X, IntervalUnion({{1.0, 2.0}})), 1.0, 1e-15);
  // Degenerate components.
  EXPECT_NEAR(minkowski_content(X, IntervalUnion({{1.0, 1.0}})), 2.0, 1e-15);
  EXPECT_NEAR(minkowski_content(X, IntervalUnion({{2.0, 2.0}})), 4.0, 1e-15);

  const auto s = sharp_space(0.3, 1.7, RealDimension(3.0));
  EXPECT_NEAR(minkowski_content(s.space, s.extremal_set),
              std::pow(3.0 * omega(3.0) * 0.3, 1.0 / 3.0) * std::pow(1.7, 2.0 / 3.0), 1e-13);
}

TEST(MinkowskiEstimator, Examples) {
  const WeightedInterval unit(1.0, Density::constant(1.0));
  const auto e = minkowski_content_estimator(unit, IntervalUnion({{0.2, 0.5}}), default_eps_sequence());
  EXPECT_NEAR(e.value, 2.0, 1e-9);
  EXPECT_EQ(e.quotients.size(), default_eps_sequence().size());

  const auto d = minkowski_content_estimator(unit, IntervalUnion({{0.4, 0.4}}), default_eps_sequence());
  EXPECT_NEAR(d.value, 2.0, 1e-9);

  const auto s = sharp_space(0.7, 2.0, RealDimension(2.5));
  const auto est = minkowski_content_estimator(s.space, s.extremal_set, default_eps_sequence());
  EXPECT_NEAR(est.value, minkowski_content(s.space, s.extremal_set), 1e-6);
}

TEST(MinkowskiEstimator, ConvergesTowardAnalyticValue) {
  const WeightedInterval X(kHalfLine, Density::monomial(1.0, 3.0));
  const IntervalUnion E({{1.0, 2.0}, {3.0, 3.5}});
  const double exact = minkowski_content(X, E);
  const auto est = minkowski_content_estimator(X, E, default_eps_sequence());
  double prev = INFINITY;
  for (double q : est.quotients) {
    EXPECT_LE(std::abs(q - exact), prev);
    prev = std::abs(q - exact);
  }
  EXPECT_LT(std::abs(est.extrapolated - exact), std::abs(est.value - exact) + 1e-12);
}

TEST(MinkowskiEstimator, Preconditions) {
  const WeightedInterval unit(1.0, Density::constant(1.0));
  EXPECT_THROW(minkowski_content_estimator(unit, IntervalUnion({{0.1, 0.2}, {0.2005, 0.3}}),
                                           {1e-3, 1e-4}),
               PreconditionError);
  EXPECT_THROW(minkowski_content_estimator(unit, IntervalUnion({{0.1, 0.2}}), {1e-4, 1e-3}),
               PreconditionError);
}

TEST(MinkowskiEstimator, RandomCorpusAgreesWithAnalytic) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coef(0.2, 3.0), expo(0.0, 3.0), pos(0.05, 4.0);
  for (int t = 0; t < 100; ++t) {
    Density h = Density::constant(1.0);
    switch (t % 3) {
      case 0: h = Density::monomial(coef(rng), expo(rng)); break;
      case 1: h = Density::paper_sharp(coef(rng), coef(rng), 1.0 + coef(rng)); break;
      default: {
        const double b = pos(rng), p0 = expo(rng), p1 = expo(rng);
        h = Density(PiecewiseMonomialDensity{{b}, {{1.0, p0}, {std::pow(b, p0 - p1), p1}}});
      }
    }
    const WeightedInterval X(t % 4 == 0 ? 5.0 : kHalfLine, h);
    std::vector<double> p;
    for (int i = 0; i < 4; ++i) p.push_back(pos(rng));
    std::sort(p.begin(), p.end());
    if (p[2] - p[1] < 0.01) p[2] = p[1] + 0.01;
    const IntervalUnion E({{p[0], p[1]}, {p[2], std::max(p[2], p[3])}});
    const double exact = minkowski_content(X, E);
    const double est = minkowski_content_estimator(X, E, default_eps_sequence()).value;
    EXPECT_LE(std::abs(est - exact), 1e-6 * std::max(1.0, exact)) << "case " << t;
  }
}

TEST(Avr, Examples) {
  for (double n : {1.5, 2.0, 3.0, 5.0}) {
    const auto a = avr(cone(n), RealDimension(n));
    EXPECT_TRUE(a.certified);
    EXPECT_NEAR(a.value, 1.0, 1e-13);
    const auto s = sharp_space(0.37, 2.0, RealDimension(n));
    const auto b = avr(s.space, RealDimension(n));
    EXPECT_TRUE(b.certified);
    EXPECT_NEAR(b.value, 0.37, 1e-12);
  }
  const auto bounded = avr(WeightedInterval(1.0, Density::constant(1.0)), RealDimension(2.0));
  EXPECT_TRUE(bounded.certified);
  EXPECT_EQ(bounded.value, 0.0);
  const auto sub = avr(WeightedInterval(kHalfLine, Density::constant(1.0)), RealDimension(2.0));
  EXPECT_TRUE(sub.certified);
  EXPECT_EQ(sub.value, 0.0);
}

TEST(Avr, UncertifiedEstimatorReproducesCertifiedValue) {
  for (double n : {1.5, 2.0, 3.0, 5.0}) {
    for (const auto& X : {cone(n), sharp_space(0.37, 2.0, RealDimension(n)).space}) {
      const double certified = avr(X, RealDimension(n)).value;
      const double at_rmax = volume_ratio(X, RealDimension(n), 1e6);
      EXPECT_NEAR(at_rmax, certified, 1e-6 * certified);
    }
  }
}

TEST(Avr, TabulatedIsUncertifiedUpperBound) {
  TabulatedDensity t;
  for (int i = 0; i <= 100; ++i) {
    t.grid.push_back(0.1 * i);
    t.values.push_back(2.0 * pi * 0.1 * i);
  }
  const WeightedInterval X(kHalfLine, Density(std::move(t)));
  const auto a = avr(X, RealDimension(2.0), 10.0);
  EXPECT_FALSE(a.certified);
  EXPECT_NEAR(a.value, 1.0, 1e-12);
}

TEST(BishopGromov, Examples) {
  std::vector<double> radii;
  for (int i = 1; i <= 40; ++i) radii.push_back(0.25 * i);
  for (double n : {1.5, 2.0, 3.0})
    EXPECT_TRUE(bishop_gromov_check(WeightedInterval(kHalfLine, Density::monomial(1.0, n - 1.0)),
                                    RealDimension(n), radii)
                    .passed());
  EXPECT_TRUE(bishop_gromov_check(sharp_space(0.5, 1.0, RealDimension(2.0)).space,
                                  RealDimension(2.0), radii)
                  .passed());

  TabulatedDensity t;
  for (int i = 0; i <= 1000; ++i) {
    t.grid.push_back(0.01 * i);
    t.values.push_back(std::exp(0.01 * i));
  }
  const auto v =
      bishop_gromov_check(WeightedInterval(10.0, Density(std::move(t))), RealDimension(2.0), radii);
  ASSERT_EQ(v.status, VerdictStatus::fail);
  EXPECT_GT(v.witness->lhs, v.witness->rhs);
  EXPECT_GT(v.witness->x0, 1.0);
}

TEST(SharpSpace, PlanarExample) {
  const auto s = sharp_space(1.0 / (2.0 * pi), 1.0, RealDimension(2.0));
  EXPECT_NEAR(s.threshold, 1.0, 1e-15);
  EXPECT_NEAR(s.space.h(0.5), 1.0, 1e-15);
  EXPECT_NEAR(s.space.h(3.0), 3.0, 1e-14);
  EXPECT_EQ(check_mcp_density(s.space.density(), kHalfLine, RealDimension(2.0)).status,
            VerdictStatus::pass_exact);
  EXPECT_NEAR(measure(s.space, s.extremal_set), 1.0, 1e-15);
  EXPECT_NEAR(verify_sharpness(1.0 / (2.0 * pi), 1.0, RealDimension(2.0)), 0.0, 1e-15);
}

TEST(SharpSpace, GapVanishesOnGrid) {
  for (double a : {0.1, 1.0, 5.0})
    for (double m : {0.5, 1.0, 10.0})
      for (double n : {1.5, 2.0, 3.0, 5.0})
        EXPECT_LE(std::abs(verify_sharpness(a, m, RealDimension(n))), 1e-10);
  EXPECT_LE(std::abs(verify_sharpness(1.0, 1e-12, RealDimension(2.0))), 1e-15);
}

TEST(MainInequality, RandomUnionsOnMcpSpaces) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> pos(0.0, 6.0);
  std::vector<std::pair<WeightedInterval, double>> spaces;
  for (double n : {1.5, 2.0, 3.0, 5.0}) {
    spaces.emplace_back(cone(n), n);
    spaces.emplace_back(sharp_space(0.4, 1.5, RealDimension(n)).space, n);
    spaces.emplace_back(WeightedInterval(kHalfLine, Density(PiecewiseMonomialDensity{
                                                        {1.0}, {{1.0, 0.0}, {1.0, n - 1.0}}})),
                        n);
  }
  for (const auto& [X, n] : spaces) {
    ASSERT_TRUE(check_mcp_density(X.density(), X.D(), RealDimension(n)).passed());
    const auto a = avr(X, RealDimension(n));
    ASSERT_TRUE(a.certified);
    ASSERT_GT(a.value, 0.0);
    for (int t = 0; t < 200; ++t) {
      std::vector<Interval> parts;
      const int k = 1 + t % 3;
      for (int i = 0; i < k; ++i) {
        double s = pos(rng), e = pos(rng);
        if (s > e) std::swap(s, e);
        parts.push_back({t % 5 == 0 && i == 0 ? 0.0 : s, e});
      }
      const IntervalUnion E(std::move(parts));
      const double lhs = minkowski_content(X, E);
      const double rhs = profile::avr_lower_bound(RealDimension(n), a.value, measure(X, E));
      EXPECT_GE(lhs, rhs - 1e-9);
    }
  }
}
