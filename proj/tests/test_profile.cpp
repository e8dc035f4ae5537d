#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mcpiso/errors.hpp"
#include "mcpiso/numerics.hpp"
#include "mcpiso/profile.hpp"

using namespace mcpiso;
using namespace mcpiso::profile;
using std::numbers::pi;

namespace {

// Independent route: quadrature of the two integrals defining f_{0,N,D}.
double f_by_quadrature(double n, double D, double x) {
  const Tolerance tol{1e-14, 1e-14, 100000};
  const double left = numerics::integrate(
      [=](double y) { return std::pow((D - y) / (D - x), n - 1.0); }, 0.0, x, tol);
  const double right =
      numerics::integrate([=](double y) { return std::pow(y / x, n - 1.0); }, x, D, tol);
  return 1.0 / (left + right);
}

}  // namespace

TEST(EvalF, Examples) {
  EXPECT_NEAR(eval_f(RealDimension(2.0), 1.0, 0.5), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(eval_f(RealDimension(2.0), 2.0, 1.0), 1.0 / 3.0, 1e-15);
}

TEST(EvalF, SmallArgumentBehaviour) {
  for (double n : {1.5, 2.0, 3.0, 5.0}) {
    const double x = 1e-6;
    EXPECT_NEAR(eval_f(RealDimension(n), 1.0, x) / std::pow(x, n - 1.0), n, 1e-3 * n);
  }
}

TEST(EvalF, ClosedFormMatchesQuadratureOracle) {
  for (double n : {1.5, 2.0, 3.0, 5.0, 7.5})
    for (double D : {0.5, 1.0, 2.0, 10.0, 100.0})
      for (int k = 1; k <= 9; ++k) {
        const double x = D * k / 10.0;
        const double closed = eval_f(RealDimension(n), D, x);
        const double oracle = f_by_quadrature(n, D, x);
        EXPECT_LE(std::abs(closed - oracle), 1e-10 * oracle) << n << " " << D << " " << x;
      }
}

TEST(EvalF, DomainErrors) {
  EXPECT_THROW(eval_f(RealDimension(2.0), 1.0, 0.0), DomainError);
  EXPECT_THROW(eval_f(RealDimension(2.0), 1.0, 1.0), DomainError);
  EXPECT_THROW(eval_f(RealDimension(2.0), INFINITY, 1.0), DomainError);
}

TEST(EvalV, Examples) {
  EXPECT_NEAR(eval_v(RealDimension(2.0), 1.0, 0.5), 0.5, 1e-12);
  EXPECT_LT(eval_v(RealDimension(2.0), 1.0, 1e-10), 1e-18);
  EXPECT_NEAR(eval_v(RealDimension(3.0), 1.0, 1.0 - 1e-9), 1.0, 1e-8);
}

TEST(EvalV, MatchesDefinition) {
  // f(a) (D^N - (D-a)^N) / (N (D-a)^{N-1}) computed naively.
  for (double n : {1.5, 2.0, 3.0, 5.0})
    for (double D : {0.5, 3.0})
      for (int k = 1; k < 10; ++k) {
        const double a = D * k / 10.0;
        const double naive = eval_f(RealDimension(n), D, a) *
                             (std::pow(D, n) - std::pow(D - a, n)) /
                             (n * std::pow(D - a, n - 1.0));
        EXPECT_NEAR(eval_v(RealDimension(n), D, a), naive, 1e-13);
      }
}

TEST(EvalV, StrictlyIncreasing) {
  for (double n : {1.5, 2.0, 3.0, 5.0}) {
    double prev = 0.0;
    for (int k = 1; k < 1000; ++k) {
      const double v = eval_v(RealDimension(n), 1.0, k / 1000.0);
      EXPECT_GT(v, prev) << "N=" << n << " a=" << k / 1000.0;
      prev = v;
    }
  }
}

TEST(InvertV, Examples) {
  EXPECT_NEAR(invert_v(RealDimension(2.0), 1.0, 0.5), 0.5, 1e-12);
  for (double n : {1.5, 2.0, 3.0, 5.0}) {
    const double v = 1e-8;
    const double approx = std::pow(n, -1.0 / n) * std::pow(v, 1.0 / n);
    EXPECT_NEAR(invert_v(RealDimension(n), 1.0, v) / approx, 1.0, 1e-2);
  }
}

TEST(InvertV, RoundTrip) {
  for (double n : {1.5, 2.0, 3.0, 5.0})
    for (double D : {0.5, 1.0, 7.0})
      for (int k = 1; k < 40; ++k) {
        const double a = D * k / 40.0;
        const double v = eval_v(RealDimension(n), D, a);
        EXPECT_NEAR(invert_v(RealDimension(n), D, v), a, 1e-10 * D);
      }
}

TEST(ProfileMcp, Examples) {
  const auto p = profile_mcp(RealDimension(2.0), 1.0, 0.5);
  EXPECT_NEAR(p.profile, 2.0 / 3.0, 1e-10);
  EXPECT_NEAR(p.a, 0.5, 1e-12);
  EXPECT_EQ(p.profile, p.f_at_a);
  EXPECT_EQ(profile_mcp(RealDimension(3.0), 2.0, 0.0).profile, 0.0);
  EXPECT_EQ(profile_mcp(RealDimension(3.0), 2.0, 1.0).profile, 0.0);
  const double small = profile_mcp(RealDimension(2.0), 1.0, 1e-8).profile;
  EXPECT_NEAR(small / (std::sqrt(2.0) * 1e-4), 1.0, 1e-2);
  EXPECT_THROW(profile_mcp(RealDimension(2.0), 1.0, 1.5), DomainError);
  EXPECT_THROW(profile_mcp(RealDimension(2.0), INFINITY, 0.5), DomainError);
}

TEST(ProfileMcp, ExpansionLimit) {
  // The remainder is O(a) relative, with a ~ (v/N)^{1/N}: at fixed v it is
  // largest for big N, so drive a (not v) to a common small size.
  for (double n : {1.5, 2.0, 3.0, 5.0}) {
    const double lead = expansion_leading_coefficient(RealDimension(n));
    double prev = INFINITY;
    for (double a : {1e-2, 1e-3, 1e-4}) {
      const double v = n * std::pow(a, n);
      const double ratio = profile_mcp(RealDimension(n), 1.0, v).profile / std::pow(v, (n - 1.0) / n);
      const double rel = std::abs(ratio - lead) / lead;
      EXPECT_LT(rel, prev) << n << " " << a;
      prev = rel;
    }
    EXPECT_LE(prev, 1e-2) << n;
  }
}

TEST(ProfileMcp, ExpansionRemainderAtFixedVolume) {
  // 40-digit reference values at v = 1e-8 (mpmath root of v_{0,N,1} = v).
  const std::pair<double, double> ref[] = {{1.5, 1.310370307392753734628825581899506920083},
                                           {2.0, 1.414188558174523528169053432755188249091},
                                           {3.0, 1.440812920549722196841745900237544519727},
                                           {5.0, 1.339694581080943892737364365506919896971}};
  for (auto [n, expected] : ref) {
    const double ratio = profile_mcp(RealDimension(n), 1.0, 1e-8).profile / std::pow(1e-8, (n - 1.0) / n);
    EXPECT_NEAR(ratio, expected, 1e-9 * expected) << n;
  }
}

TEST(ProfileMcp, ScalingLemma) {
  for (double n : {1.5, 2.0, 3.0, 5.0})
    for (double D : {0.5, 1.0, 2.0, 10.0})
      for (int k = 1; k <= 20; ++k) {
        const double v = k == 20 ? 0.99 : 0.05 * k;
        const double scaled = D * profile_mcp(RealDimension(n), D, v).profile;
        const double unit = profile_mcp(RealDimension(n), 1.0, v).profile;
        EXPECT_GE(scaled, unit - 1e-9);
      }
}

TEST(ProfileMcp, PositiveInside) {
  for (double n : {1.5, 2.0, 3.0})
    for (int k = 1; k < 50; ++k) EXPECT_GT(profile_mcp(RealDimension(n), 1.0, k / 50.0).profile, 0.0);
}

TEST(Expansion, LeadingCoefficient) {
  EXPECT_NEAR(expansion_leading_coefficient(RealDimension(2.0)), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(expansion_leading_coefficient(RealDimension(4.0)), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(expansion_leading_coefficient(RealDimension(1.0 + 1e-9)), 1.0, 1e-8);
}

TEST(Bounds, Examples) {
  const RealDimension two(2.0);
  EXPECT_NEAR(avr_lower_bound(two, 1.0, pi), std::sqrt(2.0) * pi, 1e-14);
  EXPECT_NEAR(cd_lower_bound(two, 1.0, pi), 2.0 * pi, 1e-14);
  EXPECT_EQ(avr_lower_bound(two, 0.0, pi), 0.0);
  EXPECT_EQ(avr_lower_bound(two, 1.0, 0.0), 0.0);
  EXPECT_EQ(cd_lower_bound(two, 0.0, 3.0), 0.0);
  EXPECT_THROW(avr_lower_bound(two, -1.0, 1.0), DomainError);
}

TEST(Bounds, RatioAndOrdering) {
  for (double n : {1.5, 2.0, 3.0, 5.0, 9.0})
    for (double avr : {0.0, 0.1, 1.0, 5.0})
      for (double mass : {0.0, 0.5, 1.0, 10.0}) {
        const double mcp = avr_lower_bound(RealDimension(n), avr, mass);
        const double cd = cd_lower_bound(RealDimension(n), avr, mass);
        EXPECT_LE(mcp, cd);
        if (avr * mass == 0.0) {
          EXPECT_EQ(mcp, cd);
        } else {
          EXPECT_LT(mcp, cd);
          EXPECT_NEAR(cd / mcp, std::pow(n, (n - 1.0) / n), 1e-13 * cd / mcp);
        }
      }
}
