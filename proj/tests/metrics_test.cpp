// SPDX-License-Identifier: Apache-2.0
#include "lambdap/metrics.hpp"

#include <gtest/gtest.h>

#include "lambdap/error.hpp"
#include "lambdap/families.hpp"
#include "test_oracles.hpp"

namespace lambdap {
namespace {

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

TEST(ExponentTest, Domain) {
  EXPECT_THROW(Exponent(0.5), Error);
  EXPECT_THROW(Exponent(std::numeric_limits<double>::infinity()), Error);
  EXPECT_EQ(Exponent(1.5).value(), 1.5);
}

TEST(LpNormTest, Examples) {
  const auto s = make_space({1, 1});
  const SimpleFunction f(s, {3, 0.5});
  EXPECT_DOUBLE_EQ(oracle::lp({1, 1}, {3, 0.5}, 1), 3.5);
  EXPECT_EQ(lp_norm(s, f, Exponent(1)), 3.5);
  EXPECT_EQ(lp_norm(s, SimpleFunction(s, {0, 0}), Exponent(2)), 0.0);
  const auto s4 = make_space({4});
  EXPECT_DOUBLE_EQ(oracle::lp({4}, {2}, 2), 4.0);
  EXPECT_EQ(lp_norm(s4, SimpleFunction(s4, {2}), Exponent(2)), 4.0);
}

TEST(FnormTest, Examples) {
  const auto s = make_space({1, 1});
  EXPECT_DOUBLE_EQ(oracle::fnorm({1, 1}, {3, 0.5}, 1), 1.5);
  EXPECT_EQ(fnorm(s, SimpleFunction(s, {3, 0.5}), Exponent(1)), 1.5);
  EXPECT_EQ(fnorm(s, SimpleFunction(s, {0, 0}), Exponent(1)), 0.0);
  const SimpleFunction small(s, {0.25, -0.75});
  EXPECT_EQ(fnorm(s, small, Exponent(1.5)), lp_norm(s, small, Exponent(1.5)));
}

TEST(FnormTest, NotHomogeneous) {
  const auto s = make_space({1});
  EXPECT_EQ(fnorm(s, SimpleFunction(s, {4}), Exponent(1)), fnorm(s, SimpleFunction(s, {2}), Exponent(1)));
}

TEST(LambdaDistanceTest, Examples) {
  const auto s = make_space({1, 1});
  const SimpleFunction zero(s, {0, 0}), g(s, {3, 0.5});
  EXPECT_EQ(lambda_distance(s, zero, zero, Exponent(1)), 0.0);
  EXPECT_EQ(lambda_distance(s, zero, g, Exponent(1)), 1.5);

  const std::size_t n = 7;
  const auto unit = make_space(std::vector<double>(n, 1.0));
  std::vector<double> a(n, 0.0), b(n, 0.0);
  a[2] = 1;
  b[5] = 1;
  EXPECT_DOUBLE_EQ(oracle::fnorm(std::vector<double>(n, 1.0), oracle::minus(a, b), 1), 2.0);
  EXPECT_EQ(lambda_distance(unit, SimpleFunction(unit, a), SimpleFunction(unit, b), Exponent(1)), 2.0);
}

TEST(LambdaDistanceTest, SymmetricAndSeparating) {
  SplitMix64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const auto s = random_space(rng, 16);
    const auto f = random_function(rng, s), g = random_function(rng, s);
    const Exponent p(1.5);
    EXPECT_EQ(lambda_distance(s, f, g, p), lambda_distance(s, g, f, p));
    EXPECT_EQ(lambda_distance(s, f, f, p), 0.0);
    if (f != g) EXPECT_GT(lambda_distance(s, f, g, p), 0.0);
  }
}

TEST(MeasureBridgeTest, Examples) {
  const auto s = make_space({1, 1});
  const auto zero = measure_bridge_bounds(s, SimpleFunction(s, {0, 0}), Exponent(1), 0.3);
  EXPECT_EQ(zero.lower, 0.0);
  EXPECT_DOUBLE_EQ(zero.upper, 0.3 * 2);

  const auto b = measure_bridge_bounds(s, SimpleFunction(s, {3, 0.5}), Exponent(1), 0.5);
  EXPECT_EQ(b.lower, 0.5);
  EXPECT_EQ(b.upper, 2.0);
  EXPECT_EQ(fnorm_pow(s, SimpleFunction(s, {3, 0.5}), Exponent(1)), 1.5);

  const auto s10 = make_space({10});
  const auto c = measure_bridge_bounds(s10, SimpleFunction(s10, {0.6}), Exponent(2), 0.5);
  EXPECT_EQ(c.lower, 2.5);
  EXPECT_EQ(c.upper, 12.5);
  EXPECT_DOUBLE_EQ(fnorm_pow(s10, SimpleFunction(s10, {0.6}), Exponent(2)), 3.6);
}

TEST(MeasureBridgeTest, RejectsDelta) {
  const auto s = make_space({1});
  const SimpleFunction g(s, {1});
  EXPECT_THROW(measure_bridge_bounds(s, g, Exponent(1), 0.0), Error);
  EXPECT_THROW(measure_bridge_bounds(s, g, Exponent(1), 1.5), Error);
  EXPECT_NO_THROW(measure_bridge_bounds(s, g, Exponent(1), 1.0));
}

// Randomized comparisons against the long-double oracle and the norm
// inequalities.
TEST(MetricsPropertyTest, AgainstOracleAndInequalities) {
  SplitMix64 rng(2024);
  for (int t = 0; t < 3000; ++t) {
    const auto s = random_space(rng, 32);
    const auto f = random_function(rng, s), g = random_function(rng, s), h = random_function(rng, s);
    const double pv = std::array{1.0, 1.5, 2.0, 3.25}[rng.below(4)];
    const Exponent p(pv);
    const auto w = vec(s.weights());

    const double lp = lp_norm(s, f, p), fn = fnorm(s, f, p);
    EXPECT_NEAR(lp, oracle::lp(w, vec(f.values()), pv), 1e-12 * std::max(1.0, lp));
    EXPECT_NEAR(fn, oracle::fnorm(w, vec(f.values()), pv), 1e-12 * std::max(1.0, fn));
    EXPECT_TRUE(leq_tol(fn, lp));
    EXPECT_TRUE(leq_tol(fn, root(s.total_measure(), p)));

    const double fh = lambda_distance(s, f, h, p);
    EXPECT_TRUE(leq_tol(fh, lambda_distance(s, f, g, p) + lambda_distance(s, g, h, p)));
    EXPECT_TRUE(leq_tol(lambda_distance(s, f, g, p), lp_distance(s, f, g, p)));

    const double delta = std::max(rng.uniform01(), 1e-6);
    const auto b = measure_bridge_bounds(s, g, p, delta);
    const double mid = fnorm_pow(s, g, p);
    EXPECT_TRUE(leq_tol(b.lower, mid));
    EXPECT_TRUE(leq_tol(mid, b.upper));
  }
}

}  // namespace
}  // namespace lambdap
