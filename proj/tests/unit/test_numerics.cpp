#include <gtest/gtest.h>

#include <cmath>

#include "rejopt/numerics.hpp"
#include "rejopt/text.hpp"
#include "test_support.hpp"

using namespace rejopt;

namespace {

void expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(SolveSpd, DiagonalSystem) {
  const Matrix a(2, 2, {4, 0, 0, 9});
  const Vector x = solve_spd(a, Vector{8, 18});
  EXPECT_NEAR(x[0], 2.0, 1e-15);
  EXPECT_NEAR(x[1], 2.0, 1e-15);
}

TEST(SolveSpd, IdentityReturnsRightHandSide) {
  const Matrix b(3, 2, {1, 2, 3, 4, 5, 6});
  EXPECT_LE(test_support::max_abs_diff(solve_spd(Matrix::identity(3), b), b), 1e-15);
}

TEST(SolveSpd, TwoByTwo) {
  // [[2,1],[1,2]] x = [3,3] has x = [1,1].
  const Vector x = solve_spd(Matrix(2, 2, {2, 1, 1, 2}), Vector{3, 3});
  EXPECT_NEAR(x[0], 1.0, 1e-14);
  EXPECT_NEAR(x[1], 1.0, 1e-14);
}

TEST(SolveSpd, IndefiniteRejected) {
  expect_code(ErrorCode::not_positive_definite, [] { solve_spd(Matrix(2, 2, {1, 2, 2, 1}), Vector{1, 1}); });
}

TEST(SolveSpd, AsymmetricRejected) {
  expect_code(ErrorCode::not_positive_definite, [] { solve_spd(Matrix(2, 2, {2, 1, 0, 2}), Vector{1, 1}); });
}

TEST(SolveSpd, ShapeMismatch) {
  expect_code(ErrorCode::dimension_mismatch, [] { solve_spd(Matrix::identity(2), Vector{1, 2, 3}); });
  expect_code(ErrorCode::dimension_mismatch, [] { solve_spd(Matrix(2, 3), Matrix(2, 1)); });
}

TEST(SolveSpd, RandomResidualProperty) {
  RngStream rng(11, 0);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 1 + rng.uniform_index(12);
    const std::size_t k = 1 + rng.uniform_index(3);
    const Matrix a = test_support::random_spd(rng, n, 1e6);
    Matrix b(n, k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) b(i, j) = rng.standard_normal();
    const Matrix x = solve_spd(a, b);
    const double residual = test_support::max_abs_diff(multiply(a, x), b);
    EXPECT_LE(residual, 1e-9 * max_abs(b)) << "n=" << n;
  }
}

TEST(Cholesky, ReconstructsInput) {
  RngStream rng(12, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 1 + rng.uniform_index(8);
    const Matrix a = test_support::random_spd(rng, n, 1e3);
    const Matrix l = cholesky_factor(a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) EXPECT_EQ(l(i, j), 0.0);
    EXPECT_LE(test_support::max_abs_diff(multiply(l, transpose(l)), a), 1e-12 * max_abs(a));
  }
}

TEST(ConditionNumber, DiagonalRatio) {
  EXPECT_NEAR(spd_condition_number(Matrix::diagonal(Vector{1, 10, 100})), 100.0, 1e-9);
}

TEST(QuadraticForm, Examples) {
  EXPECT_DOUBLE_EQ(quadratic_form(Matrix::identity(2), Vector{1, 1}), 2.0);
  EXPECT_DOUBLE_EQ(quadratic_form(Matrix::diagonal(Vector{2, 3}), Vector{1, 2}), 14.0);
  EXPECT_DOUBLE_EQ(quadratic_form(Matrix::identity(3), Vector{0, 0, 0}), 0.0);
}

TEST(QuadraticForm, NonNegativeForSpd) {
  RngStream rng(13, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.uniform_index(6);
    const Matrix a = test_support::random_spd(rng, n, 1e4);
    EXPECT_GE(quadratic_form(a, sample_standard_normal(rng, n)), 0.0);
  }
}

TEST(QuadraticForm, ShapeMismatch) {
  expect_code(ErrorCode::dimension_mismatch, [] { quadratic_form(Matrix::identity(2), Vector{1}); });
}

TEST(MatrixTest, NonFiniteEntriesRejected) {
  expect_code(ErrorCode::invalid_argument, [] { Matrix(1, 1, {std::nan("")}); });
}

TEST(Rng, EmptyDraw) {
  RngStream rng(1, 1);
  EXPECT_TRUE(sample_standard_normal(rng, 0).empty());
}

TEST(Rng, SameSeedSameStream) {
  RngStream a(99, 4);
  RngStream b(99, 4);
  EXPECT_EQ(sample_standard_normal(a, 50), sample_standard_normal(b, 50));
}

TEST(Rng, StreamsDiffer) {
  RngStream a(99, 4);
  RngStream b(99, 5);
  RngStream c(98, 4);
  const Vector va = sample_standard_normal(a, 8);
  EXPECT_NE(va, sample_standard_normal(b, 8));
  EXPECT_NE(va, sample_standard_normal(c, 8));
}

TEST(Rng, StandardNormalMoments) {
  RngStream rng(2025, 0);
  const std::size_t n = 100000;
  const Vector z = sample_standard_normal(rng, n);
  double mean = 0.0;
  for (double v : z) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : z) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n - 1);
  EXPECT_LT(std::abs(mean), 0.01);
  EXPECT_NEAR(var, 1.0, 0.02);
}

TEST(Rng, UniformOpenInterval) {
  RngStream rng(5, 5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Rng, UniformIndexCoversRange) {
  RngStream rng(6, 0);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 7000; ++i) ++counts[rng.uniform_index(7)];
  for (int c : counts) EXPECT_NEAR(c, 1000, 150);
}

TEST(Text, DoubleRoundTrip) {
  for (double v : {0.1, -3.25, 1e-300, 6.02214076e23, 0.0}) {
    const auto parsed = parse_double(format_double(v));
    ASSERT_TRUE(parsed.has_value());
    EXPECT_EQ(*parsed, v);
  }
  EXPECT_FALSE(parse_double("nan").has_value());
  EXPECT_FALSE(parse_double("1.5x").has_value());
  EXPECT_FALSE(parse_unsigned("-1").has_value());
}
