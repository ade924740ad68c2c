#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rejopt/synthetic_data.hpp"

using namespace rejopt;

TEST(NoiseVariance, Examples) {
  const NoiseSpec spec{};
  EXPECT_NEAR(noise_variance(spec, -8.0), 0.1, 1e-15);
  EXPECT_NEAR(noise_variance(spec, 0.0), 2.66, 1e-12);
  EXPECT_NEAR(noise_variance(spec, 2.0), 4.1, 1e-12);
  EXPECT_NEAR(noise_variance(NoiseSpec{0.5, 0.0, 3.0}, 100.0), 0.5, 1e-15);
}

TEST(NoiseVariance, BoundedBelowByA) {
  const NoiseSpec spec{};
  for (int i = -2000; i <= 2000; ++i) EXPECT_GE(noise_variance(spec, i / 50.0), spec.a);
}

TEST(NoiseVariance, InvalidSpec) {
  EXPECT_THROW((NoiseSpec{0.0, 0.1, 0.0}.validate()), Error);
  EXPECT_THROW((NoiseSpec{0.1, -0.1, 0.0}.validate()), Error);
}

TEST(Polynomial, FeaturesAndHorner) {
  EXPECT_EQ(polynomial_features(2.0, 3), (Vector{1, 2, 4, 8}));
  EXPECT_EQ(polynomial_features(5.0, 0), (Vector{1}));
  const Vector theta{1, -2, 0.5, 0.25};
  for (double x : {-3.0, 0.0, 0.7, 4.0}) {
    const double direct = theta[0] + theta[1] * x + theta[2] * x * x + theta[3] * x * x * x;
    EXPECT_NEAR(evaluate_polynomial(theta, x), direct, 1e-12);
  }
}

TEST(TrueProcess, Example1) {
  const TrueProcess p = example1_process();
  EXPECT_EQ(p.degree, 1u);
  EXPECT_NEAR(p.mean(0.0), 1.0, 1e-15);
  EXPECT_NEAR(p.mean(-8.0), -3.0, 1e-15);
  EXPECT_NEAR(p.variance(-8.0), 0.1, 1e-15);
}

TEST(TrueProcess, DegenerateVarianceReturnsMean) {
  RngStream rng(1, 0);
  const GaussianPrior prior{{0.3, -1.0}, {0.0, 0.0}};
  const TrueProcess p = sample_true_process(prior, 1, NoiseSpec{}, rng);
  EXPECT_EQ(p.theta_star, (Vector{0.3, -1.0}));
}

TEST(TrueProcess, DimensionMismatch) {
  RngStream rng(1, 0);
  EXPECT_THROW(sample_true_process(GaussianPrior::zero_mean({1.0, 1.0}), 3, NoiseSpec{}, rng), Error);
}

TEST(TrueProcess, EmpiricalCovarianceMatchesPrior) {
  const GaussianPrior prior = GaussianPrior::zero_mean({1.0, 0.1, 0.1, 0.1});
  RngStream rng(7, 0);
  const std::size_t n = 20000;
  Vector sum(4, 0.0), sumsq(4, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const TrueProcess p = sample_true_process(prior, 3, NoiseSpec{}, rng);
    for (std::size_t j = 0; j < 4; ++j) {
      sum[j] += p.theta_star[j];
      sumsq[j] += p.theta_star[j] * p.theta_star[j];
    }
  }
  for (std::size_t j = 0; j < 4; ++j) {
    const double mean = sum[j] / n;
    const double var = sumsq[j] / n - mean * mean;
    EXPECT_NEAR(var, prior.variances[j], 0.05 * prior.variances[j]) << j;
    EXPECT_LT(std::abs(mean), 4.0 * std::sqrt(prior.variances[j] / n)) << j;
  }
}

TEST(Dataset, EmptyAndPrefix) {
  RngStream rng(3, 0);
  EXPECT_TRUE(sample_dataset(example1_process(), 0, rng).empty());
  RngStream a(3, 1), b(3, 1);
  const Dataset big = sample_dataset(example1_process(), 20, a);
  const Dataset small = sample_dataset(example1_process(), 5, b);
  EXPECT_EQ(big.prefix(5), small);
  EXPECT_THROW(small.prefix(6), Error);
}

TEST(Dataset, Reproducible) {
  RngStream a(42, 9), b(42, 9);
  EXPECT_EQ(sample_dataset(example1_process(), 5, a), sample_dataset(example1_process(), 5, b));
}

TEST(Dataset, NoiselessLineIsRecovered) {
  TrueProcess p = example1_process();
  p.noise = NoiseSpec{1e-24, 0.0, 0.0};
  RngStream rng(8, 0);
  const Dataset d = sample_dataset(p, 50, rng);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& s : d.pairs) {
    sx += s.x;
    sy += s.y;
    sxx += s.x * s.x;
    sxy += s.x * s.y;
  }
  const double n = 50.0;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  EXPECT_NEAR(slope, 0.5, 1e-9);
  EXPECT_NEAR(intercept, 1.0, 1e-9);
}

TEST(Dataset, StandardizedResidualsAreStandardNormal) {
  const TrueProcess p = example1_process();
  RngStream rng(17, 0);
  const std::size_t n = 100000;
  const Dataset d = sample_dataset(p, n, rng);
  double mean = 0.0, sq = 0.0;
  for (const auto& s : d.pairs) {
    const double r = (s.y - p.mean(s.x)) / std::sqrt(p.variance(s.x));
    mean += r;
    sq += r * r;
  }
  mean /= n;
  const double var = sq / n - mean * mean;
  EXPECT_LT(std::abs(mean), 3.0 / std::sqrt(static_cast<double>(n)));
  EXPECT_NEAR(var, 1.0, 0.05);
}

TEST(Dataset, IndependentBatchesAgree) {
  const TrueProcess p = example1_process();
  RngStream a(5, 0), b(5, 1);
  const std::size_t n = 20000;
  const Dataset da = sample_dataset(p, n, a);
  const Dataset db = sample_dataset(p, n, b);
  auto stats = [&](const Dataset& d) {
    double m = 0, s = 0;
    for (const auto& v : d.pairs) m += v.y;
    m /= n;
    for (const auto& v : d.pairs) s += (v.y - m) * (v.y - m);
    return std::pair{m, s / (n - 1)};
  };
  const auto [ma, va] = stats(da);
  const auto [mb, vb] = stats(db);
  EXPECT_LT(std::abs(ma - mb), 4.0 * std::sqrt(va / n + vb / n));
}

TEST(Dataset, CsvRoundTrip) {
  RngStream rng(4, 0);
  const Dataset d = sample_dataset(example1_process(), 25, rng);
  std::stringstream ss;
  write_dataset_csv(ss, d);
  EXPECT_EQ(read_dataset_csv(ss), d);
}

TEST(Dataset, CsvRejectsBadInput) {
  std::istringstream no_header("1,2\n");
  EXPECT_THROW(read_dataset_csv(no_header), Error);
  std::istringstream bad_row("x,y\n1,abc\n");
  EXPECT_THROW(read_dataset_csv(bad_row), Error);
}
