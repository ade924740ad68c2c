#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "rejopt/gaussian_prior.hpp"
#include "rejopt/numerics.hpp"

namespace rejopt {

/// Heteroscedastic noise variance v(x) = a + b (x + c)^2.
struct NoiseSpec {
  double a = 0.1;
  double b = 0.04;
  double c = 8.0;

  /// a > 0 and b >= 0, all finite.
  void validate() const;
  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

double noise_variance(const NoiseSpec& spec, double x);

/// [1, x, x^2, ..., x^degree]
Vector polynomial_features(double x, std::size_t degree);

/// Polynomial f(x; theta) with ascending-degree coefficients.
double evaluate_polynomial(std::span<const double> coefficients, double x);

/// Ground-truth regression process: x ~ N(0, 1), y ~ N(f(x; theta*), v(x)).
struct TrueProcess {
  Vector theta_star;
  std::size_t degree = 0;
  NoiseSpec noise;

  double mean(double x) const { return evaluate_polynomial(theta_star, x); }
  double variance(double x) const { return noise_variance(noise, x); }
};

struct Sample {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Dataset {
  std::vector<Sample> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
  /// First n pairs.
  Dataset prefix(std::size_t n) const;
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Draws theta* from a diagonal Gaussian prior of dimension degree + 1.
TrueProcess sample_true_process(const GaussianPrior& prior, std::size_t degree, const NoiseSpec& noise,
                                RngStream& rng);

/// m i.i.d. pairs, x drawn before y for each pair.
Dataset sample_dataset(const TrueProcess& process, std::size_t m, RngStream& rng);

/// The linear running example: mu(x) = 0.5 x + 1 with the default noise.
TrueProcess example1_process();

/// CSV with header "x,y", shortest round-trip decimal representation.
void write_dataset_csv(std::ostream& out, const Dataset& data);
Dataset read_dataset_csv(std::istream& in);

}  // namespace rejopt
