#pragma once

#include "rejopt/numerics.hpp"

namespace rejopt {

/// Gaussian prior N(mean, diag(variances)) over basis coefficients, ordered
/// by ascending polynomial degree.
struct GaussianPrior {
  Vector mean;
  Vector variances;

  /// Zero-mean prior with the given diagonal variances.
  static GaussianPrior zero_mean(Vector variances);

  std::size_t dimension() const noexcept { return variances.size(); }
  Matrix covariance() const { return Matrix::diagonal(variances); }

  /// Lengths agree and every variance is finite and >= 0. Inference
  /// additionally requires strictly positive variances, see fit_posterior.
  void validate() const;
};

}  // namespace rejopt
