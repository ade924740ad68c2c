#pragma once

#include <string>
#include <string_view>

#include "rejopt/gaussian_prior.hpp"
#include "rejopt/numerics.hpp"
#include "rejopt/synthetic_data.hpp"

namespace rejopt {

/// m x (degree + 1) design matrix, row i = [1, x_i, ..., x_i^degree].
Matrix design_matrix(const Dataset& data, std::size_t degree);

/// Heteroscedastic weighted least-squares (maximum-likelihood) estimate.
struct MlEstimate {
  Vector theta_hat;
  std::size_t degree = 0;
  NoiseSpec noise;
};

/// Normal-equations matrices with condition number above this are treated as
/// singular.
inline constexpr double kMaxNormalEquationsCondition = 1e10;

/// theta_hat = (X^T S^-1 X)^-1 X^T S^-1 y with S = diag(v(x_i)).
/// Throws SingularDesign when X^T S^-1 X is not safely invertible.
MlEstimate fit_ml(const Dataset& data, std::size_t degree, const NoiseSpec& noise);

struct GaussianPosterior {
  Vector mean;
  Matrix covariance;
  std::size_t degree = 0;
  NoiseSpec noise;
};

/// Exact conjugate posterior with known noise:
///   Sigma_m = (X^T S^-1 X + Lambda^-1)^-1
///   mu_m    = Sigma_m (X^T S^-1 y + Lambda^-1 mu_0)
/// Empty data returns the prior unchanged. Prior variances must be > 0.
GaussianPosterior fit_posterior(const Dataset& data, const GaussianPrior& prior, std::size_t degree,
                                const NoiseSpec& noise);

/// Predictive N(mean, aleatoric + epistemic) of y at x.
struct PredictiveNormal {
  double mean = 0.0;
  double variance = 0.0;
  double aleatoric = 0.0;  ///< v(x)
  double epistemic = 0.0;  ///< phi(x)^T Sigma_m phi(x)
};

PredictiveNormal predictive(const GaussianPosterior& post, double x);

struct PlugInPrediction {
  double prediction = 0.0;
  /// Conditional risk of the plug-in predictor under squared loss, which is
  /// the known noise variance v(x).
  double plug_in_risk = 0.0;
};

PlugInPrediction ml_predict(const MlEstimate& est, double x);

// JSON records: {"degree", "noise": {"a","b","c"}, "mean" | "theta_hat",
// "covariance": {"rows","cols","data"}} with row-major covariance.
std::string to_json(const GaussianPosterior& post);
std::string to_json(const MlEstimate& est);
GaussianPosterior posterior_from_json(std::string_view text);
MlEstimate ml_estimate_from_json(std::string_view text);

}  // namespace rejopt
