#pragma once

#include <cmath>
#include <cstddef>

#include "rejopt/discrete_model.hpp"
#include "rejopt/gaussian_linear_model.hpp"
#include "rejopt/losses.hpp"

namespace rejopt {

/// Total, aleatoric and epistemic uncertainty at one input; T = A + E.
struct UncertaintyTriple {
  double total = 0.0;
  double aleatoric = 0.0;
  double epistemic = 0.0;
  LossKind loss = LossKind::squared;
};

/// Shannon entropy in nats, 0 log 0 = 0.
double entropy(std::span<const double> p);
/// KL(p || q) in nats over the support of p.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// A = v(x), E = phi(x)^T Sigma_m phi(x), T = A + E.
UncertaintyTriple squared_uncertainty(const GaussianPosterior& post, double x);

/// T = 1 - max_y p(y|x,D)
/// E = sum_theta w(theta) max_y p(y|x,theta) - max_y p(y|x,D)
/// A = sum_theta w(theta) (1 - max_y p(y|x,theta))
UncertaintyTriple zero_one_uncertainty(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x);

/// T = H[p(y|x,D)], A = sum_theta w H[p(y|x,theta)],
/// E = sum_theta w KL(p(y|x,theta) || p(y|x,D)); all in nats.
UncertaintyTriple cross_entropy_uncertainty(const DiscreteModel& model, const DiscretePosterior& post,
                                            std::size_t x);

/// zero_one or cross_entropy by kind.
UncertaintyTriple discrete_uncertainty(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x,
                                       LossKind kind);

/// Bayesian predictor H_B(x, D): argmax of the predictive pmf (0/1) or the
/// predictive pmf itself (cross-entropy).
Action bayesian_action(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x, LossKind kind);
Action bayesian_action(const GaussianPosterior& post, double x);

/// Bayes predictor h(x, theta) for a known grid parameter.
Action bayes_action(const DiscreteModel& model, std::size_t theta, std::size_t x, LossKind kind);

/// Conditional regret by full enumeration over (theta, y):
///   sum_theta sum_y w(theta) p(y|x,theta) [l(y, H_B) - l(y, h(x,theta))].
/// Only zero_one and cross_entropy are enumerable.
double exact_conditional_regret(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x,
                                LossKind kind);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kMinMonteCarloSamples = 1000;

/// Monte-Carlo conditional regret: mean of l(y, H_B) - l(y, h(x, theta))
/// over n joint draws theta ~ p(theta|D), y ~ p(y|x,theta).
///
/// `sample_theta(rng)` draws a parameter, `sample_target(theta, rng)` a
/// target, `bayes_rule(theta)` returns h(x, theta) and `loss(y, action)`
/// evaluates the prediction loss.
template <class ThetaSampler, class TargetSampler, class BayesRule, class ActionT, class Loss>
MonteCarloEstimate mc_conditional_regret(ThetaSampler&& sample_theta, TargetSampler&& sample_target,
                                         BayesRule&& bayes_rule, const ActionT& base_prediction, Loss&& loss,
                                         std::size_t n, RngStream& rng) {
  if (n < kMinMonteCarloSamples) {
    throw Error(ErrorCode::invalid_argument, "mc_conditional_regret needs at least 1000 samples");
  }
  // Welford running mean / variance.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto theta = sample_theta(rng);
    const auto y = sample_target(theta, rng);
    const double regret = loss(y, base_prediction) - loss(y, bayes_rule(theta));
    const double delta = regret - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (regret - mean);
  }
  const double variance = m2 / static_cast<double>(n - 1);
  return {mean, std::sqrt(variance / static_cast<double>(n)), n};
}

/// Gaussian posterior, squared loss. The posterior covariance must be
/// positive definite.
MonteCarloEstimate mc_conditional_regret(const GaussianPosterior& post, double x, std::size_t n, RngStream& rng);

/// Discrete model, 0/1 or cross-entropy loss.
MonteCarloEstimate mc_conditional_regret(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x,
                                         LossKind kind, std::size_t n, RngStream& rng);

}  // namespace rejopt
