#include "rejopt/uncertainty.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace rejopt {

std::string_view to_string(LossKind kind) noexcept {
  switch (kind) {
    case LossKind::squared: return "squared";
    case LossKind::zero_one: return "zero_one";
    case LossKind::cross_entropy: return "cross_entropy";
  }
  return "unknown";
}

double cross_entropy_loss(std::size_t y, std::span<const double> pmf) {
  if (y >= pmf.size()) throw Error(ErrorCode::invalid_argument, "class index out of range");
  return pmf[y] > 0.0 ? -std::log(pmf[y]) : std::numeric_limits<double>::infinity();
}

bool action_matches(LossKind kind, const Action& action) noexcept {
  switch (kind) {
    case LossKind::squared: return std::holds_alternative<double>(action);
    case LossKind::zero_one: return std::holds_alternative<ClassLabel>(action);
    case LossKind::cross_entropy: return std::holds_alternative<Vector>(action);
  }
  return false;
}

double prediction_loss(LossKind kind, const Target& y, const Action& action) {
  if (!action_matches(kind, action)) throw Error(ErrorCode::invalid_argument, "action does not match loss kind");
  if (kind == LossKind::squared) {
    if (!std::holds_alternative<double>(y)) throw Error(ErrorCode::invalid_argument, "squared loss needs a real target");
    return squared_loss(std::get<double>(y), std::get<double>(action));
  }
  if (!std::holds_alternative<std::size_t>(y)) {
    throw Error(ErrorCode::invalid_argument, "classification losses need a class target");
  }
  const auto label = std::get<std::size_t>(y);
  if (kind == LossKind::zero_one) return zero_one_loss(label, std::get<ClassLabel>(action));
  return cross_entropy_loss(label, std::get<Vector>(action));
}

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(ErrorCode::dimension_mismatch, "KL arguments differ in length");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    // q is a mixture containing p with positive weight, so q[i] > 0 here.
    assert(q[i] > 0.0);
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return kl;
}

UncertaintyTriple squared_uncertainty(const GaussianPosterior& post, double x) {
  const auto pred = predictive(post, x);
  return {pred.variance, pred.aleatoric, pred.epistemic, LossKind::squared};
}

UncertaintyTriple zero_one_uncertainty(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x) {
  const Vector pmf = predictive_pmf(model, post, x);
  const double max_predictive = pmf[argmax_class(pmf)];
  double expected_max = 0.0;
  double expected_bayes_risk = 0.0;
  for (std::size_t t = 0; t < model.params(); ++t) {
    const double w = post.weights[t];
    if (w == 0.0) continue;
    const auto row = model.conditional(t, x);
    const double top = row[argmax_class(row)];
    expected_max += w * top;
    expected_bayes_risk += w * (1.0 - top);
  }
  return {1.0 - max_predictive, expected_bayes_risk, expected_max - max_predictive, LossKind::zero_one};
}

UncertaintyTriple cross_entropy_uncertainty(const DiscreteModel& model, const DiscretePosterior& post,
                                            std::size_t x) {
  const Vector pmf = predictive_pmf(model, post, x);
  double expected_entropy = 0.0;
  double expected_kl = 0.0;
  for (std::size_t t = 0; t < model.params(); ++t) {
    const double w = post.weights[t];
    if (w == 0.0) continue;
    const auto row = model.conditional(t, x);
    expected_entropy += w * entropy(row);
    expected_kl += w * kl_divergence(row, pmf);
  }
  return {entropy(pmf), expected_entropy, expected_kl, LossKind::cross_entropy};
}

UncertaintyTriple discrete_uncertainty(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x,
                                       LossKind kind) {
  switch (kind) {
    case LossKind::zero_one: return zero_one_uncertainty(model, post, x);
    case LossKind::cross_entropy: return cross_entropy_uncertainty(model, post, x);
    case LossKind::squared: break;
  }
  throw Error(ErrorCode::invalid_argument, "squared loss is not defined for discrete models");
}

Action bayesian_action(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x, LossKind kind) {
  Vector pmf = predictive_pmf(model, post, x);
  switch (kind) {
    case LossKind::zero_one: return ClassLabel{argmax_class(pmf)};
    case LossKind::cross_entropy: return pmf;
    case LossKind::squared: break;
  }
  throw Error(ErrorCode::invalid_argument, "squared loss is not defined for discrete models");
}

Action bayesian_action(const GaussianPosterior& post, double x) { return predictive(post, x).mean; }

Action bayes_action(const DiscreteModel& model, std::size_t theta, std::size_t x, LossKind kind) {
  const auto row = model.conditional(theta, x);
  switch (kind) {
    case LossKind::zero_one: return ClassLabel{argmax_class(row)};
    case LossKind::cross_entropy: return Vector(row.begin(), row.end());
    case LossKind::squared: break;
  }
  throw Error(ErrorCode::invalid_argument, "squared loss is not defined for discrete models");
}

double exact_conditional_regret(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x,
                                LossKind kind) {
  const Action base = bayesian_action(model, post, x, kind);
  double regret = 0.0;
  for (std::size_t t = 0; t < model.params(); ++t) {
    const double w = post.weights[t];
    if (w == 0.0) continue;
    const Action best = bayes_action(model, t, x, kind);
    for (std::size_t y = 0; y < model.classes(); ++y) {
      const double p = model.likelihood(t, x, y);
      if (p == 0.0) continue;
      regret += w * p * (prediction_loss(kind, y, base) - prediction_loss(kind, y, best));
    }
  }
  return regret;
}

namespace {

std::size_t sample_categorical(std::span<const double> p, RngStream& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    cumulative += p[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  return last_positive;  // rounding left u above the final cumulative sum
}

}  // namespace

MonteCarloEstimate mc_conditional_regret(const GaussianPosterior& post, double x, std::size_t n, RngStream& rng) {
  const Matrix chol = cholesky_factor(post.covariance);
  const Vector phi = polynomial_features(x, post.degree);
  const double noise_sd = std::sqrt(noise_variance(post.noise, x));
  const double base = dot(phi, post.mean);
  const std::size_t dim = post.mean.size();

  // theta is represented by its mean response phi^T theta, which is all the
  // squared-loss Bayes rule needs.
  auto sample_mean_response = [&](RngStream& r) {
    Vector theta = post.mean;
    const Vector z = sample_standard_normal(r, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j <= i; ++j) theta[i] += chol(i, j) * z[j];
    return dot(phi, theta);
  };
  auto sample_target = [&](double mean_response, RngStream& r) { return mean_response + noise_sd * r.standard_normal(); };
  auto bayes_rule = [](double mean_response) { return mean_response; };
  return mc_conditional_regret(sample_mean_response, sample_target, bayes_rule, base,
                               [](double y, double prediction) { return squared_loss(y, prediction); }, n, rng);
}

MonteCarloEstimate mc_conditional_regret(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x,
                                         LossKind kind, std::size_t n, RngStream& rng) {
  const Action base = bayesian_action(model, post, x, kind);
  auto sample_theta = [&](RngStream& r) { return sample_categorical(post.weights, r); };
  auto sample_target = [&](std::size_t theta, RngStream& r) { return sample_categorical(model.conditional(theta, x), r); };
  auto bayes_rule = [&](std::size_t theta) { return bayes_action(model, theta, x, kind); };
  auto loss = [kind](std::size_t y, const Action& action) { return prediction_loss(kind, y, action); };
  return mc_conditional_regret(sample_theta, sample_target, bayes_rule, base, loss, n, rng);
}

}  // namespace rejopt
