#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rejopt/numerics.hpp"

namespace rejopt {

/// Finite-parameter Bayesian classifier with p(x, y | theta) = p(x) p(y | x, theta).
///
/// The likelihood table is indexed [theta][x][y]. Construction validates the
/// simplex invariants: every conditional, the prior and the input marginal
/// sum to one within 1e-12 with entries in [0, 1].
class DiscreteModel {
 public:
  DiscreteModel(std::size_t classes, std::size_t params, std::size_t inputs, Vector prior,
                Vector input_marginal, std::vector<double> likelihood);

  std::size_t classes() const noexcept { return classes_; }
  std::size_t params() const noexcept { return params_; }
  std::size_t inputs() const noexcept { return inputs_; }
  const Vector& prior() const noexcept { return prior_; }
  const Vector& input_marginal() const noexcept { return input_marginal_; }

  double likelihood(std::size_t theta, std::size_t x, std::size_t y) const noexcept {
    return likelihood_[(theta * inputs_ + x) * classes_ + y];
  }
  /// p(. | x, theta) as a span of length classes().
  std::span<const double> conditional(std::size_t theta, std::size_t x) const noexcept {
    return {likelihood_.data() + (theta * inputs_ + x) * classes_, classes_};
  }

  /// Same model with a different prior, e.g. a posterior for sequential updates.
  DiscreteModel with_prior(Vector prior) const;

  std::string to_json() const;
  static DiscreteModel from_json(std::string_view text);

 private:
  std::size_t classes_;
  std::size_t params_;
  std::size_t inputs_;
  Vector prior_;
  Vector input_marginal_;
  std::vector<double> likelihood_;
};

DiscreteModel load_discrete_model(const std::filesystem::path& path);

struct Observation {
  std::size_t input = 0;
  std::size_t label = 0;
};

struct DiscretePosterior {
  Vector weights;
};

/// Bayes rule over the parameter grid, accumulated in log space. Empty data
/// returns the prior. Throws ZeroEvidence when the data is impossible under
/// every parameter.
DiscretePosterior posterior_update(const DiscreteModel& model, std::span<const Observation> data);

/// p(y | x, D) = sum_theta w(theta) p(y | x, theta).
Vector predictive_pmf(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x);

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax_class(std::span<const double> p);

/// Random model with Dirichlet(1) rows. A fraction of conditionals is made
/// deterministic (one-hot) so edge cases with zero probabilities get covered.
DiscreteModel random_discrete_model(RngStream& rng, std::size_t classes, std::size_t params, std::size_t inputs,
                                    double one_hot_fraction = 0.1);

/// Dirichlet(1) weights over the parameter grid.
DiscretePosterior random_discrete_posterior(RngStream& rng, std::size_t params);

}  // namespace rejopt
