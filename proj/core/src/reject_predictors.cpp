#include "rejopt/reject_predictors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rejopt/uncertainty.hpp"

namespace rejopt {

Decision Decision::predict(Action action) {
  if (const auto* pmf = std::get_if<Vector>(&action)) {
    double sum = 0.0;
    for (double p : *pmf) {
      if (!(p >= 0.0)) throw Error(ErrorCode::invalid_argument, "distribution payload has negative entries");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorCode::invalid_argument, "distribution payload must sum to 1");
  }
  return Decision(std::move(action));
}

const Action& Decision::action() const {
  if (!action_) throw Error(ErrorCode::invalid_argument, "reject decision has no prediction");
  return *action_;
}

double Decision::value() const {
  const auto* v = std::get_if<double>(&action());
  if (!v) throw Error(ErrorCode::invalid_argument, "decision does not carry a real value");
  return *v;
}

ClassLabel Decision::label() const {
  const auto* v = std::get_if<ClassLabel>(&action());
  if (!v) throw Error(ErrorCode::invalid_argument, "decision does not carry a class label");
  return *v;
}

const Vector& Decision::distribution() const {
  const auto* v = std::get_if<Vector>(&action());
  if (!v) throw Error(ErrorCode::invalid_argument, "decision does not carry a distribution");
  return *v;
}

void RejectConfig::validate() const {
  if (!(std::isfinite(epsilon) && epsilon >= 0.0 && std::isfinite(delta) && delta >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "rejection costs must be finite and nonnegative");
  }
}

namespace {

Decision gate(double uncertainty, double threshold, Action prediction) {
  return uncertainty <= threshold ? Decision::predict(std::move(prediction)) : Decision::reject();
}

void require_classification(LossKind kind) {
  if (kind == LossKind::squared) {
    throw Error(ErrorCode::invalid_argument, "discrete models support zero_one and cross_entropy losses");
  }
}

}  // namespace

Decision aleatoric_oracle(const TrueProcess& process, double x, double epsilon) {
  return gate(process.variance(x), epsilon, process.mean(x));
}

Decision plug_in_reject(const MlEstimate& est, double x, double epsilon) {
  const auto pred = ml_predict(est, x);
  return gate(pred.plug_in_risk, epsilon, pred.prediction);
}

Decision bayesian_reject(const GaussianPosterior& post, double x, double epsilon) {
  const auto pred = predictive(post, x);
  return gate(pred.variance, epsilon, pred.mean);
}

Decision bayesian_reject(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x, double epsilon,
                         LossKind kind) {
  require_classification(kind);
  return gate(discrete_uncertainty(model, post, x, kind).total, epsilon, bayesian_action(model, post, x, kind));
}

Decision epistemic_reject(const GaussianPosterior& post, double x, double delta) {
  const auto pred = predictive(post, x);
  return gate(pred.epistemic, delta, pred.mean);
}

Decision epistemic_reject(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x, double delta,
                          LossKind kind) {
  require_classification(kind);
  return gate(discrete_uncertainty(model, post, x, kind).epistemic, delta, bayesian_action(model, post, x, kind));
}

double regret_reject_loss(const Decision& decision, const Action& bayes_action, const Target& y, double delta,
                          LossKind kind) {
  if (decision.rejected()) return delta;
  return prediction_loss(kind, y, decision.action()) - prediction_loss(kind, y, bayes_action);
}

std::vector<double> uniform_grid(double upper, std::size_t intervals) {
  if (intervals == 0) return {0.0};
  std::vector<double> grid(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) grid[i] = upper * static_cast<double>(i) / static_cast<double>(intervals);
  return grid;
}

namespace {

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// All points of the simplex with coordinates in multiples of 1/resolution,
// with the resolution lowered until the count stays manageable.
std::vector<Vector> simplex_grid(std::size_t classes) {
  constexpr double kMaxPoints = 2000.0;
  std::size_t resolution = 20;
  while (resolution > 1 && binomial(resolution + classes - 1, classes - 1) > kMaxPoints) --resolution;

  std::vector<Vector> points;
  std::vector<std::size_t> counts(classes, 0);
  auto recurse = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
    if (pos + 1 == classes) {
      counts[pos] = remaining;
      Vector p(classes);
      for (std::size_t i = 0; i < classes; ++i) p[i] = static_cast<double>(counts[i]) / static_cast<double>(resolution);
      points.push_back(std::move(p));
      return;
    }
    for (std::size_t c = 0; c <= remaining; ++c) {
      counts[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  recurse(recurse, 0, resolution);
  return points;
}

// Expected regret-based reject loss of predicting `action` at x under the
// posterior weights, summed over (theta, y) without using any closed form.
double expected_prediction_regret(const DiscreteModel& model, std::span<const double> weights, std::size_t x,
                                  const Action& action, LossKind kind) {
  double total = 0.0;
  for (std::size_t t = 0; t < model.params(); ++t) {
    if (weights[t] == 0.0) continue;
    const Action best = bayes_action(model, t, x, kind);
    for (std::size_t y = 0; y < model.classes(); ++y) {
      const double p = model.likelihood(t, x, y);
      if (p == 0.0) continue;
      total += weights[t] * p * (prediction_loss(kind, y, action) - prediction_loss(kind, y, best));
    }
  }
  return total;
}

}  // namespace

Theorem1Report verify_theorem1(const DiscreteModel& model, std::size_t m, std::span<const double> delta_grid,
                               LossKind kind, double epistemic_bias) {
  require_classification(kind);
  if (model.params() * model.inputs() * model.classes() > kMaxEnumerationCells || m > kMaxEnumerationDatasetSize) {
    throw Error(ErrorCode::enumeration_too_large, "model or dataset size too large for exhaustive verification");
  }

  Theorem1Report report;
  report.loss = kind;

  std::vector<Action> fixed_candidates;
  if (kind == LossKind::zero_one) {
    for (std::size_t y = 0; y < model.classes(); ++y) fixed_candidates.emplace_back(ClassLabel{y});
  } else {
    for (auto& p : simplex_grid(model.classes())) fixed_candidates.emplace_back(std::move(p));
    for (std::size_t t = 0; t < model.params(); ++t)
      for (std::size_t x = 0; x < model.inputs(); ++x) {
        const auto row = model.conditional(t, x);
        fixed_candidates.emplace_back(Vector(row.begin(), row.end()));
      }
  }

  const std::size_t cells = model.inputs() * model.classes();
  std::size_t dataset_count = 1;
  for (std::size_t i = 0; i < m; ++i) dataset_count *= cells;

  std::vector<Observation> data(m);
  for (std::size_t code = 0; code < dataset_count; ++code) {
    std::size_t rest = code;
    double input_probability = 1.0;
    for (auto& obs : data) {
      const std::size_t cell = rest % cells;
      rest /= cells;
      obs = {cell / model.classes(), cell % model.classes()};
      input_probability *= model.input_marginal()[obs.input];
    }
    if (input_probability == 0.0) continue;
    DiscretePosterior post;
    try {
      post = posterior_update(model, data);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::zero_evidence) continue;  // p(D) = 0
      throw;
    }
    ++report.datasets;

    for (std::size_t x = 0; x < model.inputs(); ++x) {
      if (model.input_marginal()[x] == 0.0) continue;
      ++report.cases;

      const Action base = bayesian_action(model, post, x, kind);
      const double epistemic = discrete_uncertainty(model, post, x, kind).epistemic + epistemic_bias;

      double best_prediction = expected_prediction_regret(model, post.weights, x, base, kind);
      for (const auto& a : fixed_candidates)
        best_prediction = std::min(best_prediction, expected_prediction_regret(model, post.weights, x, a, kind));
      report.candidate_actions = fixed_candidates.size() + 2;  // + H_B + Reject

      for (double delta : delta_grid) {
        const Decision chosen = epistemic_bias == 0.0 ? epistemic_reject(model, post, x, delta, kind)
                                                      : gate(epistemic, delta, base);
        const double chosen_loss =
            chosen.rejected() ? delta : expected_prediction_regret(model, post.weights, x, chosen.action(), kind);
        const double optimum = std::min(best_prediction, delta);
        const double gap = chosen_loss - optimum;
        ++report.decisions_checked;
        if (gap > report.max_suboptimality) {
          report.max_suboptimality = gap;
          report.worst_delta = delta;
        }
      }
    }
  }
  return report;
}

}  // namespace rejopt
