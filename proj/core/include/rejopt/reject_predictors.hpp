#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rejopt/discrete_model.hpp"
#include "rejopt/gaussian_linear_model.hpp"
#include "rejopt/losses.hpp"
#include "rejopt/synthetic_data.hpp"

namespace rejopt {

/// Either a prediction payload or the reject action.
class Decision {
 public:
  static Decision reject() { return Decision(); }
  /// Throws InvalidArgument if a distribution payload is not on the simplex.
  static Decision predict(Action action);

  bool rejected() const noexcept { return !action_.has_value(); }
  bool accepted() const noexcept { return action_.has_value(); }

  /// Prediction payload; throws InvalidArgument on a reject decision.
  const Action& action() const;
  double value() const;
  ClassLabel label() const;
  const Vector& distribution() const;

  friend bool operator==(const Decision&, const Decision&) = default;

 private:
  Decision() = default;
  explicit Decision(Action action) : action_(std::move(action)) {}

  std::optional<Action> action_;
};

/// Rejection costs: epsilon for risk-based rules, delta for regret-based ones.
struct RejectConfig {
  double epsilon = 0.0;
  double delta = 0.0;

  void validate() const;
};

// All rules accept when the uncertainty is <= the threshold.

/// Chow's rule with the true process known (squared loss): predict
/// f(x; theta*) when v(x) <= epsilon.
Decision aleatoric_oracle(const TrueProcess& process, double x, double epsilon);

/// Plug-in ML rule: predict phi(x)^T theta_hat when v(x) <= epsilon.
Decision plug_in_reject(const MlEstimate& est, double x, double epsilon);

/// Bayesian rule Q_B: predict H_B(x, D) when T(x, D) <= epsilon.
Decision bayesian_reject(const GaussianPosterior& post, double x, double epsilon);
Decision bayesian_reject(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x, double epsilon,
                         LossKind kind);

/// Epistemic rule Q_E: predict H_B(x, D) when E(x, D) <= delta.
Decision epistemic_reject(const GaussianPosterior& post, double x, double delta);
Decision epistemic_reject(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x, double delta,
                          LossKind kind);

/// Regret-based reject loss: l(d, y) - l(h(x, theta), y) when predicting,
/// delta when rejecting. The predicting branch can be negative.
double regret_reject_loss(const Decision& decision, const Action& bayes_action, const Target& y, double delta,
                          LossKind kind);

struct Theorem1Report {
  LossKind loss = LossKind::zero_one;
  std::size_t datasets = 0;         ///< ordered datasets with positive probability
  std::size_t cases = 0;            ///< reachable (x, D) pairs
  std::size_t decisions_checked = 0;  ///< cases x delta grid points
  std::size_t candidate_actions = 0;  ///< actions compared per decision
  double max_suboptimality = 0.0;
  double worst_delta = 0.0;
};

/// Upper bound on params * inputs * classes for exhaustive verification.
inline constexpr std::size_t kMaxEnumerationCells = 64;
inline constexpr std::size_t kMaxEnumerationDatasetSize = 2;

/// Exhaustive check that the epistemic rule attains the pointwise minimum of
/// the expected regret-based reject loss.
///
/// Every ordered dataset D in (X x Y)^m with p(D) > 0 and every input x with
/// p(x) > 0 is enumerated. For each delta on the grid, the expected loss of
/// each candidate action under p(theta, y | x, D) is summed directly and
/// compared with the action chosen by epistemic_reject. Candidate actions are
/// every class plus Reject for 0/1 loss; for cross-entropy they are Reject,
/// the predictive pmf, every conditional p(.|x, theta) and a fixed grid over
/// the simplex (the continuous action set cannot be enumerated).
///
/// `epistemic_bias` is added to E(x, D) before the accept test; it exists so
/// that tests can confirm the check detects a wrong gate.
///
/// Throws EnumerationTooLarge when the model or m exceeds the limits above.
Theorem1Report verify_theorem1(const DiscreteModel& model, std::size_t m, std::span<const double> delta_grid,
                               LossKind kind, double epistemic_bias = 0.0);

/// {0, step, 2 step, ..., upper}.
std::vector<double> uniform_grid(double upper, std::size_t intervals);

}  // namespace rejopt
