#pragma once

#include <cstddef>
#include <string_view>
#include <variant>

#include "rejopt/numerics.hpp"

namespace rejopt {

enum class LossKind { squared, zero_one, cross_entropy };

std::string_view to_string(LossKind kind) noexcept;

struct ClassLabel {
  std::size_t index = 0;
  friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

/// A non-reject prediction: a real value (squared loss), a class label
/// (0/1 loss) or a class distribution (cross-entropy loss).
using Action = std::variant<double, ClassLabel, Vector>;

/// A realized target: real for regression, class index for classification.
using Target = std::variant<double, std::size_t>;

inline double squared_loss(double y, double prediction) noexcept {
  const double d = y - prediction;
  return d * d;
}

inline double zero_one_loss(std::size_t y, ClassLabel prediction) noexcept {
  return y == prediction.index ? 0.0 : 1.0;
}

/// -ln p_y in nats; +inf when p_y == 0.
double cross_entropy_loss(std::size_t y, std::span<const double> pmf);

/// Dispatches on the loss kind; throws InvalidArgument when the action or
/// target type does not fit the loss.
double prediction_loss(LossKind kind, const Target& y, const Action& action);

/// Whether `action` has the payload type the loss expects.
bool action_matches(LossKind kind, const Action& action) noexcept;

}  // namespace rejopt
