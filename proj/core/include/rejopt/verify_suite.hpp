#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rejopt/gaussian_linear_model.hpp"
#include "rejopt/numerics.hpp"

namespace rejopt {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20250917;
  /// Added to E(x, D) inside the reject-optimality check only. Nonzero values exist to
  /// show that the gate fails when the epistemic formula is wrong.
  double epistemic_bias = 0.0;
};

/// Posterior of a random polynomial model (degree 1-3) fitted to 0-30 points
/// from a random true process, prior variances in [0.05, 2].
GaussianPosterior random_gaussian_posterior(RngStream& rng);

/// Runs, in order: decomposition, table1_enumeration, mc_regret, theorem1.
std::vector<CheckResult> run_verification_suite(const VerifyOptions& options = {});

}  // namespace rejopt
