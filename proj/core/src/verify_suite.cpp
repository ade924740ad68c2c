#include "rejopt/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rejopt/discrete_model.hpp"
#include "rejopt/reject_predictors.hpp"
#include "rejopt/uncertainty.hpp"

namespace rejopt {

namespace {

enum Stream : std::uint64_t {
  kDecompositionStream = 1,
  kEnumerationStream,
  kMonteCarloStream,
  kTheoremStream,
};

CheckResult decomposition_check(std::uint64_t seed) {
  RngStream rng(seed, kDecompositionStream);
  double gaussian_dev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto post = random_gaussian_posterior(rng);
    const double x = 3.0 * rng.standard_normal();
    const auto u = squared_uncertainty(post, x);
    gaussian_dev = std::max(gaussian_dev, std::abs(u.total - u.aleatoric - u.epistemic));
  }
  double discrete_dev = 0.0;
  double min_epistemic = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto model = random_discrete_model(rng, 2 + rng.uniform_index(4), 1 + rng.uniform_index(6),
                                             1 + rng.uniform_index(4));
    const auto post = random_discrete_posterior(rng, model.params());
    const std::size_t x = rng.uniform_index(model.inputs());
    for (LossKind kind : {LossKind::zero_one, LossKind::cross_entropy}) {
      const auto u = discrete_uncertainty(model, post, x, kind);
      discrete_dev = std::max(discrete_dev, std::abs(u.total - u.aleatoric - u.epistemic));
      min_epistemic = std::min(min_epistemic, u.epistemic);
    }
  }
  CheckResult r{"decomposition", gaussian_dev <= 1e-9 && discrete_dev <= 1e-12 && min_epistemic >= -1e-12,
                std::max(gaussian_dev, discrete_dev), 1e-12, {}};
  std::ostringstream detail;
  detail << "gaussian |T-A-E| " << gaussian_dev << " (tol 1e-9), discrete " << discrete_dev
         << " (tol 1e-12), min E " << min_epistemic;
  r.detail = detail.str();
  return r;
}

CheckResult enumeration_check(std::uint64_t seed) {
  RngStream rng(seed, kEnumerationStream);
  double dev = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto model = random_discrete_model(rng, 2 + rng.uniform_index(4), 1 + rng.uniform_index(6),
                                             1 + rng.uniform_index(4));
    const auto post = random_discrete_posterior(rng, model.params());
    const std::size_t x = rng.uniform_index(model.inputs());
    for (LossKind kind : {LossKind::zero_one, LossKind::cross_entropy}) {
      const double closed = discrete_uncertainty(model, post, x, kind).epistemic;
      dev = std::max(dev, std::abs(closed - exact_conditional_regret(model, post, x, kind)));
    }
  }
  return {"table1_enumeration", dev <= 1e-12, dev, 1e-12, "500 random models, zero_one and cross_entropy"};
}

CheckResult monte_carlo_check(std::uint64_t seed) {
  RngStream rng(seed, kMonteCarloStream);
  constexpr int kCases = 20;
  constexpr std::size_t kSamples = 200000;
  int gaussian_hits = 0;
  double worst_z = 0.0;
  for (int i = 0; i < kCases; ++i) {
    const auto post = random_gaussian_posterior(rng);
    const double x = rng.standard_normal();
    const auto mc = mc_conditional_regret(post, x, kSamples, rng);
    const double z = std::abs(mc.estimate - squared_uncertainty(post, x).epistemic) / mc.standard_error;
    worst_z = std::max(worst_z, z);
    if (z <= 3.0) ++gaussian_hits;
  }
  int discrete_hits = 0;
  for (int i = 0; i < kCases; ++i) {
    const auto model = random_discrete_model(rng, 2 + rng.uniform_index(3), 2 + rng.uniform_index(4), 2);
    const auto post = random_discrete_posterior(rng, model.params());
    const LossKind kind = i % 2 == 0 ? LossKind::zero_one : LossKind::cross_entropy;
    const auto mc = mc_conditional_regret(model, post, 0, kind, 50000, rng);
    const double exact = discrete_uncertainty(model, post, 0, kind).epistemic;
    const double diff = std::abs(mc.estimate - exact);
    const double z = mc.standard_error > 0.0 ? diff / mc.standard_error : (diff == 0.0 ? 0.0 : HUGE_VAL);
    worst_z = std::max(worst_z, z);
    if (z <= 3.0) ++discrete_hits;
  }
  std::ostringstream detail;
  detail << "within 3 SE: gaussian " << gaussian_hits << "/" << kCases << ", discrete " << discrete_hits << "/"
         << kCases << " (need >= 19 each)";
  return {"mc_regret", gaussian_hits >= 19 && discrete_hits >= 19, worst_z, 3.0, detail.str()};
}

CheckResult theorem1_check(std::uint64_t seed, double bias) {
  RngStream rng(seed, kTheoremStream);
  const auto deltas = uniform_grid(1.0, 20);
  double worst = 0.0;
  std::size_t decisions = 0;
  for (int i = 0; i < 20; ++i) {
    const auto model = random_discrete_model(rng, 2, 2, 3);
    for (LossKind kind : {LossKind::zero_one, LossKind::cross_entropy}) {
      const auto report = verify_theorem1(model, 1, deltas, kind, bias);
      worst = std::max(worst, report.max_suboptimality);
      decisions += report.decisions_checked;
    }
  }
  std::ostringstream detail;
  detail << decisions << " decisions on 20 models (K=2, |X|=3, |Y|=2, m=1), 21-point delta grid";
  return {"theorem1", worst <= 1e-12, worst, 1e-12, detail.str()};
}

}  // namespace

GaussianPosterior random_gaussian_posterior(RngStream& rng) {
  const std::size_t degree = 1 + rng.uniform_index(3);
  Vector variances(degree + 1);
  for (auto& v : variances) v = 0.05 + 1.95 * rng.uniform();
  const auto prior = GaussianPrior::zero_mean(variances);
  const NoiseSpec noise{0.05 + rng.uniform(), 0.1 * rng.uniform(), 4.0 * rng.standard_normal()};
  const TrueProcess process = sample_true_process(prior, degree, noise, rng);
  const Dataset data = sample_dataset(process, rng.uniform_index(31), rng);
  return fit_posterior(data, prior, degree, noise);
}

std::vector<CheckResult> run_verification_suite(const VerifyOptions& options) {
  return {decomposition_check(options.seed), enumeration_check(options.seed), monte_carlo_check(options.seed),
          theorem1_check(options.seed, options.epistemic_bias)};
}

}  // namespace rejopt
