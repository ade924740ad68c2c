#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rejopt/gaussian_prior.hpp"
#include "rejopt/synthetic_data.hpp"

namespace rejopt {

/// Parameters of the polynomial regression experiment.
///
/// File format: one `key = value` per line, lists comma-separated, `#`
/// starts a comment. Keys: master_seed, trials, m_values, degree,
/// prior_variances, noise_a, noise_b, noise_c, n_test and the optional
/// output_dir.
struct ExperimentConfig {
  std::uint64_t master_seed = 20250917;
  std::size_t trials = 300;
  std::vector<std::size_t> m_values{5, 10, 20, 50, 100, 200};
  std::size_t degree = 3;
  Vector prior_variances{1.0, 0.1, 0.1, 0.1};
  NoiseSpec noise{};
  std::size_t n_test = 1000;
  std::string output_dir = ".";

  /// Throws Error(config_error) whose message starts with the field name.
  void validate() const;
  GaussianPrior prior() const { return GaussianPrior::zero_mean(prior_variances); }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(std::string_view text);
std::string serialize_config(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace rejopt
