#include "rejopt/synthetic_data.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "rejopt/text.hpp"

namespace rejopt {

GaussianPrior GaussianPrior::zero_mean(Vector variances) {
  GaussianPrior prior{Vector(variances.size(), 0.0), std::move(variances)};
  prior.validate();
  return prior;
}

void GaussianPrior::validate() const {
  if (mean.size() != variances.size()) {
    throw Error(ErrorCode::dimension_mismatch, "prior mean and variance lengths differ");
  }
  for (std::size_t i = 0; i < mean.size(); ++i) {
    if (!std::isfinite(mean[i]) || !std::isfinite(variances[i]) || variances[i] < 0.0) {
      throw Error(ErrorCode::invalid_argument, "prior entries must be finite with variances >= 0");
    }
  }
}

void NoiseSpec::validate() const {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c))) {
    throw Error(ErrorCode::invalid_argument, "noise parameters must be finite");
  }
  if (!(a > 0.0)) throw Error(ErrorCode::invalid_argument, "noise parameter a must be > 0");
  if (b < 0.0) throw Error(ErrorCode::invalid_argument, "noise parameter b must be >= 0");
}

double noise_variance(const NoiseSpec& spec, double x) {
  const double shifted = x + spec.c;
  return spec.a + spec.b * shifted * shifted;
}

Vector polynomial_features(double x, std::size_t degree) {
  Vector phi(degree + 1);
  double power = 1.0;
  for (auto& p : phi) {
    p = power;
    power *= x;
  }
  return phi;
}

double evaluate_polynomial(std::span<const double> coefficients, double x) {
  // Horner, highest degree first.
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Dataset Dataset::prefix(std::size_t n) const {
  if (n > pairs.size()) throw Error(ErrorCode::invalid_argument, "prefix longer than dataset");
  return Dataset{std::vector<Sample>(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(n))};
}

TrueProcess sample_true_process(const GaussianPrior& prior, std::size_t degree, const NoiseSpec& noise,
                                RngStream& rng) {
  prior.validate();
  noise.validate();
  if (prior.dimension() != degree + 1) {
    throw Error(ErrorCode::dimension_mismatch, "prior dimension must equal degree + 1");
  }
  TrueProcess process{Vector(degree + 1), degree, noise};
  for (std::size_t i = 0; i <= degree; ++i) {
    const double z = rng.standard_normal();
    process.theta_star[i] = prior.variances[i] == 0.0 ? prior.mean[i]
                                                      : prior.mean[i] + std::sqrt(prior.variances[i]) * z;
  }
  return process;
}

Dataset sample_dataset(const TrueProcess& process, std::size_t m, RngStream& rng) {
  Dataset data;
  data.pairs.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = rng.standard_normal();
    const double y = process.mean(x) + std::sqrt(process.variance(x)) * rng.standard_normal();
    data.pairs.push_back({x, y});
  }
  return data;
}

TrueProcess example1_process() { return TrueProcess{{1.0, 0.5}, 1, NoiseSpec{}}; }

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  out << "x,y\n";
  for (const auto& s : data.pairs) out << format_double(s.x) << ',' << format_double(s.y) << '\n';
}

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "x,y") {
    throw Error(ErrorCode::io_error, "dataset CSV must start with header x,y");
  }
  Dataset data;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    const auto x = fields.size() == 2 ? parse_double(fields[0]) : std::nullopt;
    const auto y = fields.size() == 2 ? parse_double(fields[1]) : std::nullopt;
    if (!x || !y) throw Error(ErrorCode::io_error, "malformed dataset row: " + line);
    data.pairs.push_back({*x, *y});
  }
  return data;
}

}  // namespace rejopt
