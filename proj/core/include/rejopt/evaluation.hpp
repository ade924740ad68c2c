#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rejopt/config.hpp"
#include "rejopt/gaussian_linear_model.hpp"
#include "rejopt/synthetic_data.hpp"

namespace rejopt {

enum class Method { plug_in, bayesian, epistemic, aleatoric_oracle };

inline constexpr std::array<Method, 4> kAllMethods{Method::plug_in, Method::bayesian, Method::epistemic,
                                                   Method::aleatoric_oracle};

std::string_view to_string(Method method) noexcept;

/// Expected squared-loss regret at x over y ~ p(y | x, theta*): the noise
/// terms cancel, leaving (prediction - f(x; theta*))^2.
double per_point_regret(double prediction, double truth) noexcept;
double per_point_regret(const GaussianPosterior& post, const TrueProcess& process, double x);
double per_point_regret(const MlEstimate& est, const TrueProcess& process, double x);

struct ScoredPoint {
  double uncertainty = 0.0;
  double regret = 0.0;
};

struct CurvePoint {
  double coverage = 0.0;
  double mean_regret = 0.0;
};

/// Regret-coverage curve with its trapezoidal area (AuReC).
struct RegretCoverageCurve {
  std::vector<CurvePoint> points;
  double aurec = 0.0;
};

/// Accepts the k least-uncertain points for k = 0..n (stable on ties) and
/// records the mean regret of the accepted set; coverage 0 has regret 0.
/// Throws EmptyInput on an empty score list.
RegretCoverageCurve build_curve(std::span<const ScoredPoint> scores);

/// Per-method (uncertainty, regret) pairs on one trial's test inputs.
struct TrialScores {
  std::size_t m = 0;
  std::size_t trial = 0;
  std::array<std::optional<std::vector<ScoredPoint>>, 4> by_method;  ///< indexed by Method
  Vector true_regret_bayes;  ///< regret of H_B per test input, for oracle rankings
};

/// Shared per-trial randomness: stream 3t draws theta*, stream 3t+1 the
/// training inputs and targets, stream 3t+2 the test inputs. Dataset sizes in
/// one trial share theta* and test inputs, and smaller datasets are prefixes
/// of larger ones.
TrialScores score_trial(const ExperimentConfig& config, std::size_t m, std::uint64_t seed, std::size_t trial);

struct TrialResult {
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::array<std::optional<double>, 4> aurec;  ///< indexed by Method; empty when the method could not run
  std::string error;                           ///< non-empty when the whole trial failed
};

TrialResult run_trial(const ExperimentConfig& config, std::size_t m, std::uint64_t seed, std::size_t trial);

struct SummaryRow {
  std::size_t m = 0;
  Method method = Method::plug_in;
  double mean_aurec = 0.0;
  double q40 = 0.0;
  double q60 = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;  ///< trials with a valid value
};

struct ExperimentResult {
  std::vector<SummaryRow> rows;      ///< ordered by m, then method
  std::vector<TrialResult> trials;   ///< ordered by m, then trial index
};

/// Runs config.trials trials for every m on `workers` threads. The output is
/// identical for every worker count.
ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t workers = 1);

/// Mean and standard error of per-trial aurec(a) - aurec(b) at dataset size m,
/// over trials where both methods produced a value.
struct PairedDifference {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
};
PairedDifference paired_difference(const ExperimentResult& result, std::size_t m, Method a, Method b);

/// Linear-interpolation quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// CSV header m,method,mean_aurec,q40,q60,trials. Rows with no valid trials
/// leave the numeric fields empty.
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

enum class Demo { fig1, fig2a, fig2b };

std::string_view to_string(Demo demo) noexcept;
std::optional<Demo> parse_demo(std::string_view name) noexcept;

struct DemoRow {
  double x = 0.0;
  double prediction = 0.0;
  double uncertainty = 0.0;
  double threshold = 0.0;
  bool accepted = false;
};

struct FigureDemo {
  Demo which = Demo::fig1;
  std::vector<DemoRow> rows;
  Dataset training;  ///< empty for fig1
};

/// Grid x = -15, -14.99, ..., 5.
/// fig1: the running example with the true process known, epsilon = 1.
/// fig2a / fig2b: linear model with prior N(0, I) fitted to 10 samples drawn
/// with RngStream(seed, 0); fig2a gates on T with epsilon = 2, fig2b on E
/// with delta = 1.
FigureDemo figure_demo_data(Demo which, std::uint64_t seed);

void write_demo_csv(std::ostream& out, std::span<const DemoRow> rows);

std::string render_demo_svg(const FigureDemo& demo);
std::string render_aurec_svg(std::span<const SummaryRow> rows);

}  // namespace rejopt
