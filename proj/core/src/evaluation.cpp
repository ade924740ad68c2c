#include "rejopt/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "rejopt/reject_predictors.hpp"
#include "rejopt/svg_plot.hpp"
#include "rejopt/text.hpp"
#include "rejopt/uncertainty.hpp"

namespace rejopt {

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::plug_in: return "plug_in";
    case Method::bayesian: return "bayesian";
    case Method::epistemic: return "epistemic";
    case Method::aleatoric_oracle: return "aleatoric_oracle";
  }
  return "unknown";
}

double per_point_regret(double prediction, double truth) noexcept {
  const double gap = prediction - truth;
  return gap * gap;
}

double per_point_regret(const GaussianPosterior& post, const TrueProcess& process, double x) {
  return per_point_regret(predictive(post, x).mean, process.mean(x));
}

double per_point_regret(const MlEstimate& est, const TrueProcess& process, double x) {
  return per_point_regret(ml_predict(est, x).prediction, process.mean(x));
}

RegretCoverageCurve build_curve(std::span<const ScoredPoint> scores) {
  if (scores.empty()) throw Error(ErrorCode::empty_input, "build_curve needs at least one scored point");
  for (const auto& s : scores) {
    if (!std::isfinite(s.uncertainty) || !std::isfinite(s.regret)) {
      throw Error(ErrorCode::invalid_argument, "scores must be finite");
    }
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a].uncertainty < scores[b].uncertainty; });

  const double n = static_cast<double>(scores.size());
  RegretCoverageCurve curve;
  curve.points.reserve(scores.size() + 1);
  curve.points.push_back({0.0, 0.0});
  double cumulative = 0.0;
  for (std::size_t k = 1; k <= order.size(); ++k) {
    cumulative += scores[order[k - 1]].regret;
    const CurvePoint next{static_cast<double>(k) / n, cumulative / static_cast<double>(k)};
    const CurvePoint& prev = curve.points.back();
    curve.aurec += (next.coverage - prev.coverage) * 0.5 * (next.mean_regret + prev.mean_regret);
    curve.points.push_back(next);
  }
  return curve;
}

TrialScores score_trial(const ExperimentConfig& config, std::size_t m, std::uint64_t seed, std::size_t trial) {
  RngStream theta_rng(seed, 3 * static_cast<std::uint64_t>(trial));
  RngStream data_rng(seed, 3 * static_cast<std::uint64_t>(trial) + 1);
  RngStream test_rng(seed, 3 * static_cast<std::uint64_t>(trial) + 2);

  const GaussianPrior prior = config.prior();
  const TrueProcess process = sample_true_process(prior, config.degree, config.noise, theta_rng);
  const Dataset data = sample_dataset(process, m, data_rng);
  const Vector test_x = sample_standard_normal(test_rng, config.n_test);

  const GaussianPosterior post = fit_posterior(data, prior, config.degree, config.noise);
  std::optional<MlEstimate> ml;
  try {
    ml = fit_ml(data, config.degree, config.noise);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_design) throw;
  }

  TrialScores out;
  out.m = m;
  out.trial = trial;
  std::array<std::vector<ScoredPoint>, 4> scored;
  for (auto& s : scored) s.reserve(test_x.size());
  out.true_regret_bayes.reserve(test_x.size());

  for (double x : test_x) {
    const double truth = process.mean(x);
    const auto u = squared_uncertainty(post, x);
    const double bayes_regret = per_point_regret(predictive(post, x).mean, truth);
    out.true_regret_bayes.push_back(bayes_regret);
    if (ml) {
      const auto plug = ml_predict(*ml, x);
      scored[static_cast<std::size_t>(Method::plug_in)].push_back({plug.plug_in_risk,
                                                                   per_point_regret(plug.prediction, truth)});
    }
    scored[static_cast<std::size_t>(Method::bayesian)].push_back({u.total, bayes_regret});
    scored[static_cast<std::size_t>(Method::epistemic)].push_back({u.epistemic, bayes_regret});
    scored[static_cast<std::size_t>(Method::aleatoric_oracle)].push_back({u.aleatoric, bayes_regret});
  }
  for (Method method : kAllMethods) {
    const auto i = static_cast<std::size_t>(method);
    if (method == Method::plug_in && !ml) continue;
    out.by_method[i] = std::move(scored[i]);
  }
  return out;
}

TrialResult run_trial(const ExperimentConfig& config, std::size_t m, std::uint64_t seed, std::size_t trial) {
  TrialResult result;
  result.m = m;
  result.seed = seed;
  result.trial = trial;
  const TrialScores scores = score_trial(config, m, seed, trial);
  for (Method method : kAllMethods) {
    const auto i = static_cast<std::size_t>(method);
    if (scores.by_method[i]) result.aurec[i] = build_curve(*scores.by_method[i]).aurec;
  }
  return result;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::empty_input, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

namespace {

struct MeanAndError {
  double mean = 0.0;
  double standard_error = 0.0;
};

MeanAndError mean_and_error(const std::vector<double>& values) {
  MeanAndError out;
  if (values.empty()) return out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    const double n = static_cast<double>(values.size());
    out.standard_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t workers) {
  config.validate();
  const std::size_t total = config.m_values.size() * config.trials;
  ExperimentResult result;
  result.trials.resize(total);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      const std::size_t m = config.m_values[task / config.trials];
      const std::size_t trial = task % config.trials;
      try {
        result.trials[task] = run_trial(config, m, config.master_seed, trial);
      } catch (const std::exception& e) {
        TrialResult failed;
        failed.m = m;
        failed.seed = config.master_seed;
        failed.trial = trial;
        failed.error = e.what();
        result.trials[task] = std::move(failed);
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(total, 1));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(work);
  }

  for (std::size_t mi = 0; mi < config.m_values.size(); ++mi) {
    for (Method method : kAllMethods) {
      std::vector<double> values;
      for (std::size_t t = 0; t < config.trials; ++t) {
        const auto& v = result.trials[mi * config.trials + t].aurec[static_cast<std::size_t>(method)];
        if (v) values.push_back(*v);
      }
      SummaryRow row;
      row.m = config.m_values[mi];
      row.method = method;
      row.trials = values.size();
      if (!values.empty()) {
        const auto stats = mean_and_error(values);
        row.mean_aurec = stats.mean;
        row.standard_error = stats.standard_error;
        row.q40 = quantile(values, 0.4);
        row.q60 = quantile(values, 0.6);
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

PairedDifference paired_difference(const ExperimentResult& result, std::size_t m, Method a, Method b) {
  std::vector<double> diffs;
  for (const auto& t : result.trials) {
    if (t.m != m) continue;
    const auto& va = t.aurec[static_cast<std::size_t>(a)];
    const auto& vb = t.aurec[static_cast<std::size_t>(b)];
    if (va && vb) diffs.push_back(*va - *vb);
  }
  const auto stats = mean_and_error(diffs);
  return {stats.mean, stats.standard_error, diffs.size()};
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "m,method,mean_aurec,q40,q60,trials\n";
  for (const auto& r : rows) {
    out << r.m << ',' << to_string(r.method) << ',';
    if (r.trials > 0) {
      out << format_double(r.mean_aurec) << ',' << format_double(r.q40) << ',' << format_double(r.q60);
    } else {
      out << ",,";
    }
    out << ',' << r.trials << '\n';
  }
}

std::string_view to_string(Demo demo) noexcept {
  switch (demo) {
    case Demo::fig1: return "fig1";
    case Demo::fig2a: return "fig2a";
    case Demo::fig2b: return "fig2b";
  }
  return "unknown";
}

std::optional<Demo> parse_demo(std::string_view name) noexcept {
  for (Demo d : {Demo::fig1, Demo::fig2a, Demo::fig2b})
    if (to_string(d) == name) return d;
  return std::nullopt;
}

namespace {

constexpr int kGridFirst = -1500;  // x = -15.00
constexpr int kGridLast = 500;     // x = 5.00
constexpr double kFig1Epsilon = 1.0;
constexpr double kFig2aEpsilon = 2.0;
constexpr double kFig2bDelta = 1.0;
constexpr std::size_t kFig2TrainingSize = 10;

}  // namespace

FigureDemo figure_demo_data(Demo which, std::uint64_t seed) {
  FigureDemo demo;
  demo.which = which;
  const TrueProcess truth = example1_process();
  std::optional<GaussianPosterior> post;
  if (which != Demo::fig1) {
    RngStream rng(seed, 0);
    demo.training = sample_dataset(truth, kFig2TrainingSize, rng);
    post = fit_posterior(demo.training, GaussianPrior::zero_mean({1.0, 1.0}), 1, truth.noise);
  }
  demo.rows.reserve(kGridLast - kGridFirst + 1);
  for (int i = kGridFirst; i <= kGridLast; ++i) {
    const double x = static_cast<double>(i) / 100.0;
    DemoRow row;
    row.x = x;
    Decision decision = Decision::reject();
    switch (which) {
      case Demo::fig1:
        row.prediction = truth.mean(x);
        row.uncertainty = truth.variance(x);
        row.threshold = kFig1Epsilon;
        decision = aleatoric_oracle(truth, x, kFig1Epsilon);
        break;
      case Demo::fig2a: {
        const auto u = squared_uncertainty(*post, x);
        row.prediction = predictive(*post, x).mean;
        row.uncertainty = u.total;
        row.threshold = kFig2aEpsilon;
        decision = bayesian_reject(*post, x, kFig2aEpsilon);
        break;
      }
      case Demo::fig2b: {
        const auto u = squared_uncertainty(*post, x);
        row.prediction = predictive(*post, x).mean;
        row.uncertainty = u.epistemic;
        row.threshold = kFig2bDelta;
        decision = epistemic_reject(*post, x, kFig2bDelta);
        break;
      }
    }
    row.accepted = decision.accepted();
    demo.rows.push_back(row);
  }
  return demo;
}

void write_demo_csv(std::ostream& out, std::span<const DemoRow> rows) {
  out << "x,prediction,uncertainty,threshold,accepted\n";
  for (const auto& r : rows) {
    out << format_double(r.x) << ',' << format_double(r.prediction) << ',' << format_double(r.uncertainty) << ','
        << format_double(r.threshold) << ',' << (r.accepted ? 1 : 0) << '\n';
  }
}

std::string render_demo_svg(const FigureDemo& demo) {
  svg::LineChart chart;
  chart.x_label = "x";
  chart.y_label = "y / uncertainty";
  const char* uncertainty_name = "v(x)";
  switch (demo.which) {
    case Demo::fig1: chart.title = "Aleatoric reject-option predictor (epsilon = 1)"; break;
    case Demo::fig2a:
      chart.title = "Bayesian reject-option predictor (epsilon = 2)";
      uncertainty_name = "T(x, D)";
      break;
    case Demo::fig2b:
      chart.title = "Epistemic reject-option predictor (delta = 1)";
      uncertainty_name = "E(x, D)";
      break;
  }
  svg::Series prediction{"prediction", "#1f77b4", {}};
  svg::Series uncertainty{uncertainty_name, "#d62728", {}};
  svg::Series threshold{"threshold", "#555555", {}, true};
  std::optional<double> reject_start;
  for (const auto& r : demo.rows) {
    prediction.points.emplace_back(r.x, r.prediction);
    uncertainty.points.emplace_back(r.x, std::min(r.uncertainty, 12.0));
    threshold.points.emplace_back(r.x, r.threshold);
    if (!r.accepted && !reject_start) reject_start = r.x;
    if (r.accepted && reject_start) {
      chart.shaded.push_back({*reject_start, r.x});
      reject_start.reset();
    }
  }
  if (reject_start) chart.shaded.push_back({*reject_start, demo.rows.back().x});
  chart.series = {prediction, uncertainty, threshold};
  if (!demo.training.empty()) {
    svg::Series points{"training data", "#2ca02c", {}, false, true};
    for (const auto& s : demo.training.pairs) points.points.emplace_back(s.x, s.y);
    chart.series.push_back(points);
  }
  return svg::render(chart);
}

std::string render_aurec_svg(std::span<const SummaryRow> rows) {
  svg::LineChart chart;
  chart.title = "AuReC vs. training set size";
  chart.x_label = "m (log scale)";
  chart.y_label = "mean AuReC";
  chart.log_x = true;
  const std::array<const char*, 4> colors{"#ff7f0e", "#1f77b4", "#2ca02c", "#7f7f7f"};
  for (Method method : kAllMethods) {
    svg::Series s{std::string(to_string(method)), colors[static_cast<std::size_t>(method)], {}};
    for (const auto& r : rows)
      if (r.method == method && r.trials > 0 && r.m > 0) s.points.emplace_back(static_cast<double>(r.m), r.mean_aurec);
    chart.series.push_back(std::move(s));
  }
  return svg::render(chart);
}

}  // namespace rejopt
