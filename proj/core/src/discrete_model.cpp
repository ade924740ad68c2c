#include "rejopt/discrete_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace rejopt {

namespace {

constexpr double kSimplexTolerance = 1e-12;

void require_simplex(std::span<const double> p, const char* what) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::invalid_argument, std::string(what) + " has entries outside [0, 1]");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + " does not sum to 1");
  }
}

Vector dirichlet_one(RngStream& rng, std::size_t n) {
  Vector p(n);
  for (auto& v : p) v = -std::log(rng.uniform());
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= total;
  return p;
}

}  // namespace

DiscreteModel::DiscreteModel(std::size_t classes, std::size_t params, std::size_t inputs, Vector prior,
                             Vector input_marginal, std::vector<double> likelihood)
    : classes_(classes),
      params_(params),
      inputs_(inputs),
      prior_(std::move(prior)),
      input_marginal_(std::move(input_marginal)),
      likelihood_(std::move(likelihood)) {
  if (classes_ == 0 || params_ == 0 || inputs_ == 0) {
    throw Error(ErrorCode::invalid_argument, "discrete model needs at least one class, parameter and input");
  }
  if (prior_.size() != params_ || input_marginal_.size() != inputs_ ||
      likelihood_.size() != params_ * inputs_ * classes_) {
    throw Error(ErrorCode::dimension_mismatch, "discrete model tables do not match declared sizes");
  }
  require_simplex(prior_, "prior");
  require_simplex(input_marginal_, "input_marginal");
  for (std::size_t t = 0; t < params_; ++t)
    for (std::size_t x = 0; x < inputs_; ++x) require_simplex(conditional(t, x), "likelihood row");
}

DiscreteModel DiscreteModel::with_prior(Vector prior) const {
  return DiscreteModel(classes_, params_, inputs_, std::move(prior), input_marginal_, likelihood_);
}

std::string DiscreteModel::to_json() const {
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t t = 0; t < params_; ++t) {
    nlohmann::json per_theta = nlohmann::json::array();
    for (std::size_t x = 0; x < inputs_; ++x) {
      const auto row = conditional(t, x);
      per_theta.push_back(Vector(row.begin(), row.end()));
    }
    table.push_back(std::move(per_theta));
  }
  const nlohmann::json j{{"classes", classes_}, {"params", params_}, {"inputs", inputs_},
                         {"prior", prior_},     {"input_marginal", input_marginal_},
                         {"likelihood", table}};
  return j.dump(2);
}

DiscreteModel DiscreteModel::from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto classes = j.at("classes").get<std::size_t>();
    const auto params = j.at("params").get<std::size_t>();
    const auto inputs = j.at("inputs").get<std::size_t>();
    const auto& table = j.at("likelihood");
    if (!table.is_array() || table.size() != params) {
      throw Error(ErrorCode::dimension_mismatch, "likelihood must have one entry per parameter");
    }
    std::vector<double> flat;
    flat.reserve(params * inputs * classes);
    for (const auto& per_theta : table) {
      if (!per_theta.is_array() || per_theta.size() != inputs) {
        throw Error(ErrorCode::dimension_mismatch, "likelihood must have one row per input");
      }
      for (const auto& row : per_theta) {
        const auto values = row.get<Vector>();
        if (values.size() != classes) throw Error(ErrorCode::dimension_mismatch, "likelihood row length != classes");
        flat.insert(flat.end(), values.begin(), values.end());
      }
    }
    return DiscreteModel(classes, params, inputs, j.at("prior").get<Vector>(), j.at("input_marginal").get<Vector>(),
                         std::move(flat));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::io_error, std::string("malformed discrete model: ") + e.what());
  }
}

DiscreteModel load_discrete_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return DiscreteModel::from_json(buffer.str());
}

DiscretePosterior posterior_update(const DiscreteModel& model, std::span<const Observation> data) {
  if (data.empty()) return DiscretePosterior{model.prior()};
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  Vector log_w(model.params());
  for (std::size_t t = 0; t < model.params(); ++t) {
    double acc = model.prior()[t] > 0.0 ? std::log(model.prior()[t]) : neg_inf;
    for (const auto& obs : data) {
      if (obs.input >= model.inputs() || obs.label >= model.classes()) {
        throw Error(ErrorCode::invalid_argument, "observation index out of range");
      }
      if (acc == neg_inf) break;
      const double p = model.likelihood(t, obs.input, obs.label);
      acc = p > 0.0 ? acc + std::log(p) : neg_inf;
    }
    log_w[t] = acc;
  }
  const double top = *std::max_element(log_w.begin(), log_w.end());
  if (top == neg_inf) throw Error(ErrorCode::zero_evidence, "data has zero likelihood under every parameter");

  DiscretePosterior post{Vector(model.params())};
  double total = 0.0;
  for (std::size_t t = 0; t < model.params(); ++t) {
    post.weights[t] = log_w[t] == neg_inf ? 0.0 : std::exp(log_w[t] - top);
    total += post.weights[t];
  }
  for (auto& w : post.weights) w /= total;
  return post;
}

Vector predictive_pmf(const DiscreteModel& model, const DiscretePosterior& post, std::size_t x) {
  if (x >= model.inputs()) throw Error(ErrorCode::invalid_argument, "input index out of range");
  if (post.weights.size() != model.params()) {
    throw Error(ErrorCode::dimension_mismatch, "posterior size does not match parameter grid");
  }
  Vector pmf(model.classes(), 0.0);
  for (std::size_t t = 0; t < model.params(); ++t) {
    const double w = post.weights[t];
    if (w == 0.0) continue;
    const auto row = model.conditional(t, x);
    for (std::size_t y = 0; y < pmf.size(); ++y) pmf[y] += w * row[y];
  }
  return pmf;
}

std::size_t argmax_class(std::span<const double> p) {
  if (p.empty()) throw Error(ErrorCode::empty_input, "argmax of an empty distribution");
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] > p[best]) best = i;
  return best;
}

DiscreteModel random_discrete_model(RngStream& rng, std::size_t classes, std::size_t params, std::size_t inputs,
                                    double one_hot_fraction) {
  std::vector<double> table;
  table.reserve(params * inputs * classes);
  for (std::size_t row = 0; row < params * inputs; ++row) {
    if (rng.uniform() < one_hot_fraction) {
      Vector one_hot(classes, 0.0);
      one_hot[rng.uniform_index(classes)] = 1.0;
      table.insert(table.end(), one_hot.begin(), one_hot.end());
    } else {
      const Vector p = dirichlet_one(rng, classes);
      table.insert(table.end(), p.begin(), p.end());
    }
  }
  return DiscreteModel(classes, params, inputs, dirichlet_one(rng, params), dirichlet_one(rng, inputs),
                       std::move(table));
}

DiscretePosterior random_discrete_posterior(RngStream& rng, std::size_t params) {
  return DiscretePosterior{dirichlet_one(rng, params)};
}

}  // namespace rejopt
