#include "rejopt/gaussian_linear_model.hpp"

#include <cmath>

#include <json.hpp>

namespace rejopt {

namespace {

struct NormalEquations {
  Matrix gram;  // X^T S^-1 X
  Vector rhs;   // X^T S^-1 y
};

NormalEquations weighted_normal_equations(const Dataset& data, std::size_t degree, const NoiseSpec& noise) {
  const std::size_t p = degree + 1;
  NormalEquations eq{Matrix(p, p), Vector(p, 0.0)};
  for (const auto& s : data.pairs) {
    const Vector phi = polynomial_features(s.x, degree);
    const double w = 1.0 / noise_variance(noise, s.x);
    for (std::size_t i = 0; i < p; ++i) {
      eq.rhs[i] += w * phi[i] * s.y;
      for (std::size_t j = 0; j < p; ++j) eq.gram(i, j) += w * phi[i] * phi[j];
    }
  }
  return eq;
}

Matrix symmetrized(const Matrix& a) {
  Matrix s = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s(i, j) = s(j, i) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

nlohmann::json noise_json(const NoiseSpec& n) { return {{"a", n.a}, {"b", n.b}, {"c", n.c}}; }

NoiseSpec noise_from(const nlohmann::json& j) {
  NoiseSpec n{j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>()};
  n.validate();
  return n;
}

template <class Fn>
auto parse_record(std::string_view text, Fn&& fn) {
  try {
    return fn(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::io_error, std::string("malformed model record: ") + e.what());
  }
}

}  // namespace

Matrix design_matrix(const Dataset& data, std::size_t degree) {
  Matrix x(data.size(), degree + 1);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Vector phi = polynomial_features(data.pairs[i].x, degree);
    for (std::size_t j = 0; j <= degree; ++j) x(i, j) = phi[j];
  }
  return x;
}

MlEstimate fit_ml(const Dataset& data, std::size_t degree, const NoiseSpec& noise) {
  noise.validate();
  const auto eq = weighted_normal_equations(data, degree, noise);
  if (!(spd_condition_number(eq.gram) <= kMaxNormalEquationsCondition)) {
    throw Error(ErrorCode::singular_design, "weighted normal equations are singular or ill-conditioned");
  }
  try {
    return MlEstimate{solve_spd(eq.gram, eq.rhs), degree, noise};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::not_positive_definite) throw;
    throw Error(ErrorCode::singular_design, e.what());
  }
}

GaussianPosterior fit_posterior(const Dataset& data, const GaussianPrior& prior, std::size_t degree,
                                const NoiseSpec& noise) {
  prior.validate();
  noise.validate();
  if (prior.dimension() != degree + 1) {
    throw Error(ErrorCode::dimension_mismatch, "prior dimension must equal degree + 1");
  }
  for (double v : prior.variances) {
    if (!(v > 0.0)) throw Error(ErrorCode::invalid_argument, "prior variances must be > 0 for inference");
  }
  if (data.empty()) return GaussianPosterior{prior.mean, prior.covariance(), degree, noise};

  auto eq = weighted_normal_equations(data, degree, noise);
  for (std::size_t i = 0; i <= degree; ++i) {
    const double prior_precision = 1.0 / prior.variances[i];
    eq.gram(i, i) += prior_precision;
    eq.rhs[i] += prior_precision * prior.mean[i];
  }
  Matrix covariance = symmetrized(solve_spd(eq.gram, Matrix::identity(degree + 1)));
  Vector mean = solve_spd(eq.gram, eq.rhs);
  return GaussianPosterior{std::move(mean), std::move(covariance), degree, noise};
}

PredictiveNormal predictive(const GaussianPosterior& post, double x) {
  const Vector phi = polynomial_features(x, post.degree);
  PredictiveNormal out;
  out.mean = dot(phi, post.mean);
  out.epistemic = quadratic_form(post.covariance, phi);
  out.aleatoric = noise_variance(post.noise, x);
  out.variance = out.epistemic + out.aleatoric;
  return out;
}

PlugInPrediction ml_predict(const MlEstimate& est, double x) {
  return {dot(polynomial_features(x, est.degree), est.theta_hat), noise_variance(est.noise, x)};
}

std::string to_json(const GaussianPosterior& post) {
  const nlohmann::json j{
      {"degree", post.degree},
      {"noise", noise_json(post.noise)},
      {"mean", post.mean},
      {"covariance",
       {{"rows", post.covariance.rows()},
        {"cols", post.covariance.cols()},
        {"data", Vector(post.covariance.entries().begin(), post.covariance.entries().end())}}}};
  return j.dump();
}

std::string to_json(const MlEstimate& est) {
  const nlohmann::json j{{"degree", est.degree}, {"noise", noise_json(est.noise)}, {"theta_hat", est.theta_hat}};
  return j.dump();
}

GaussianPosterior posterior_from_json(std::string_view text) {
  return parse_record(text, [](const nlohmann::json& j) {
    GaussianPosterior post;
    post.degree = j.at("degree").get<std::size_t>();
    post.noise = noise_from(j.at("noise"));
    post.mean = j.at("mean").get<Vector>();
    const auto& cov = j.at("covariance");
    post.covariance = Matrix(cov.at("rows").get<std::size_t>(), cov.at("cols").get<std::size_t>(),
                             cov.at("data").get<Vector>());
    if (post.mean.size() != post.degree + 1 || post.covariance.rows() != post.degree + 1 ||
        !is_symmetric(post.covariance)) {
      throw Error(ErrorCode::dimension_mismatch, "posterior record has inconsistent dimensions");
    }
    return post;
  });
}

MlEstimate ml_estimate_from_json(std::string_view text) {
  return parse_record(text, [](const nlohmann::json& j) {
    MlEstimate est;
    est.degree = j.at("degree").get<std::size_t>();
    est.noise = noise_from(j.at("noise"));
    est.theta_hat = j.at("theta_hat").get<Vector>();
    if (est.theta_hat.size() != est.degree + 1) {
      throw Error(ErrorCode::dimension_mismatch, "ML record has inconsistent dimensions");
    }
    return est;
  });
}

}  // namespace rejopt
