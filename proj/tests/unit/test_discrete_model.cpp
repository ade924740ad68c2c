#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "rejopt/discrete_model.hpp"

using namespace rejopt;

namespace {

// p(y=1 | theta) = 0.9 and 0.1, single input, uniform prior.
DiscreteModel coin_pair() { return DiscreteModel(2, 2, 1, {0.5, 0.5}, {1.0}, {0.1, 0.9, 0.9, 0.1}); }

// Direct-product Bayes rule.
Vector bayes_by_product(const DiscreteModel& model, std::span<const Observation> data) {
  Vector w(model.params());
  double z = 0.0;
  for (std::size_t t = 0; t < model.params(); ++t) {
    w[t] = model.prior()[t];
    for (const auto& o : data) w[t] *= model.likelihood(t, o.input, o.label);
    z += w[t];
  }
  for (auto& v : w) v /= z;
  return w;
}

std::vector<Observation> random_observations(RngStream& rng, const DiscreteModel& model, std::size_t n) {
  // Draw from the first parameter with positive prior so the data is possible.
  std::size_t theta = 0;
  while (model.prior()[theta] == 0.0) ++theta;
  std::vector<Observation> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t x = rng.uniform_index(model.inputs());
    const auto p = model.conditional(theta, x);
    double u = rng.uniform();
    std::size_t y = 0;
    while (y + 1 < p.size() && u > p[y]) u -= p[y++];
    while (p[y] == 0.0) y = (y + 1) % p.size();
    out.push_back({x, y});
  }
  return out;
}

}  // namespace

TEST(PosteriorUpdate, EmptyDataIsPrior) {
  const DiscreteModel m = coin_pair().with_prior({0.3, 0.7});
  EXPECT_EQ(posterior_update(m, {}).weights, (Vector{0.3, 0.7}));
}

TEST(PosteriorUpdate, OneObservation) {
  const std::vector<Observation> d{{0, 0}};
  const Vector w = posterior_update(coin_pair(), d).weights;
  EXPECT_NEAR(w[0], 0.1, 1e-15);
  EXPECT_NEAR(w[1], 0.9, 1e-15);
}

TEST(PosteriorUpdate, ImpossibleEvidenceExcludesParameter) {
  const DiscreteModel m(2, 2, 1, {0.5, 0.5}, {1.0}, {1.0, 0.0, 0.4, 0.6});
  const std::vector<Observation> d{{0, 1}};
  const Vector w = posterior_update(m, d).weights;
  EXPECT_EQ(w[0], 0.0);
  EXPECT_NEAR(w[1], 1.0, 1e-15);
}

TEST(PosteriorUpdate, ZeroEvidence) {
  const DiscreteModel m(2, 2, 1, {0.5, 0.5}, {1.0}, {1.0, 0.0, 1.0, 0.0});
  const std::vector<Observation> d{{0, 1}};
  try {
    posterior_update(m, d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_evidence);
  }
}

TEST(PosteriorUpdate, IndexOutOfRange) {
  const std::vector<Observation> d{{1, 0}};
  EXPECT_THROW(posterior_update(coin_pair(), d), Error);
}

TEST(PosteriorUpdate, AgreesWithDirectProduct) {
  RngStream rng(41, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const DiscreteModel m = random_discrete_model(rng, 2 + rng.uniform_index(3), 1 + rng.uniform_index(5),
                                                  1 + rng.uniform_index(4));
    const auto d = random_observations(rng, m, rng.uniform_index(12));
    const Vector w = posterior_update(m, d).weights;
    const Vector oracle = bayes_by_product(m, d);
    for (std::size_t t = 0; t < w.size(); ++t) EXPECT_NEAR(w[t], oracle[t], 1e-12);
  }
}

TEST(PosteriorUpdate, LongSequencesDoNotUnderflow) {
  std::vector<Observation> d(2000, Observation{0, 1});
  for (std::size_t i = 0; i < 1000; ++i) d[2 * i].label = 0;
  d.push_back({0, 1});
  const Vector w = posterior_update(coin_pair(), d).weights;
  EXPECT_NEAR(w[0], 0.9, 1e-9);
  EXPECT_NEAR(w[1], 0.1, 1e-9);
}

TEST(PosteriorUpdate, OrderInvariant) {
  RngStream rng(42, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const DiscreteModel m = random_discrete_model(rng, 3, 4, 3);
    auto d = random_observations(rng, m, 10);
    const Vector a = posterior_update(m, d).weights;
    std::reverse(d.begin(), d.end());
    std::rotate(d.begin(), d.begin() + 3, d.end());
    const Vector b = posterior_update(m, d).weights;
    for (std::size_t t = 0; t < a.size(); ++t) EXPECT_NEAR(a[t], b[t], 1e-14);
  }
}

TEST(PosteriorUpdate, SequentialEqualsBatch) {
  RngStream rng(43, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const DiscreteModel m = random_discrete_model(rng, 2, 5, 3);
    const auto d = random_observations(rng, m, 8);
    const std::span<const Observation> all(d);
    const Vector first = posterior_update(m, all.first(3)).weights;
    const Vector seq = posterior_update(m.with_prior(first), all.subspan(3)).weights;
    const Vector batch = posterior_update(m, all).weights;
    for (std::size_t t = 0; t < seq.size(); ++t) EXPECT_NEAR(seq[t], batch[t], 1e-14);
  }
}

TEST(PredictivePmf, Examples) {
  const Vector p = predictive_pmf(coin_pair(), DiscretePosterior{{0.5, 0.5}}, 0);
  EXPECT_NEAR(p[1], 0.5, 1e-15);
  const Vector point = predictive_pmf(coin_pair(), DiscretePosterior{{1.0, 0.0}}, 0);
  EXPECT_EQ(point, (Vector{0.1, 0.9}));
  const DiscreteModel shared(3, 2, 1, {0.5, 0.5}, {1.0}, {0.2, 0.3, 0.5, 0.2, 0.3, 0.5});
  const Vector s = predictive_pmf(shared, DiscretePosterior{{0.25, 0.75}}, 0);
  for (std::size_t y = 0; y < 3; ++y) EXPECT_NEAR(s[y], shared.likelihood(0, 0, y), 1e-15);
}

TEST(PredictivePmf, ConvexCombination) {
  RngStream rng(44, 0);
  for (int rep = 0; rep < 300; ++rep) {
    const DiscreteModel m = random_discrete_model(rng, 2 + rng.uniform_index(4), 1 + rng.uniform_index(6), 2);
    const DiscretePosterior post = random_discrete_posterior(rng, m.params());
    for (std::size_t x = 0; x < m.inputs(); ++x) {
      const Vector p = predictive_pmf(m, post, x);
      double total = 0.0;
      for (std::size_t y = 0; y < m.classes(); ++y) {
        double lo = 1.0, hi = 0.0;
        for (std::size_t t = 0; t < m.params(); ++t) {
          lo = std::min(lo, m.likelihood(t, x, y));
          hi = std::max(hi, m.likelihood(t, x, y));
        }
        EXPECT_GE(p[y], lo - 1e-15);
        EXPECT_LE(p[y], hi + 1e-15);
        total += p[y];
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(ArgmaxClass, TiesGoToLowestIndex) {
  EXPECT_EQ(argmax_class(Vector{0.5, 0.5}), 0u);
  EXPECT_EQ(argmax_class(Vector{0.2, 0.4, 0.4}), 1u);
  EXPECT_EQ(argmax_class(Vector{0.1, 0.2, 0.7}), 2u);
}

TEST(DiscreteModelTest, RejectsInvalidTables) {
  EXPECT_THROW(DiscreteModel(2, 1, 1, {1.0}, {1.0}, {0.5, 0.6}), Error);
  EXPECT_THROW(DiscreteModel(2, 1, 1, {0.9}, {1.0}, {0.5, 0.5}), Error);
  EXPECT_THROW(DiscreteModel(2, 1, 1, {1.0}, {1.0}, {1.5, -0.5}), Error);
  EXPECT_THROW(DiscreteModel(2, 1, 1, {1.0}, {1.0}, {0.5, 0.5, 0.0}), Error);
}

TEST(DiscreteModelTest, JsonRoundTrip) {
  RngStream rng(45, 0);
  const DiscreteModel m = random_discrete_model(rng, 3, 4, 2);
  const DiscreteModel back = DiscreteModel::from_json(m.to_json());
  EXPECT_EQ(back.prior(), m.prior());
  EXPECT_EQ(back.input_marginal(), m.input_marginal());
  for (std::size_t t = 0; t < 4; ++t)
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 3; ++y) EXPECT_EQ(back.likelihood(t, x, y), m.likelihood(t, x, y));
}

TEST(DiscreteModelTest, LoadsExampleFile) {
  const DiscreteModel m = load_discrete_model(REJOPT_SOURCE_DIR "/configs/two_theta_bernoulli.json");
  EXPECT_EQ(m.classes(), 2u);
  EXPECT_EQ(m.params(), 2u);
  EXPECT_EQ(m.likelihood(0, 0, 1), 0.9);
  const std::vector<Observation> d{{0, 1}};
  EXPECT_NEAR(posterior_update(m, d).weights[0], 0.9, 1e-15);
}

TEST(DiscreteModelTest, JsonValidation) {
  const char* bad_row = R"({"classes":2,"params":1,"inputs":1,"prior":[1],"input_marginal":[1],
                            "likelihood":[[[0.5,0.6]]]})";
  EXPECT_THROW(DiscreteModel::from_json(bad_row), Error);
  const char* bad_shape = R"({"classes":2,"params":1,"inputs":1,"prior":[1],"input_marginal":[1],
                              "likelihood":[[[0.5,0.5],[0.5,0.5]]]})";
  EXPECT_THROW(DiscreteModel::from_json(bad_shape), Error);
  EXPECT_THROW(DiscreteModel::from_json("not json"), Error);
  EXPECT_THROW(load_discrete_model("/nonexistent/model.json"), Error);
}
