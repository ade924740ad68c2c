#include <gtest/gtest.h>

#include <string>

#include "rejopt/config.hpp"

using namespace rejopt;

namespace {

std::string message_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config_error);
    return e.what();
  }
  ADD_FAILURE() << "no error";
  return {};
}

}  // namespace

TEST(Config, RoundTrip) {
  ExperimentConfig c;
  c.master_seed = 12345;
  c.trials = 17;
  c.m_values = {1, 2, 300};
  c.degree = 2;
  c.prior_variances = {2.0, 0.5, 0.125};
  c.noise = NoiseSpec{0.3, 0.01, -2.5};
  c.n_test = 77;
  c.output_dir = "out/x";
  EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, DefaultsAreValid) {
  EXPECT_NO_THROW(ExperimentConfig{}.validate());
  EXPECT_EQ(parse_config(serialize_config(ExperimentConfig{})), ExperimentConfig{});
}

TEST(Config, ShippedFilesLoad) {
  const ExperimentConfig desk = load_config(REJOPT_SOURCE_DIR "/configs/desk.cfg");
  EXPECT_EQ(desk.trials, 300u);
  EXPECT_EQ(desk.m_values, (std::vector<std::size_t>{5, 10, 20, 50, 100, 200}));
  EXPECT_EQ(load_config(REJOPT_SOURCE_DIR "/configs/paper.cfg").trials, 3000u);
}

TEST(Config, MissingTrials) {
  std::string text = serialize_config(ExperimentConfig{});
  const auto pos = text.find("trials");
  text.erase(pos, text.find('\n', pos) - pos + 1);
  EXPECT_EQ(message_of(text).rfind("trials", 0), 0u);
}

TEST(Config, Errors) {
  const std::string base = serialize_config(ExperimentConfig{});
  EXPECT_NE(message_of(base + "colour = red\n").find("colour"), std::string::npos);
  EXPECT_NE(message_of(base + "trials = 3\n").find("trials"), std::string::npos);
  EXPECT_EQ(message_of("garbage line\n").empty(), false);
}

TEST(Config, Validation) {
  ExperimentConfig c;
  c.prior_variances = {1.0, 1.0};
  EXPECT_THROW(c.validate(), Error);
  c = ExperimentConfig{};
  c.trials = 0;
  EXPECT_THROW(c.validate(), Error);
  c = ExperimentConfig{};
  c.noise.a = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = ExperimentConfig{};
  c.n_test = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Config, MissingFile) {
  try {
    load_config("/nonexistent/x.cfg");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io_error);
  }
}
