#include "rejopt/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rejopt/text.hpp"

namespace rejopt {

namespace {

[[noreturn]] void config_error(std::string_view field, std::string_view what) {
  throw Error(ErrorCode::config_error, std::string(field) + ": " + std::string(what));
}

std::size_t as_count(std::string_view field, std::string_view value) {
  const auto v = parse_unsigned(value);
  if (!v) config_error(field, "expected a nonnegative integer, got '" + std::string(value) + "'");
  return static_cast<std::size_t>(*v);
}

double as_real(std::string_view field, std::string_view value) {
  const auto v = parse_double(value);
  if (!v) config_error(field, "expected a finite real number, got '" + std::string(value) + "'");
  return *v;
}

template <class T, class Fn>
std::vector<T> as_list(std::string_view field, std::string_view value, Fn&& convert) {
  std::vector<T> out;
  if (trim(value).empty()) return out;
  for (auto item : split(value, ',')) out.push_back(convert(field, item));
  return out;
}

template <class T, class Fn>
std::string join(const std::vector<T>& values, Fn&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt(values[i]);
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) config_error("trials", "must be >= 1");
  if (m_values.empty()) config_error("m_values", "must list at least one dataset size");
  if (prior_variances.size() != degree + 1) config_error("prior_variances", "length must equal degree + 1");
  for (double v : prior_variances)
    if (!(v > 0.0) || !std::isfinite(v)) config_error("prior_variances", "all entries must be finite and > 0");
  if (!(noise.a > 0.0)) config_error("noise_a", "must be > 0");
  if (!(noise.b >= 0.0)) config_error("noise_b", "must be >= 0");
  if (!std::isfinite(noise.c)) config_error("noise_c", "must be finite");
  if (n_test < 1) config_error("n_test", "must be >= 1");
}

ExperimentConfig parse_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) config_error("line " + std::to_string(line_no), "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (!entries.emplace(key, std::string(trim(line.substr(eq + 1)))).second) config_error(key, "duplicate key");
  }

  ExperimentConfig config;
  auto take = [&](std::string_view key, bool required) -> std::optional<std::string> {
    const auto it = entries.find(key);
    if (it == entries.end()) {
      if (required) config_error(key, "missing required field");
      return std::nullopt;
    }
    std::string value = it->second;
    entries.erase(it);
    return value;
  };

  config.master_seed = [&] {
    const auto value = *take("master_seed", true);
    const auto v = parse_unsigned(value);
    if (!v) config_error("master_seed", "expected a 64-bit unsigned integer");
    return static_cast<std::uint64_t>(*v);
  }();
  config.trials = as_count("trials", *take("trials", true));
  config.m_values = as_list<std::size_t>("m_values", *take("m_values", true), as_count);
  config.degree = as_count("degree", *take("degree", true));
  config.prior_variances = as_list<double>("prior_variances", *take("prior_variances", true), as_real);
  config.noise.a = as_real("noise_a", *take("noise_a", true));
  config.noise.b = as_real("noise_b", *take("noise_b", true));
  config.noise.c = as_real("noise_c", *take("noise_c", true));
  config.n_test = as_count("n_test", *take("n_test", true));
  if (auto dir = take("output_dir", false)) config.output_dir = *dir;

  if (!entries.empty()) config_error(entries.begin()->first, "unknown field");
  config.validate();
  return config;
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "master_seed = " << config.master_seed << '\n'
      << "trials = " << config.trials << '\n'
      << "m_values = " << join(config.m_values, [](std::size_t m) { return std::to_string(m); }) << '\n'
      << "degree = " << config.degree << '\n'
      << "prior_variances = " << join(config.prior_variances, format_double) << '\n'
      << "noise_a = " << format_double(config.noise.a) << '\n'
      << "noise_b = " << format_double(config.noise.b) << '\n'
      << "noise_c = " << format_double(config.noise.c) << '\n'
      << "n_test = " << config.n_test << '\n'
      << "output_dir = " << config.output_dir << '\n';
  return out.str();
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace rejopt
