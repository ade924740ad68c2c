// rejopt: demos, the regret-coverage experiment and the oracle verification
// suite for aleatoric, Bayesian and epistemic reject-option predictors.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 I/O error,
// 3 verification failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rejopt/config.hpp"
#include "rejopt/evaluation.hpp"
#include "rejopt/text.hpp"
#include "rejopt/verify_suite.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerify = 3;

constexpr const char* kSeedEnv = "REJECT_GATE_SEED";

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::size_t workers = 1;
  bool no_svg = false;
};

// --seed beats REJECT_GATE_SEED, which beats the config file.
std::uint64_t resolve_seed(const GlobalOptions& opts, std::uint64_t fallback) {
  if (opts.seed) return *opts.seed;
  if (const char* env = std::getenv(kSeedEnv)) {
    const auto parsed = rejopt::parse_unsigned(env);
    if (!parsed) throw rejopt::Error(rejopt::ErrorCode::config_error, std::string(kSeedEnv) + ": not an unsigned integer");
    return *parsed;
  }
  return fallback;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  out << contents;
  out.close();
  if (!out) throw rejopt::Error(rejopt::ErrorCode::io_error, "cannot write " + path.string());
}

int cmd_demo(const GlobalOptions& opts, const std::string& which_name) {
  const auto which = rejopt::parse_demo(which_name);
  if (!which) {
    std::cerr << "demo: unknown figure '" << which_name << "' (expected fig1, fig2a or fig2b)\n";
    return kExitConfig;
  }
  const std::uint64_t seed = resolve_seed(opts, rejopt::ExperimentConfig{}.master_seed);
  const auto demo = rejopt::figure_demo_data(*which, seed);
  const fs::path dir = opts.out.value_or(".");

  std::ostringstream csv;
  rejopt::write_demo_csv(csv, demo.rows);
  write_file(dir / (which_name + ".csv"), csv.str());
  if (!opts.no_svg) write_file(dir / (which_name + ".svg"), rejopt::render_demo_svg(demo));
  std::cout << "wrote " << (dir / (which_name + ".csv")).string() << '\n';
  return kExitOk;
}

int cmd_experiment(const GlobalOptions& opts, const std::string& config_path) {
  rejopt::ExperimentConfig config = rejopt::load_config(config_path);
  config.master_seed = resolve_seed(opts, config.master_seed);
  if (opts.out) config.output_dir = *opts.out;

  const auto result = rejopt::run_experiment(config, opts.workers);
  const fs::path dir = config.output_dir;

  std::ostringstream csv;
  rejopt::write_summary_csv(csv, result.rows);
  write_file(dir / "aurec.csv", csv.str());
  if (!opts.no_svg) write_file(dir / "aurec.svg", rejopt::render_aurec_svg(result.rows));

  std::size_t failed = 0;
  for (const auto& t : result.trials) failed += t.error.empty() ? 0 : 1;

  std::cout << std::left << std::setw(6) << "m" << std::setw(18) << "method" << std::right << std::setw(12)
            << "mean_aurec" << std::setw(12) << "q40" << std::setw(12) << "q60" << std::setw(8) << "trials" << '\n';
  std::cout << std::setprecision(5);
  for (const auto& r : result.rows) {
    std::cout << std::left << std::setw(6) << r.m << std::setw(18) << rejopt::to_string(r.method) << std::right;
    if (r.trials > 0) {
      std::cout << std::setw(12) << r.mean_aurec << std::setw(12) << r.q40 << std::setw(12) << r.q60;
    } else {
      std::cout << std::setw(12) << "-" << std::setw(12) << "-" << std::setw(12) << "-";
    }
    std::cout << std::setw(8) << r.trials << '\n';
  }
  if (failed > 0) std::cerr << failed << " trial(s) failed and were recorded as missing\n";
  std::cout << "wrote " << (dir / "aurec.csv").string() << '\n';
  return kExitOk;
}

int cmd_verify(const GlobalOptions& opts, double perturbation) {
  rejopt::VerifyOptions options;
  options.seed = resolve_seed(opts, options.seed);
  options.epistemic_bias = perturbation;
  const auto checks = rejopt::run_verification_suite(options);
  const rejopt::CheckResult* first_failure = nullptr;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(20) << c.name << " max deviation "
              << std::setprecision(6) << c.max_deviation << " (tolerance " << c.tolerance << ")  " << c.detail
              << '\n';
    if (!c.passed && !first_failure) first_failure = &c;
  }
  if (first_failure) {
    std::cerr << "verification failed: " << first_failure->name << '\n';
    return kExitVerify;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reject-option predictors: demos, experiments and verification"};
  app.require_subcommand(1);

  GlobalOptions opts;
  std::uint64_t seed_value = 0;
  std::string out_value;
  auto* seed_opt = app.add_option("--seed", seed_value, "Master seed (overrides config and " + std::string(kSeedEnv) + ")");
  auto* out_opt = app.add_option("--out", out_value, "Output directory");
  app.add_option("--workers", opts.workers, "Worker threads; affects wall time only")->check(CLI::PositiveNumber);
  app.add_flag("--no-svg", opts.no_svg, "Skip SVG output");

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "Tabulate a figure demo (fig1, fig2a, fig2b)");
  demo->add_option("which", demo_name, "Figure to reproduce")->required();

  std::string config_path;
  auto* experiment = app.add_subcommand("experiment", "Run the AuReC experiment from a config file");
  experiment->add_option("config", config_path, "Config file (key = value)")->required();

  double perturbation = 0.0;
  auto* verify = app.add_subcommand("verify", "Run the oracle verification suite");
  verify->add_option("--perturb-epistemic", perturbation, "Test hook: bias added to E(x, D) in the theorem1 check")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (*seed_opt) opts.seed = seed_value;
  if (*out_opt) opts.out = out_value;

  try {
    if (*demo) return cmd_demo(opts, demo_name);
    if (*experiment) return cmd_experiment(opts, config_path);
    if (*verify) return cmd_verify(opts, perturbation);
  } catch (const rejopt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case rejopt::ErrorCode::io_error: return kExitIo;
      case rejopt::ErrorCode::config_error: return kExitConfig;
      default: return kExitConfig;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitConfig;
}
