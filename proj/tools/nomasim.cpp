// nomasim: runs seeded NOMA access experiments and writes CSV/SVG results.
//
//   nomasim run --config exp.yaml [--seed N] [--workers N] [--out DIR]
//   nomasim preset fig2_style|fig3_style [--out DIR] [--seed N] [--workers N]
//
// Exit codes: 0 success, 2 config error, 3 runtime or I/O error.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "noma/config.hpp"
#include "noma/scenario.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
};

void apply(noma::cli::ExperimentConfig& config, const Overrides& o) {
  if (o.seed) {
    config.seed = *o.seed;
    if (config.outage) config.outage->master_seed = *o.seed;
  }
  if (o.out) config.output_dir = *o.out;
}

int execute(noma::cli::ExperimentConfig config, const Overrides& o) {
  apply(config, o);
  try {
    for (const auto& path : noma::cli::run_scenario(config, o.workers)) {
      std::printf("wrote %s\n", path.string().c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntimeError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded Monte Carlo simulator for NOMA SIC ordering, semi-grant-free access and downlink planning"};
  app.require_subcommand(1);

  Overrides overrides;
  std::string config_path;
  std::string preset_name;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", overrides.seed, "Override the master seed");
    sub->add_option("--workers", overrides.workers, "Worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", overrides.out, "Output directory override");
  };

  CLI::App* run = app.add_subcommand("run", "Run an experiment described by a config file");
  run->add_option("--config", config_path, "Experiment config (YAML)")->required();
  add_common(run);

  CLI::App* preset = app.add_subcommand("preset", "Run a built-in experiment");
  preset->add_option("name", preset_name, "fig2_style or fig3_style")
      ->required()
      ->check(CLI::IsMember({"fig2_style", "fig3_style"}));
  add_common(preset);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  noma::cli::ExperimentConfig config;
  try {
    config = run->parsed() ? noma::cli::load_config(config_path) : noma::cli::preset(preset_name);
  } catch (const noma::cli::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  }
  return execute(std::move(config), overrides);
}
