#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "noma/downlink.hpp"
#include "noma/outage.hpp"
#include "noma/semigf.hpp"

namespace noma::cli {

enum class ScenarioKind { outage_sweep, semigf_connectivity, downlink_plan };

std::string_view to_string(ScenarioKind kind);

/// Diagnostic for a config that cannot be used. `line` is 1-based, 0 when
/// unknown; `key_path` is dotted (e.g. "outage_sweep.trials_per_point").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_path, std::size_t line, const std::string& message);

  const std::string& key_path() const { return key_path_; }
  std::size_t line() const { return line_; }

 private:
  std::string key_path_;
  std::size_t line_;
};

struct SemigfScenario {
  semigf::MultiOrbConfig base;  // population.k is overridden per sweep point
  std::vector<std::size_t> k_pgfu;
  std::vector<semigf::Variant> variants;
  std::uint64_t slots_per_point = 1;
};

struct DownlinkScenario {
  double power_budget = 0.0;
  std::vector<downlink::SensorProfile> sensors;
  std::vector<downlink::BroadbandProfile> broadbands;
};

struct ExperimentConfig {
  ScenarioKind scenario = ScenarioKind::outage_sweep;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  bool svg = true;

  // Exactly the block matching `scenario` is populated.
  std::optional<outage::SweepSpec> outage;
  std::optional<SemigfScenario> semigf;
  std::optional<DownlinkScenario> downlink;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Built-in experiments: "fig2_style" (outage sweep over three SIC
/// policies) and "fig3_style" (semi-grant-free connectivity, 10 ORBs).
ExperimentConfig preset(std::string_view name);
std::string preset_text(std::string_view name);

}  // namespace noma::cli
