#pragma once

#include <filesystem>
#include <vector>

#include "noma/config.hpp"
#include "noma/csv.hpp"
#include "noma/svg.hpp"

namespace noma::cli {

CsvTable outage_table(const outage::OutageCurve& curve);
CsvTable connectivity_table(const SemigfScenario& scenario, std::uint64_t seed, unsigned workers);
CsvTable admission_table(const DownlinkScenario& scenario);

AxesSpec outage_axes();
AxesSpec connectivity_axes();

/// Runs the configured experiment and writes its CSV (and SVG when enabled)
/// into config.output_dir. Returns the written paths.
std::vector<std::filesystem::path> run_scenario(const ExperimentConfig& config, unsigned workers = 1);

}  // namespace noma::cli
