#include "noma/scenario.hpp"

#include <algorithm>
#include <string>

namespace noma::cli {

namespace {

const char* user_name(std::size_t user) { return user == 0 ? "primary" : "secondary"; }

}  // namespace

CsvTable outage_table(const outage::OutageCurve& curve) {
  CsvTable t({"scenario", "policy", "user", "snr_db", "p_hat", "ci_low", "ci_high", "trials"});
  for (std::size_t p = 0; p < curve.policies.size(); ++p) {
    for (std::size_t u = 0; u < 2; ++u) {
      for (std::size_t i = 0; i < curve.snr_db.size(); ++i) {
        const auto& e = curve.at(i, p, u);
        t.add_row({std::string("outage_sweep"), std::string(sic::to_string(curve.policies[p])),
                   std::string(user_name(u)), curve.snr_db[i], e.p_hat, e.ci_low, e.ci_high,
                   static_cast<std::int64_t>(e.trials)});
      }
    }
  }
  return t;
}

CsvTable connectivity_table(const SemigfScenario& scenario, std::uint64_t seed, unsigned workers) {
  CsvTable t({"variant", "k_pgfu", "rho", "mean_served", "ci_low", "ci_high", "slots"});
  for (semigf::Variant v : scenario.variants) {
    for (std::size_t i = 0; i < scenario.k_pgfu.size(); ++i) {
      semigf::MultiOrbConfig config = scenario.base;
      config.population.k = scenario.k_pgfu[i];
      // Point key = sweep index, shared by all variants: common random numbers.
      const auto est = semigf::connectivity(config, v, scenario.slots_per_point, seed, i, workers);
      t.add_row({std::string(semigf::to_string(v)), static_cast<std::int64_t>(scenario.k_pgfu[i]),
                 config.population.activation_prob, est.mean_served, est.ci_low, est.ci_high,
                 static_cast<std::int64_t>(est.slots)});
    }
  }
  return t;
}

CsvTable admission_table(const DownlinkScenario& scenario) {
  const downlink::Pairing plan = downlink::plan_clusters(scenario.sensors, scenario.broadbands);
  const auto admitted = downlink::maximize_connectivity(plan.clusters, scenario.power_budget);

  CsvTable t({"status", "cluster", "sensor", "broadband", "sensor_gain", "broadband_gain", "p_sensor",
              "p_broadband", "required_total"});
  for (std::size_t c = 0; c < plan.clusters.size(); ++c) {
    const auto& cl = plan.clusters[c];
    const bool in = std::find(admitted.begin(), admitted.end(), c) != admitted.end();
    t.add_row({std::string(in ? "admitted" : "rejected"), static_cast<std::int64_t>(c),
               static_cast<std::int64_t>(cl.sensor), static_cast<std::int64_t>(cl.broadband),
               scenario.sensors[cl.sensor].channel_gain, scenario.broadbands[cl.broadband].channel_gain, cl.p_sensor,
               cl.p_broadband, cl.required_total});
  }
  for (std::size_t s : plan.unpaired_sensors) {
    t.add_row({std::string("unpaired_sensor"), std::int64_t{-1}, static_cast<std::int64_t>(s), std::int64_t{-1},
               scenario.sensors[s].channel_gain, 0.0, 0.0, 0.0, 0.0});
  }
  for (std::size_t b : plan.unpaired_broadbands) {
    t.add_row({std::string("unpaired_broadband"), std::int64_t{-1}, std::int64_t{-1}, static_cast<std::int64_t>(b),
               0.0, scenario.broadbands[b].channel_gain, 0.0, 0.0, 0.0});
  }
  return t;
}

AxesSpec outage_axes() {
  return {"snr_db", "p_hat", {"policy", "user"}, true, "Outage probability by SIC decoding order", "transmit SNR (dB)",
          "outage probability"};
}

AxesSpec connectivity_axes() {
  return {"k_pgfu", "mean_served", {"variant"}, false, "Semi-grant-free connectivity", "potential GF users K",
          "served users per slot"};
}

std::vector<std::filesystem::path> run_scenario(const ExperimentConfig& config, unsigned workers) {
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& stem, const CsvTable& table, const AxesSpec* axes) {
    const auto csv = config.output_dir / (stem + ".csv");
    write_file_atomic(csv, table.to_string());
    written.push_back(csv);
    if (axes && config.svg && !table.empty()) {
      const auto svg = config.output_dir / (stem + ".svg");
      write_file_atomic(svg, render_svg(table, *axes));
      written.push_back(svg);
    }
  };

  switch (config.scenario) {
    case ScenarioKind::outage_sweep: {
      const auto curve = outage::snr_sweep(*config.outage, workers);
      const auto axes = outage_axes();
      emit("outage", outage_table(curve), &axes);
      break;
    }
    case ScenarioKind::semigf_connectivity: {
      const auto axes = connectivity_axes();
      emit("connectivity", connectivity_table(*config.semigf, config.seed, workers), &axes);
      break;
    }
    case ScenarioKind::downlink_plan:
      emit("admission", admission_table(*config.downlink), nullptr);
      break;
  }
  return written;
}

}  // namespace noma::cli
