#include "noma/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace noma::cli {

namespace {

std::size_t line_of(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  return mark.is_null() ? 0 : static_cast<std::size_t>(mark.line) + 1;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// A YAML mapping whose keys are consumed one by one; anything left over at
// finish() is an unknown key.
class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (!node_.IsMap()) fail("expected a mapping");
  }

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_of(node_); }

  [[noreturn]] void fail(const std::string& message) const { throw ConfigError(path_, line(), message); }

  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

  YAML::Node take(const std::string& key) {
    used_.insert(key);
    const YAML::Node n = node_[key];
    if (!n) throw ConfigError(join(path_, key), line(), "missing required key");
    return n;
  }

  template <typename T>
  T get(const std::string& key) {
    const YAML::Node n = take(key);
    return convert<T>(n, join(path_, key));
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) {
    if (!has(key)) {
      used_.insert(key);
      return fallback;
    }
    return get<T>(key);
  }

  template <typename T>
  std::vector<T> list(const std::string& key) {
    const YAML::Node n = take(key);
    const std::string p = join(path_, key);
    if (!n.IsSequence()) throw ConfigError(p, line_of(n), "expected a list");
    std::vector<T> out;
    for (std::size_t i = 0; i < n.size(); ++i) {
      out.push_back(convert<T>(n[i], p + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  Section child(const std::string& key) { return Section(take(key), join(path_, key)); }

  void finish() const {
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!used_.count(key)) throw ConfigError(join(path_, key), line_of(kv.first), "unknown key '" + key + "'");
    }
  }

  template <typename T>
  static T convert(const YAML::Node& n, const std::string& path) {
    if (!n.IsScalar()) throw ConfigError(path, line_of(n), "expected a scalar value");
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(path, line_of(n), "cannot read value '" + n.Scalar() + "'");
    }
  }

 private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> used_;
};

void require(bool ok, const std::string& path, std::size_t line, const std::string& message) {
  if (!ok) throw ConfigError(path, line, message);
}

template <typename Fn>
void validated(const Section& s, Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    s.fail(e.what());
  }
}

sic::DecodingPolicy parse_policy(const std::string& name, const std::string& path, std::size_t line) {
  if (name == "csi_based") return sic::DecodingPolicy::csi_based;
  if (name == "qos_based") return sic::DecodingPolicy::qos_based;
  if (name == "hybrid") return sic::DecodingPolicy::hybrid;
  throw ConfigError(path, line, "unknown policy '" + name + "' (csi_based, qos_based, hybrid)");
}

semigf::Variant parse_variant(const std::string& name, const std::string& path, std::size_t line) {
  if (name == "plain") return semigf::Variant::plain;
  if (name == "power_pool") return semigf::Variant::power_pool;
  if (name == "power_pool_acb") return semigf::Variant::power_pool_acb;
  if (name == "gb_only") return semigf::Variant::gb_only;
  throw ConfigError(path, line, "unknown variant '" + name + "' (plain, power_pool, power_pool_acb, gb_only)");
}

channel::FadingModel parse_fading(Section s) {
  const auto kind = s.get<std::string>("kind");
  channel::FadingModel model;
  if (kind == "rayleigh") {
    model.kind = channel::FadingKind::rayleigh;
    model.mean_gain = s.get_or<double>("mean_gain", 1.0);
    require(model.mean_gain > 0.0, s.path() + ".mean_gain", s.line(), "rayleigh mean_gain must be > 0");
  } else if (kind == "deterministic") {
    model.kind = channel::FadingKind::deterministic;
    model.fixed_gains = s.list<double>("gains");
  } else {
    throw ConfigError(s.path() + ".kind", s.line(), "unknown fading kind '" + kind + "' (rayleigh, deterministic)");
  }
  s.finish();
  validated(s, [&] { model.validate(); });
  return model;
}

channel::FadingModel fading_or_default(Section& parent, const std::string& key) {
  if (!parent.has(key)) return channel::FadingModel::rayleigh(1.0);
  return parse_fading(parent.child(key));
}

std::pair<double, double> per_user(Section s, const char* what, bool positive) {
  const double p = s.get<double>("primary");
  const double q = s.get<double>("secondary");
  s.finish();
  if (positive) {
    require(p > 0.0, s.path() + ".primary", s.line(), std::string(what) + " must be > 0");
    require(q > 0.0, s.path() + ".secondary", s.line(), std::string(what) + " must be > 0");
  }
  return {p, q};
}

outage::SweepSpec parse_outage(Section s, std::uint64_t seed) {
  outage::SweepSpec spec;
  spec.master_seed = seed;
  spec.snr_db = s.list<double>("snr_db");
  require(!spec.snr_db.empty(), s.path() + ".snr_db", s.line(), "grid must not be empty");
  for (std::size_t i = 1; i < spec.snr_db.size(); ++i) {
    require(spec.snr_db[i] > spec.snr_db[i - 1], s.path() + ".snr_db", s.line(), "grid must be strictly increasing");
  }
  const auto trials = s.get<std::int64_t>("trials_per_point");
  require(trials >= 1, s.path() + ".trials_per_point", s.line(), "trials ≥ 1 required, got " + std::to_string(trials));
  spec.trials_per_point = static_cast<std::uint64_t>(trials);

  const auto [rp, rs] = per_user(s.child("rates"), "rate", true);
  spec.rates = {rp, rs};

  if (s.has("policies")) {
    const auto names = s.list<std::string>("policies");
    require(!names.empty(), s.path() + ".policies", s.line(), "at least one policy is required");
    for (const auto& n : names) spec.policies.push_back(parse_policy(n, s.path() + ".policies", s.line()));
  } else {
    spec.policies = {sic::DecodingPolicy::csi_based, sic::DecodingPolicy::qos_based, sic::DecodingPolicy::hybrid};
  }

  if (s.has("fading")) {
    Section f = s.child("fading");
    spec.fading = {fading_or_default(f, "primary"), fading_or_default(f, "secondary")};
    f.finish();
  } else {
    spec.fading = {channel::FadingModel::rayleigh(1.0), channel::FadingModel::rayleigh(1.0)};
  }

  if (s.has("power_offset_db")) {
    const auto [op, os] = per_user(s.child("power_offset_db"), "offset", false);
    spec.power_offset_db = {op, os};
  }
  s.finish();
  validated(s, [&] { spec.validate(); });
  return spec;
}

SemigfScenario parse_semigf(Section s) {
  SemigfScenario sc;
  const auto orbs = s.get<std::int64_t>("orbs");
  require(orbs >= 1, s.path() + ".orbs", s.line(), "orbs ≥ 1 required");
  const auto slots = s.get<std::int64_t>("slots_per_point");
  require(slots >= 1, s.path() + ".slots_per_point", s.line(), "slots ≥ 1 required");
  sc.slots_per_point = static_cast<std::uint64_t>(slots);

  const double rho = s.get<double>("activation_prob");
  require(rho >= 0.0 && rho <= 1.0, s.path() + ".activation_prob", s.line(), "activation_prob must lie in [0, 1]");

  for (auto k : s.list<std::int64_t>("k_pgfu")) {
    require(k >= 1, s.path() + ".k_pgfu", s.line(), "every K must be ≥ 1");
    sc.k_pgfu.push_back(static_cast<std::size_t>(k));
  }
  require(!sc.k_pgfu.empty(), s.path() + ".k_pgfu", s.line(), "at least one K is required");

  if (s.has("variants")) {
    for (const auto& n : s.list<std::string>("variants")) {
      sc.variants.push_back(parse_variant(n, s.path() + ".variants", s.line()));
    }
    require(!sc.variants.empty(), s.path() + ".variants", s.line(), "at least one variant is required");
  } else {
    sc.variants = {semigf::Variant::gb_only, semigf::Variant::plain, semigf::Variant::power_pool,
                   semigf::Variant::power_pool_acb};
  }

  Section gb = s.child("gb");
  semigf::GbUser gb_user;
  gb_user.target_rate = gb.get<double>("target_rate");
  gb_user.transmit_power = gb.get<double>("transmit_power");
  gb_user.fading = fading_or_default(gb, "fading");
  gb.finish();
  validated(gb, [&] { gb_user.validate(); });
  for (std::int64_t m = 0; m < orbs; ++m) {
    gb_user.orb_id = static_cast<std::size_t>(m);
    sc.base.gb_users.push_back(gb_user);
  }

  Section gf = s.child("gf");
  semigf::GfPopulation& pop = sc.base.population;
  pop.activation_prob = rho;
  pop.k = sc.k_pgfu.front();
  pop.target_rate = gf.get<double>("target_rate");
  pop.power_min = gf.get<double>("power_min");
  pop.power_max = gf.get<double>("power_max");
  pop.fading = fading_or_default(gf, "fading");
  gf.finish();
  validated(gf, [&] { pop.validate(); });

  Section pool = s.child("power_pool");
  const auto levels = pool.list<double>("levels");
  pool.finish();
  validated(pool, [&] { sc.base.pool = semigf::PowerPool(levels, sic::sinr_threshold(pop.target_rate)); });

  if (s.has("barring_factor")) {
    const YAML::Node b = s.take("barring_factor");
    if (b.IsScalar() && b.Scalar() == "ideal") {
      sc.base.barring_factor.reset();
    } else {
      const double q = Section::convert<double>(b, s.path() + ".barring_factor");
      require(q >= 0.0 && q <= 1.0, s.path() + ".barring_factor", line_of(b), "barring_factor must lie in [0, 1]");
      sc.base.barring_factor = q;
    }
  }
  s.finish();
  return sc;
}

DownlinkScenario parse_downlink(Section s) {
  DownlinkScenario sc;
  sc.power_budget = s.get<double>("power_budget");
  require(sc.power_budget >= 0.0, s.path() + ".power_budget", s.line(), "power_budget must be ≥ 0");

  const YAML::Node sensors = s.take("sensors");
  require(sensors.IsSequence(), s.path() + ".sensors", line_of(sensors), "expected a list");
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    Section e(sensors[i], s.path() + ".sensors[" + std::to_string(i) + "]");
    downlink::SensorProfile p;
    p.payload_bits = e.get<double>("payload_bits");
    p.blocklength = e.get<double>("blocklength");
    p.decoding_error = e.get<double>("decoding_error");
    p.channel_gain = e.get<double>("gain");
    e.finish();
    validated(e, [&] { p.validate(); });
    sc.sensors.push_back(p);
  }
  const YAML::Node bbs = s.take("broadbands");
  require(bbs.IsSequence(), s.path() + ".broadbands", line_of(bbs), "expected a list");
  for (std::size_t i = 0; i < bbs.size(); ++i) {
    Section e(bbs[i], s.path() + ".broadbands[" + std::to_string(i) + "]");
    downlink::BroadbandProfile p;
    p.target_rate = e.get<double>("target_rate");
    p.channel_gain = e.get<double>("gain");
    e.finish();
    validated(e, [&] { p.validate(); });
    sc.broadbands.push_back(p);
  }
  s.finish();
  return sc;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::outage_sweep:
      return "outage_sweep";
    case ScenarioKind::semigf_connectivity:
      return "semigf_connectivity";
    case ScenarioKind::downlink_plan:
      return "downlink_plan";
  }
  return "unknown";
}

ConfigError::ConfigError(std::string key_path, std::size_t line, const std::string& message)
    : std::runtime_error((line ? "line " + std::to_string(line) + ": " : std::string{}) +
                         (key_path.empty() ? message : key_path + ": " + message)),
      key_path_(std::move(key_path)),
      line_(line) {}

ExperimentConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", static_cast<std::size_t>(e.mark.line) + 1, "parse error: " + e.msg);
  }
  if (!root || root.IsNull()) throw ConfigError("", 0, "empty config");

  Section top(root, "");
  ExperimentConfig cfg;
  const auto scenario = top.get<std::string>("scenario");
  if (scenario == "outage_sweep") {
    cfg.scenario = ScenarioKind::outage_sweep;
  } else if (scenario == "semigf_connectivity") {
    cfg.scenario = ScenarioKind::semigf_connectivity;
  } else if (scenario == "downlink_plan") {
    cfg.scenario = ScenarioKind::downlink_plan;
  } else {
    throw ConfigError("scenario", line_of(root["scenario"]),
                      "unknown scenario '" + scenario + "' (outage_sweep, semigf_connectivity, downlink_plan)");
  }
  cfg.seed = top.get<std::uint64_t>("seed");
  cfg.output_dir = top.get_or<std::string>("output_dir", "out");
  cfg.svg = top.get_or<bool>("svg", true);

  switch (cfg.scenario) {
    case ScenarioKind::outage_sweep:
      cfg.outage = parse_outage(top.child("outage_sweep"), cfg.seed);
      break;
    case ScenarioKind::semigf_connectivity:
      cfg.semigf = parse_semigf(top.child("semigf_connectivity"));
      break;
    case ScenarioKind::downlink_plan:
      cfg.downlink = parse_downlink(top.child("downlink_plan"));
      break;
  }
  top.finish();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", 0, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string preset_text(std::string_view name) {
  if (name == "fig2_style") {
    return R"(scenario: outage_sweep
seed: 20240601
output_dir: out/fig2_style
outage_sweep:
  snr_db: [0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60]
  trials_per_point: 200000
  rates: {primary: 1.0, secondary: 0.5}
  policies: [csi_based, qos_based, hybrid]
  fading:
    primary: {kind: rayleigh, mean_gain: 1.0}
    secondary: {kind: rayleigh, mean_gain: 1.0}
)";
  }
  if (name == "fig3_style") {
    return R"(scenario: semigf_connectivity
seed: 20240602
output_dir: out/fig3_style
semigf_connectivity:
  orbs: 10
  slots_per_point: 10000
  activation_prob: 0.1
  k_pgfu: [10, 20, 50, 100, 150, 200, 250, 300, 350, 400]
  variants: [gb_only, plain, power_pool, power_pool_acb]
  gb: {target_rate: 1.0, transmit_power: 10.0, fading: {kind: rayleigh, mean_gain: 1.0}}
  gf: {target_rate: 1.0, power_min: 1.0, power_max: 10000.0, fading: {kind: rayleigh, mean_gain: 1.0}}
  power_pool: {levels: [5000, 300, 100]}
  barring_factor: ideal
)";
  }
  throw ConfigError("preset", 0, "unknown preset '" + std::string(name) + "' (fig2_style, fig3_style)");
}

ExperimentConfig preset(std::string_view name) { return parse_config(preset_text(name)); }

}  // namespace noma::cli
