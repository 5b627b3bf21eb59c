#include "chsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

extern char** environ;

namespace chsim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("configuration error: " + what);
}

std::string mode_name(FitnessMode mode) {
  return mode == FitnessMode::Residual ? "residual" : "literal";
}

FitnessMode mode_from_string(const std::string& name) {
  const std::string n = lower(name);
  if (n == "residual") return FitnessMode::Residual;
  if (n == "literal") return FitnessMode::Literal;
  bad("unknown fitness mode '" + name + "' (residual|literal)");
}

std::string forward_mode_name(ChForwardMode mode) {
  return mode == ChForwardMode::Aggregate ? "aggregate" : "concatenate";
}

ChForwardMode forward_mode_from_string(const std::string& name) {
  const std::string n = lower(name);
  if (n == "aggregate") return ChForwardMode::Aggregate;
  if (n == "concatenate") return ChForwardMode::Concatenate;
  bad("unknown ch_forward_mode '" + name + "' (aggregate|concatenate)");
}

// One configurable leaf: how to set it from a JSON value and from the text of
// an environment variable.
struct FieldBinding {
  std::function<void(Config&, const json&, const std::string&)> from_json;
  std::function<void(Config&, const std::string&, const std::string&)> from_text;
};

template <class Ref>
FieldBinding int_field(Ref ref) {
  return {
      [ref](Config& c, const json& j, const std::string& key) {
        if (!j.is_number_integer()) bad(key + " must be an integer");
        ref(c) = j.get<int>();
      },
      [ref](Config& c, const std::string& text, const std::string& key) {
        std::size_t used = 0;
        int value = 0;
        try {
          value = std::stoi(text, &used);
        } catch (const std::exception&) {
          bad(key + ": cannot parse integer '" + text + "'");
        }
        if (used != text.size()) bad(key + ": cannot parse integer '" + text + "'");
        ref(c) = value;
      }};
}

template <class Ref>
FieldBinding u64_field(Ref ref) {
  return {
      [ref](Config& c, const json& j, const std::string& key) {
        if (!j.is_number_integer() || (j.is_number_integer() && j.get<long long>() < 0 && !j.is_number_unsigned()))
          bad(key + " must be a non-negative integer");
        ref(c) = j.get<std::uint64_t>();
      },
      [ref](Config& c, const std::string& text, const std::string& key) {
        std::size_t used = 0;
        unsigned long long value = 0;
        try {
          value = std::stoull(text, &used);
        } catch (const std::exception&) {
          bad(key + ": cannot parse integer '" + text + "'");
        }
        if (used != text.size()) bad(key + ": cannot parse integer '" + text + "'");
        ref(c) = static_cast<std::uint64_t>(value);
      }};
}

template <class Ref>
FieldBinding double_field(Ref ref) {
  return {
      [ref](Config& c, const json& j, const std::string& key) {
        if (!j.is_number()) bad(key + " must be a number");
        ref(c) = j.get<double>();
      },
      [ref](Config& c, const std::string& text, const std::string& key) {
        std::size_t used = 0;
        double value = 0.0;
        try {
          value = std::stod(text, &used);
        } catch (const std::exception&) {
          bad(key + ": cannot parse number '" + text + "'");
        }
        if (used != text.size()) bad(key + ": cannot parse number '" + text + "'");
        ref(c) = value;
      }};
}

template <class Ref>
FieldBinding bool_field(Ref ref) {
  return {
      [ref](Config& c, const json& j, const std::string& key) {
        if (!j.is_boolean()) bad(key + " must be a boolean");
        ref(c) = j.get<bool>();
      },
      [ref](Config& c, const std::string& text, const std::string& key) {
        const std::string t = lower(text);
        if (t == "true" || t == "1")
          ref(c) = true;
        else if (t == "false" || t == "0")
          ref(c) = false;
        else
          bad(key + ": cannot parse boolean '" + text + "'");
      }};
}

template <class Ref>
FieldBinding opt_double_field(Ref ref) {
  return {
      [ref](Config& c, const json& j, const std::string& key) {
        if (j.is_null()) {
          ref(c).reset();
          return;
        }
        if (!j.is_number()) bad(key + " must be a number or null");
        ref(c) = j.get<double>();
      },
      [ref](Config& c, const std::string& text, const std::string& key) {
        const std::string t = lower(text);
        if (t == "none" || t == "null" || t.empty()) {
          ref(c).reset();
          return;
        }
        std::size_t used = 0;
        double value = 0.0;
        try {
          value = std::stod(text, &used);
        } catch (const std::exception&) {
          bad(key + ": cannot parse number '" + text + "'");
        }
        if (used != text.size()) bad(key + ": cannot parse number '" + text + "'");
        ref(c) = value;
      }};
}

// String-valued enums share this shape.
template <class Ref, class Parse>
FieldBinding enum_field(Ref ref, Parse parse) {
  return {
      [ref, parse](Config& c, const json& j, const std::string& key) {
        if (!j.is_string()) bad(key + " must be a string");
        ref(c) = parse(j.get<std::string>());
      },
      [ref, parse](Config& c, const std::string& text, const std::string&) {
        ref(c) = parse(text);
      }};
}

using Section = std::map<std::string, FieldBinding>;

const std::map<std::string, Section>& schema() {
  static const std::map<std::string, Section> s = [] {
    std::map<std::string, Section> m;

    auto& network = m["network"];
    network["node_count"] = int_field([](Config& c) -> int& { return c.network.node_count; });
    network["area_width"] = double_field([](Config& c) -> double& { return c.network.area.width; });
    network["area_height"] = double_field([](Config& c) -> double& { return c.network.area.height; });
    network["bs_x"] = double_field([](Config& c) -> double& { return c.network.bs_position.x; });
    network["bs_y"] = double_field([](Config& c) -> double& { return c.network.bs_position.y; });
    network["packet_size_bits"] = int_field([](Config& c) -> int& { return c.network.packet_size_bits; });
    network["initial_energy"] = double_field([](Config& c) -> double& { return c.network.initial_energy; });
    network["cluster_count"] = int_field([](Config& c) -> int& { return c.network.cluster_count; });
    network["forwarding_radius"] = double_field([](Config& c) -> double& { return c.network.forwarding_radius; });
    network["max_rounds"] = int_field([](Config& c) -> int& { return c.network.max_rounds; });
    network["rng_seed"] = u64_field([](Config& c) -> std::uint64_t& { return c.network.rng_seed; });
    network["arrival_rate_min"] = double_field([](Config& c) -> double& { return c.network.arrival_rate_range.lo; });
    network["arrival_rate_max"] = double_field([](Config& c) -> double& { return c.network.arrival_rate_range.hi; });
    network["forwarding_capacity_min"] = double_field([](Config& c) -> double& { return c.network.forwarding_capacity_range.lo; });
    network["forwarding_capacity_max"] = double_field([](Config& c) -> double& { return c.network.forwarding_capacity_range.hi; });
    network["queue_length_min"] = double_field([](Config& c) -> double& { return c.network.queue_length_range.lo; });
    network["queue_length_max"] = double_field([](Config& c) -> double& { return c.network.queue_length_range.hi; });
    network["signal_speed"] = double_field([](Config& c) -> double& { return c.network.signal_speed; });
    network["transmit_power_mw"] = double_field([](Config& c) -> double& { return c.network.transmit_power_mw; });
    network["max_network_throughput_bps"] = double_field([](Config& c) -> double& { return c.network.max_network_throughput_bps; });

    auto& radio = m["radio"];
    radio["electronics_energy"] = double_field([](Config& c) -> double& { return c.network.radio.electronics_energy; });
    radio["fs_amp"] = double_field([](Config& c) -> double& { return c.network.radio.fs_amp; });
    radio["mp_amp"] = double_field([](Config& c) -> double& { return c.network.radio.mp_amp; });
    radio["aggregation_energy"] = double_field([](Config& c) -> double& { return c.network.radio.aggregation_energy; });
    radio["threshold_distance"] = double_field([](Config& c) -> double& { return c.network.radio.threshold_distance; });
    radio["literal_linear_amp"] = bool_field([](Config& c) -> bool& { return c.network.radio.literal_linear_amp; });

    auto& fitness = m["fitness"];
    fitness["mode"] = enum_field([](Config& c) -> FitnessMode& { return c.fitness.mode; }, mode_from_string);
    fitness["energy"] = double_field([](Config& c) -> double& { return c.fitness.weights.energy; });
    fitness["comm_cost"] = double_field([](Config& c) -> double& { return c.fitness.weights.comm_cost; });
    fitness["queuing_delay"] = double_field([](Config& c) -> double& { return c.fitness.weights.queuing_delay; });
    fitness["link_quality"] = double_field([](Config& c) -> double& { return c.fitness.weights.link_quality; });
    fitness["centrality"] = double_field([](Config& c) -> double& { return c.fitness.weights.centrality; });

    auto& cso = m["cso"];
    cso["population"] = int_field([](Config& c) -> int& { return c.cso.population; });
    cso["rooster_count"] = int_field([](Config& c) -> int& { return c.cso.rooster_count; });
    cso["hen_count"] = int_field([](Config& c) -> int& { return c.cso.hen_count; });
    cso["mother_count"] = int_field([](Config& c) -> int& { return c.cso.mother_count; });
    cso["reorder_period"] = int_field([](Config& c) -> int& { return c.cso.reorder_period; });
    cso["max_iterations"] = int_field([](Config& c) -> int& { return c.cso.max_iterations; });
    cso["epsilon"] = double_field([](Config& c) -> double& { return c.cso.epsilon; });
    cso["fl_min"] = double_field([](Config& c) -> double& { return c.cso.fl_min; });
    cso["fl_max"] = double_field([](Config& c) -> double& { return c.cso.fl_max; });
    cso["use_fractions"] = bool_field([](Config& c) -> bool& { return c.cso.use_fractions; });
    cso["rooster_fraction"] = double_field([](Config& c) -> double& { return c.cso.rooster_fraction; });
    cso["hen_fraction"] = double_field([](Config& c) -> double& { return c.cso.hen_fraction; });
    cso["mother_fraction"] = double_field([](Config& c) -> double& { return c.cso.mother_fraction; });

    auto& pso = m["pso"];
    pso["population"] = int_field([](Config& c) -> int& { return c.pso.population; });
    pso["max_iterations"] = int_field([](Config& c) -> int& { return c.pso.max_iterations; });
    pso["inertia"] = double_field([](Config& c) -> double& { return c.pso.inertia; });
    pso["cognitive"] = double_field([](Config& c) -> double& { return c.pso.cognitive; });
    pso["social"] = double_field([](Config& c) -> double& { return c.pso.social; });
    pso["velocity_clamp_fraction"] = double_field([](Config& c) -> double& { return c.pso.velocity_clamp_fraction; });

    auto& simulation = m["simulation"];
    simulation["selector"] = enum_field([](Config& c) -> SelectorKind& { return c.simulation.selector; }, selector_from_string);
    simulation["sleep_probability"] = double_field([](Config& c) -> double& { return c.simulation.sleep_probability; });
    simulation["packets_per_round"] = int_field([](Config& c) -> int& { return c.simulation.packets_per_round; });
    simulation["election_period"] = int_field([](Config& c) -> int& { return c.simulation.election_period; });
    simulation["ch_forward_mode"] = enum_field([](Config& c) -> ChForwardMode& { return c.simulation.ch_forward_mode; }, forward_mode_from_string);
    simulation["tx_power_dbm"] = opt_double_field([](Config& c) -> std::optional<double>& { return c.simulation.tx_power_dbm; });

    return m;
  }();
  return s;
}

void apply_json(Config& cfg, const json& doc) {
  if (!doc.is_object()) bad("top level must be a JSON object of sections");
  const auto& sections = schema();
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto section = sections.find(it.key());
    if (section == sections.end()) bad("unknown section '" + it.key() + "'");
    if (!it.value().is_object()) bad("section '" + it.key() + "' must be an object");
    for (auto field = it.value().begin(); field != it.value().end(); ++field) {
      const std::string path = it.key() + "." + field.key();
      const auto binding = section->second.find(field.key());
      if (binding == section->second.end()) bad("unknown key '" + path + "'");
      binding->second.from_json(cfg, field.value(), path);
    }
  }
}

void apply_env(Config& cfg) {
  // Flat lookup: SIM_<SECTION>_<FIELD>, case-insensitive.
  static const std::map<std::string, std::pair<std::string, const FieldBinding*>> flat = [] {
    std::map<std::string, std::pair<std::string, const FieldBinding*>> f;
    for (const auto& [section, fields] : schema())
      for (const auto& [name, binding] : fields)
        f[section + "_" + name] = {section + "." + name, &binding};
    return f;
  }();

  for (char** env = environ; env && *env; ++env) {
    const std::string entry(*env);
    if (entry.rfind("SIM_", 0) != 0) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = lower(entry.substr(4, eq - 4));
    const std::string value = entry.substr(eq + 1);
    const auto it = flat.find(key);
    if (it == flat.end()) bad("unknown environment override " + entry.substr(0, eq));
    it->second.second->from_text(cfg, value, it->second.first);
  }
}

}  // namespace

std::string to_string(SelectorKind kind) {
  switch (kind) {
    case SelectorKind::Cso: return "cso";
    case SelectorKind::Pso: return "pso";
    case SelectorKind::Random: return "random";
    case SelectorKind::Oracle: return "oracle";
  }
  return "cso";
}

SelectorKind selector_from_string(const std::string& name) {
  const std::string n = lower(name);
  if (n == "cso") return SelectorKind::Cso;
  if (n == "pso") return SelectorKind::Pso;
  if (n == "random") return SelectorKind::Random;
  if (n == "oracle") return SelectorKind::Oracle;
  bad("unknown selector '" + name + "' (cso|pso|random|oracle)");
}

void Config::validate() const {
  network.validate();
  fitness.weights.validate();
  simulation.validate();
  // The optimizer templates carry no bounds until a selection event fills
  // them in; validate the scalar parameters against a stand-in dimension.
  SwarmConfig swarm = cso;
  if (swarm.bounds.empty()) swarm.bounds.push_back(Bounds{0.0, 1.0});
  swarm.validate();
  PsoConfig particle = pso;
  if (particle.bounds.empty()) particle.bounds.push_back(Bounds{0.0, 1.0});
  particle.validate();
}

Config Config::paper_scale() { return Config{}; }

Config Config::desk_scale() {
  Config cfg;
  cfg.network.node_count = 100;
  cfg.network.cluster_count = 5;
  cfg.network.max_rounds = 100;
  return cfg;
}

Config config_preset(const std::string& name) {
  const std::string n = lower(name);
  if (n == "desk") return Config::desk_scale();
  if (n == "paper-scale") return Config::paper_scale();
  bad("unknown preset '" + name + "' (desk|paper-scale)");
}

Config load_config_text(const std::string& json_text, const Config& base,
                        bool with_env) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  Config cfg = base;
  apply_json(cfg, doc);
  if (with_env) apply_env(cfg);
  cfg.validate();
  return cfg;
}

Config load_config(const std::string& path, const Config& base, bool with_env) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_config_text(buffer.str(), base, with_env);
}

std::string config_to_json(const Config& cfg) {
  ordered_json doc;
  auto& network = doc["network"];
  network["node_count"] = cfg.network.node_count;
  network["area_width"] = cfg.network.area.width;
  network["area_height"] = cfg.network.area.height;
  network["bs_x"] = cfg.network.bs_position.x;
  network["bs_y"] = cfg.network.bs_position.y;
  network["packet_size_bits"] = cfg.network.packet_size_bits;
  network["initial_energy"] = cfg.network.initial_energy;
  network["cluster_count"] = cfg.network.cluster_count;
  network["forwarding_radius"] = cfg.network.forwarding_radius;
  network["max_rounds"] = cfg.network.max_rounds;
  network["rng_seed"] = cfg.network.rng_seed;
  network["arrival_rate_min"] = cfg.network.arrival_rate_range.lo;
  network["arrival_rate_max"] = cfg.network.arrival_rate_range.hi;
  network["forwarding_capacity_min"] = cfg.network.forwarding_capacity_range.lo;
  network["forwarding_capacity_max"] = cfg.network.forwarding_capacity_range.hi;
  network["queue_length_min"] = cfg.network.queue_length_range.lo;
  network["queue_length_max"] = cfg.network.queue_length_range.hi;
  network["signal_speed"] = cfg.network.signal_speed;
  network["transmit_power_mw"] = cfg.network.transmit_power_mw;
  network["max_network_throughput_bps"] = cfg.network.max_network_throughput_bps;

  auto& radio = doc["radio"];
  radio["electronics_energy"] = cfg.network.radio.electronics_energy;
  radio["fs_amp"] = cfg.network.radio.fs_amp;
  radio["mp_amp"] = cfg.network.radio.mp_amp;
  radio["aggregation_energy"] = cfg.network.radio.aggregation_energy;
  radio["threshold_distance"] = cfg.network.radio.threshold_distance;
  radio["literal_linear_amp"] = cfg.network.radio.literal_linear_amp;

  auto& fitness = doc["fitness"];
  fitness["mode"] = mode_name(cfg.fitness.mode);
  fitness["energy"] = cfg.fitness.weights.energy;
  fitness["comm_cost"] = cfg.fitness.weights.comm_cost;
  fitness["queuing_delay"] = cfg.fitness.weights.queuing_delay;
  fitness["link_quality"] = cfg.fitness.weights.link_quality;
  fitness["centrality"] = cfg.fitness.weights.centrality;

  auto& cso = doc["cso"];
  cso["population"] = cfg.cso.population;
  cso["rooster_count"] = cfg.cso.rooster_count;
  cso["hen_count"] = cfg.cso.hen_count;
  cso["mother_count"] = cfg.cso.mother_count;
  cso["reorder_period"] = cfg.cso.reorder_period;
  cso["max_iterations"] = cfg.cso.max_iterations;
  cso["epsilon"] = cfg.cso.epsilon;
  cso["fl_min"] = cfg.cso.fl_min;
  cso["fl_max"] = cfg.cso.fl_max;
  cso["use_fractions"] = cfg.cso.use_fractions;
  cso["rooster_fraction"] = cfg.cso.rooster_fraction;
  cso["hen_fraction"] = cfg.cso.hen_fraction;
  cso["mother_fraction"] = cfg.cso.mother_fraction;

  auto& pso = doc["pso"];
  pso["population"] = cfg.pso.population;
  pso["max_iterations"] = cfg.pso.max_iterations;
  pso["inertia"] = cfg.pso.inertia;
  pso["cognitive"] = cfg.pso.cognitive;
  pso["social"] = cfg.pso.social;
  pso["velocity_clamp_fraction"] = cfg.pso.velocity_clamp_fraction;

  auto& simulation = doc["simulation"];
  simulation["selector"] = to_string(cfg.simulation.selector);
  simulation["sleep_probability"] = cfg.simulation.sleep_probability;
  simulation["packets_per_round"] = cfg.simulation.packets_per_round;
  simulation["election_period"] = cfg.simulation.election_period;
  simulation["ch_forward_mode"] = forward_mode_name(cfg.simulation.ch_forward_mode);
  if (cfg.simulation.tx_power_dbm)
    simulation["tx_power_dbm"] = *cfg.simulation.tx_power_dbm;
  else
    simulation["tx_power_dbm"] = nullptr;

  return doc.dump(2) + "\n";
}

}  // namespace chsim
