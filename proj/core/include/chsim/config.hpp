#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "chsim/cso.hpp"
#include "chsim/fitness.hpp"
#include "chsim/geometry.hpp"
#include "chsim/pso.hpp"
#include "chsim/radio.hpp"

namespace chsim {

struct SamplingRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Deployment and protocol parameters. Struct defaults are the full-scale
// reference profile; desk_scale() shrinks it for quick runs.
struct NetworkConfig {
  int node_count = 1000;
  AreaSize area{500.0, 500.0};
  Position bs_position{500.0, 500.0};
  int packet_size_bits = 1500;
  double initial_energy = 2.0;  // J per node
  int cluster_count = 10;       // k cluster heads per round
  RadioEnergyModel radio{};
  // Communication-graph radius (m); <= 0 means use the radio threshold.
  double forwarding_radius = 0.0;
  int max_rounds = 500;
  std::uint64_t rng_seed = 1;
  SamplingRange arrival_rate_range{1.0, 20.0};        // A_R, packets/s
  SamplingRange forwarding_capacity_range{20.0, 100.0};  // F_C, packets/s
  SamplingRange queue_length_range{1.0, 10.0};        // P_i, packets (integer)
  double signal_speed = 3.0e8;                        // m/s
  double transmit_power_mw = 9.0;   // reference TX power for dBm sweeps
  double max_network_throughput_bps = 1e6;            // TDMA link rate

  double effective_forwarding_radius() const {
    return forwarding_radius > 0.0 ? forwarding_radius
                                   : radio.effective_threshold();
  }

  void validate() const;
};

struct FitnessConfig {
  FitnessWeights weights{};
  FitnessMode mode = FitnessMode::Residual;
};

enum class SelectorKind { Cso, Pso, Random, Oracle };

std::string to_string(SelectorKind kind);
SelectorKind selector_from_string(const std::string& name);

enum class ChForwardMode { Aggregate, Concatenate };

struct SimulationConfig {
  SelectorKind selector = SelectorKind::Cso;
  double sleep_probability = 0.0;  // per member per round; CHs never sleep
  int packets_per_round = 1;       // packets each member sends per round
  int election_period = 1;         // re-elect CHs every this many rounds
  // Aggregate: each CH forwards one packet_size_bits packet to the BS.
  // Concatenate: each CH forwards received bits plus its own packet.
  ChForwardMode ch_forward_mode = ChForwardMode::Aggregate;
  // When set, scales both amplifier coefficients by
  // 10^((tx_power_dbm - ref)/10) where ref = 10*log10(transmit_power_mw).
  std::optional<double> tx_power_dbm;

  void validate() const;
};

struct Config {
  NetworkConfig network{};
  FitnessConfig fitness{};
  SwarmConfig cso{};
  PsoConfig pso{};
  SimulationConfig simulation{};

  void validate() const;

  // Full-scale reference profile (the struct defaults).
  static Config paper_scale();
  // N=100, k=5, 100 rounds; everything else as the reference profile.
  static Config desk_scale();
};

// Named preset: "desk" or "paper-scale".
Config config_preset(const std::string& name);

// Loads JSON key/value sections onto `base` (absent keys keep base values,
// unknown keys are configuration errors), then applies SIM_* environment
// overrides (e.g. SIM_NETWORK_NODE_COUNT=200) unless apply_env is false.
Config load_config(const std::string& path, const Config& base,
                   bool apply_env = true);
Config load_config_text(const std::string& json_text, const Config& base,
                        bool apply_env = true);

std::string config_to_json(const Config& cfg);

}  // namespace chsim
