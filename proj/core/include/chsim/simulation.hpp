#pragma once

#include <functional>
#include <span>
#include <vector>

#include "chsim/selectors.hpp"

namespace chsim {

struct RoundMetrics {
  int round_index = 0;  // 1-based
  double energy_consumed = 0.0;              // J, sum of residual deltas
  int alive_count = 0;                       // after the round
  long long bits_delivered_to_bs = 0;
  double mean_propagation_delay_ms = 0.0;    // over delivered member packets
  double cluster_formation_ms = 0.0;         // wall clock, selection+assignment
  std::vector<int> ch_ids;
  double set_fitness = 0.0;
};

struct RunSummary {
  int rounds_executed = 0;
  // Death milestones in rounds; max_rounds stands in when never reached.
  int first_node_death_round = 0;
  int half_nodes_death_round = 0;
  int last_node_death_round = 0;
  double total_energy = 0.0;       // J
  long long total_bits = 0;
  double mean_throughput_mbps = 0.0;
  double mean_delay_ms = 0.0;      // over all delivered member packets
  double mean_formation_ms = 0.0;
  std::vector<RoundMetrics> rounds;
};

struct SimulationState {
  Network network;
  Config config;
  SelectorKind selector = SelectorKind::Cso;
  int round = 0;  // rounds completed
  std::vector<int> current_chs;
};

// Per-round hook; references are valid only during the callback.
struct RoundObservation {
  const RoundMetrics& metrics;
  const SelectionResult& selection;
  const SimulationState& state;
  const CommunicationGraph& graph;
  const ObjectiveTable& table;
};
using RoundObserver = std::function<void(const RoundObservation&)>;

// Every alive non-CH node joins its nearest CH (ties go to the lower CH id).
// Returns node id -> CH id, -1 for CHs, dead nodes, and when unassigned.
std::vector<int> form_clusters(std::span<const int> ch_ids, const Network& net);

// Each alive member independently sleeps this round with the given
// probability; CHs never sleep.
void apply_sleep_policy(Network& net, double sleep_probability,
                        RngStream& stream);

// Scales both amplifier coefficients by 10^((dbm - ref)/10) with
// ref = 10*log10(reference_mw); the regime threshold is unchanged.
RadioEnergyModel scale_radio_for_tx_power(const RadioEnergyModel& radio,
                                          double tx_power_dbm,
                                          double reference_mw);

SimulationState make_simulation(const Config& cfg,
                                std::optional<SelectorKind> selector_override = {});

// One protocol round: elect CHs, form clusters, apply the sleep policy,
// member-to-CH transfers, CH aggregation and forward to the BS, deaths.
RoundMetrics run_round(SimulationState& state);

// Full lifetime run (stops early once every node is dead).
RunSummary run(const Config& cfg,
               std::optional<SelectorKind> selector_override = {},
               const RoundObserver& observer = {});

}  // namespace chsim
