#include "chsim/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chsim/graph.hpp"

namespace chsim {

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

// Debits up to the node's remaining energy; returns the amount actually paid.
double charge(SensorNode& node, double amount, double& consumed) {
  const double paid = std::min(amount, node.residual_energy);
  node.residual_energy -= paid;
  consumed += paid;
  return paid;
}

bool can_act(const SensorNode& node) { return node.residual_energy > 0.0; }

}  // namespace

void SimulationConfig::validate() const {
  if (!(sleep_probability >= 0.0 && sleep_probability <= 1.0))
    throw std::invalid_argument("simulation.sleep_probability must be in [0, 1]");
  if (packets_per_round < 1)
    throw std::invalid_argument("simulation.packets_per_round must be >= 1");
  if (election_period < 1)
    throw std::invalid_argument("simulation.election_period must be >= 1");
  if (tx_power_dbm && !(*tx_power_dbm >= -40.0 && *tx_power_dbm <= 10.0))
    throw std::invalid_argument("simulation.tx_power_dbm must lie in [-40, 10]");
}

std::vector<int> form_clusters(std::span<const int> ch_ids, const Network& net) {
  if (ch_ids.empty())
    throw std::invalid_argument("form_clusters: cluster head set is empty");
  std::vector<int> assignment(net.nodes.size(), -1);
  std::vector<char> is_ch(net.nodes.size(), 0);
  for (int ch : ch_ids) {
    if (!net.nodes[static_cast<std::size_t>(ch)].alive())
      throw std::invalid_argument("form_clusters: cluster head " +
                                  std::to_string(ch) + " is dead");
    is_ch[static_cast<std::size_t>(ch)] = 1;
  }
  for (const auto& node : net.nodes) {
    if (!node.alive() || is_ch[static_cast<std::size_t>(node.id)]) continue;
    double best_d = std::numeric_limits<double>::infinity();
    int best_ch = -1;
    for (int ch : ch_ids) {  // ascending ids, so ties keep the lower id
      const double d = distance(node.pos, net.nodes[static_cast<std::size_t>(ch)].pos);
      if (d < best_d) {
        best_d = d;
        best_ch = ch;
      }
    }
    assignment[static_cast<std::size_t>(node.id)] = best_ch;
  }
  return assignment;
}

void apply_sleep_policy(Network& net, double sleep_probability,
                        RngStream& stream) {
  if (sleep_probability <= 0.0) return;
  for (auto& node : net.nodes) {
    if (!node.alive() || node.role == NodeRole::ClusterHead) continue;
    if (stream.uniform01() < sleep_probability) node.state = NodeState::Sleep;
  }
}

RadioEnergyModel scale_radio_for_tx_power(const RadioEnergyModel& radio,
                                          double tx_power_dbm,
                                          double reference_mw) {
  if (!(reference_mw > 0.0))
    throw std::invalid_argument("scale_radio_for_tx_power: reference must be > 0 mW");
  if (!(tx_power_dbm >= -40.0 && tx_power_dbm <= 10.0))
    throw std::invalid_argument("scale_radio_for_tx_power: dBm out of [-40, 10]");
  const double reference_dbm = 10.0 * std::log10(reference_mw);
  const double scale = std::pow(10.0, (tx_power_dbm - reference_dbm) / 10.0);
  RadioEnergyModel scaled = radio;
  scaled.fs_amp *= scale;
  scaled.mp_amp *= scale;
  // Same factor on both coefficients, so the derived threshold is unchanged.
  return scaled;
}

SimulationState make_simulation(const Config& cfg,
                                std::optional<SelectorKind> selector_override) {
  cfg.validate();
  Config effective = cfg;
  if (effective.simulation.tx_power_dbm) {
    effective.network.radio = scale_radio_for_tx_power(
        effective.network.radio, *effective.simulation.tx_power_dbm,
        effective.network.transmit_power_mw);
  }
  SimulationState state;
  state.config = effective;
  state.selector = selector_override.value_or(effective.simulation.selector);
  state.network = deploy(effective.network);
  return state;
}

namespace {

struct RoundOutput {
  RoundMetrics metrics;
  SelectionResult selection;
  int max_cluster_members = 0;       // fullest cluster at formation time
  long long delivered_packets = 0;   // member packets that reached the BS
  double delay_sum_ms = 0.0;         // summed over delivered member packets
};

RoundOutput run_round_impl(SimulationState& state, const CommunicationGraph& graph,
                           const ObjectiveTable& table) {
  (void)graph;
  const auto& cfg = state.config;
  Network& net = state.network;
  const int round = state.round + 1;

  RoundOutput out;
  auto& metrics = out.metrics;
  metrics.round_index = round;

  // Sleep lasts one round: everyone put to sleep last round wakes before the
  // election, so sleepers stay electable.
  for (auto& node : net.nodes)
    if (node.state == NodeState::Sleep) node.state = NodeState::Active;

  // Election, or reuse of surviving heads between scheduled elections.
  const auto t0 = Clock::now();
  std::vector<int> chs;
  const bool election_due = (round - 1) % cfg.simulation.election_period == 0;
  if (!election_due) {
    for (int ch : state.current_chs)
      if (net.nodes[static_cast<std::size_t>(ch)].alive()) chs.push_back(ch);
  }
  if (chs.empty()) {
    SelectionInput input{table,
                         std::min(cfg.network.cluster_count,
                                  static_cast<int>(table.node_ids.size())),
                         derive_seed(cfg.network.rng_seed, stream::kSelection,
                                     static_cast<std::uint64_t>(round)),
                         cfg.cso, cfg.pso};
    out.selection = select_cluster_heads(state.selector, input);
    chs = out.selection.ch_ids;
  } else {
    out.selection.ch_ids = chs;
    out.selection.set_fitness = table.set_fitness(chs);
  }
  const auto assignment = form_clusters(chs, net);
  metrics.cluster_formation_ms = ms_between(t0, Clock::now());
  metrics.ch_ids = chs;
  metrics.set_fitness = out.selection.set_fitness;

  std::vector<int> member_count(net.nodes.size(), 0);
  for (auto& node : net.nodes) {
    if (!node.alive()) continue;
    const int ch_id = assignment[static_cast<std::size_t>(node.id)];
    if (ch_id >= 0) {
      node.role = NodeRole::Member;
      ++member_count[static_cast<std::size_t>(ch_id)];
    } else {
      node.role = NodeRole::Unassigned;
    }
  }
  for (int ch : chs) net.nodes[static_cast<std::size_t>(ch)].role = NodeRole::ClusterHead;
  out.max_cluster_members =
      *std::max_element(member_count.begin(), member_count.end());

  auto sleep_stream = RngStream::derived(cfg.network.rng_seed, stream::kSleep,
                                         static_cast<std::uint64_t>(round));
  apply_sleep_policy(net, cfg.simulation.sleep_probability, sleep_stream);

  // Data transfer. Members pay TX toward their head; a head that is still
  // powered receives, aggregates, and forwards to the base station.
  const auto& radio = cfg.network.radio;
  const double packet_bits = static_cast<double>(cfg.network.packet_size_bits);
  const double member_bits =
      packet_bits * static_cast<double>(cfg.simulation.packets_per_round);
  double consumed = 0.0;

  struct Incoming {
    double member_distance;
    int packets;
  };
  std::vector<double> received_bits(net.nodes.size(), 0.0);
  std::vector<std::vector<Incoming>> inbox(net.nodes.size());

  for (auto& node : net.nodes) {
    if (node.role != NodeRole::Member || node.state != NodeState::Active) continue;
    if (!can_act(node)) continue;
    const int ch_id = assignment[static_cast<std::size_t>(node.id)];
    auto& ch = net.nodes[static_cast<std::size_t>(ch_id)];
    const double d = distance(node.pos, ch.pos);
    charge(node, tx_energy(member_bits, d, radio), consumed);
    if (can_act(ch)) {  // head still powered, the packets arrive
      charge(ch, rx_energy(member_bits, radio), consumed);
      received_bits[static_cast<std::size_t>(ch_id)] += member_bits;
      inbox[static_cast<std::size_t>(ch_id)].push_back(
          Incoming{d, cfg.simulation.packets_per_round});
    }
  }

  for (int ch_id : chs) {
    auto& ch = net.nodes[static_cast<std::size_t>(ch_id)];
    const double bits_in = received_bits[static_cast<std::size_t>(ch_id)];
    if (bits_in > 0.0 && can_act(ch))
      charge(ch, radio.aggregation_energy * bits_in, consumed);
  }

  long long bits_delivered = 0;
  for (int ch_id : chs) {
    auto& ch = net.nodes[static_cast<std::size_t>(ch_id)];
    if (!can_act(ch)) continue;  // drained before its slot, nothing delivered
    const double d_bs = distance(ch.pos, net.base_station.pos);
    const double out_bits =
        cfg.simulation.ch_forward_mode == ChForwardMode::Aggregate
            ? packet_bits
            : received_bits[static_cast<std::size_t>(ch_id)] + packet_bits;
    charge(ch, tx_energy(out_bits, d_bs, radio), consumed);
    bits_delivered += static_cast<long long>(std::llround(out_bits));
    for (const auto& in : inbox[static_cast<std::size_t>(ch_id)]) {
      out.delay_sum_ms += static_cast<double>(in.packets) *
                          (in.member_distance + d_bs) /
                          cfg.network.signal_speed * 1e3;
      out.delivered_packets += in.packets;
    }
  }

  // A node whose energy reached zero is dead from the next round on.
  int alive = 0;
  for (auto& node : net.nodes) {
    if (!node.alive()) continue;
    if (node.residual_energy <= 0.0) {
      node.state = NodeState::Dead;
      node.role = NodeRole::Unassigned;
    } else {
      ++alive;
    }
  }

  metrics.energy_consumed = consumed;
  metrics.alive_count = alive;
  metrics.bits_delivered_to_bs = bits_delivered;
  metrics.mean_propagation_delay_ms =
      out.delivered_packets > 0
          ? out.delay_sum_ms / static_cast<double>(out.delivered_packets)
          : 0.0;

  state.current_chs = chs;
  state.round = round;
  return out;
}

RoundOutput step(SimulationState& state, CommunicationGraph& graph_out,
                 ObjectiveTable& table_out) {
  graph_out = build_graph(state.network,
                          state.config.network.effective_forwarding_radius());
  const ObjectiveContext ctx{
      state.network,
      graph_out,
      state.config.fitness.weights,
      state.config.fitness.mode,
      std::min(state.config.network.cluster_count, graph_out.vertex_count()),
      static_cast<double>(state.config.network.packet_size_bits)};
  table_out = evaluate_candidates(ctx);
  return run_round_impl(state, graph_out, table_out);
}

}  // namespace

RoundMetrics run_round(SimulationState& state) {
  if (state.network.alive_count() == 0)
    throw std::invalid_argument("run_round: no alive nodes");
  CommunicationGraph graph;
  ObjectiveTable table;
  return step(state, graph, table).metrics;
}

RunSummary run(const Config& cfg, std::optional<SelectorKind> selector_override,
               const RoundObserver& observer) {
  SimulationState state = make_simulation(cfg, selector_override);
  const int total_nodes = cfg.network.node_count;
  const int max_rounds = cfg.network.max_rounds;
  const int half_dead_threshold = (total_nodes + 1) / 2;
  const double packet_bits = static_cast<double>(cfg.network.packet_size_bits);

  RunSummary summary;
  summary.first_node_death_round = max_rounds;
  summary.half_nodes_death_round = max_rounds;
  summary.last_node_death_round = max_rounds;

  double delay_sum_ms = 0.0;
  long long delay_packets = 0;
  double frame_seconds = 0.0;
  double formation_sum_ms = 0.0;
  bool seen_first = false, seen_half = false, seen_last = false;

  for (int round = 1; round <= max_rounds; ++round) {
    if (state.network.alive_count() == 0) break;

    CommunicationGraph graph;
    ObjectiveTable table;
    auto out = step(state, graph, table);
    const auto& metrics = out.metrics;

    const int dead = total_nodes - metrics.alive_count;
    if (!seen_first && dead >= 1) {
      summary.first_node_death_round = round;
      seen_first = true;
    }
    if (!seen_half && dead >= half_dead_threshold) {
      summary.half_nodes_death_round = round;
      seen_half = true;
    }
    if (!seen_last && dead >= total_nodes) {
      summary.last_node_death_round = round;
      seen_last = true;
    }

    summary.total_energy += metrics.energy_consumed;
    summary.total_bits += metrics.bits_delivered_to_bs;
    formation_sum_ms += metrics.cluster_formation_ms;
    delay_sum_ms += out.delay_sum_ms;
    delay_packets += out.delivered_packets;

    // TDMA frame sized by the fullest cluster: one slot per member packet
    // plus the head's own uplink slot.
    const double slots =
        static_cast<double>(out.max_cluster_members) *
            static_cast<double>(cfg.simulation.packets_per_round) +
        1.0;
    frame_seconds += slots * packet_bits / cfg.network.max_network_throughput_bps;

    summary.rounds.push_back(metrics);
    summary.rounds_executed = round;

    if (observer) {
      RoundObservation obs{metrics, out.selection, state, graph, table};
      observer(obs);
    }
  }

  summary.mean_throughput_mbps =
      frame_seconds > 0.0
          ? static_cast<double>(summary.total_bits) / frame_seconds / 1e6
          : 0.0;
  summary.mean_delay_ms =
      delay_packets > 0 ? delay_sum_ms / static_cast<double>(delay_packets) : 0.0;
  summary.mean_formation_ms =
      summary.rounds_executed > 0
          ? formation_sum_ms / static_cast<double>(summary.rounds_executed)
          : 0.0;
  return summary;
}

}  // namespace chsim
