#include "chsim/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "chsim/rng.hpp"

namespace chsim {

namespace {

void check_range(const SamplingRange& r, const char* name, double min_lo) {
  if (!(r.lo <= r.hi))
    throw std::invalid_argument(std::string(name) + ": lo must be <= hi");
  if (!(r.lo >= min_lo))
    throw std::invalid_argument(std::string(name) + ": lo must be >= " +
                                std::to_string(min_lo));
}

}  // namespace

void NetworkConfig::validate() const {
  if (node_count < 1)
    throw std::invalid_argument("network.node_count must be >= 1");
  if (!(area.width > 0.0) || !(area.height > 0.0))
    throw std::invalid_argument("network.area must have positive width and height");
  if (packet_size_bits < 1)
    throw std::invalid_argument("network.packet_size_bits must be >= 1");
  if (!(initial_energy > 0.0))
    throw std::invalid_argument("network.initial_energy must be > 0");
  if (cluster_count < 1 || cluster_count > node_count)
    throw std::invalid_argument("network.cluster_count must be in [1, node_count]");
  radio.validate();
  if (!(effective_forwarding_radius() > 0.0))
    throw std::invalid_argument("network.forwarding_radius must be > 0");
  if (max_rounds < 1)
    throw std::invalid_argument("network.max_rounds must be >= 1");
  check_range(arrival_rate_range, "network.arrival_rate_range", 0.0);
  check_range(forwarding_capacity_range, "network.forwarding_capacity_range", 0.0);
  if (!(forwarding_capacity_range.lo > 0.0))
    throw std::invalid_argument("network.forwarding_capacity_range: lo must be > 0");
  check_range(queue_length_range, "network.queue_length_range", 1.0);
  if (!(signal_speed > 0.0))
    throw std::invalid_argument("network.signal_speed must be > 0");
  if (!(transmit_power_mw > 0.0))
    throw std::invalid_argument("network.transmit_power_mw must be > 0");
  if (!(max_network_throughput_bps > 0.0))
    throw std::invalid_argument("network.max_network_throughput_bps must be > 0");
}

int Network::alive_count() const {
  int n = 0;
  for (const auto& node : nodes)
    if (node.alive()) ++n;
  return n;
}

std::vector<int> Network::alive_ids() const {
  std::vector<int> ids;
  ids.reserve(nodes.size());
  for (const auto& node : nodes)
    if (node.alive()) ids.push_back(node.id);
  return ids;
}

Network deploy(const NetworkConfig& cfg) {
  cfg.validate();

  Network net;
  net.config = cfg;
  net.base_station.pos = cfg.bs_position;
  net.nodes.resize(static_cast<std::size_t>(cfg.node_count));

  // One stream per sampled field, so adding a field never shifts the others.
  auto pos_stream = RngStream::derived(cfg.rng_seed, stream::kDeployPosition);
  auto arrival_stream = RngStream::derived(cfg.rng_seed, stream::kDeployArrival);
  auto fwd_stream = RngStream::derived(cfg.rng_seed, stream::kDeployForwarding);
  auto queue_stream = RngStream::derived(cfg.rng_seed, stream::kDeployQueue);

  const auto q_lo = static_cast<int>(std::ceil(cfg.queue_length_range.lo));
  const auto q_hi = static_cast<int>(std::floor(cfg.queue_length_range.hi));
  if (q_lo > q_hi)
    throw std::invalid_argument("network.queue_length_range holds no integer");

  for (int i = 0; i < cfg.node_count; ++i) {
    auto& node = net.nodes[static_cast<std::size_t>(i)];
    node.id = i;
    node.pos.x = pos_stream.uniform(0.0, cfg.area.width);
    node.pos.y = pos_stream.uniform(0.0, cfg.area.height);
    node.residual_energy = cfg.initial_energy;
    node.state = NodeState::Active;
    node.role = NodeRole::Unassigned;
    node.arrival_rate =
        arrival_stream.uniform(cfg.arrival_rate_range.lo, cfg.arrival_rate_range.hi);
    node.forwarding_capacity = fwd_stream.uniform(
        cfg.forwarding_capacity_range.lo, cfg.forwarding_capacity_range.hi);
    node.queue_length =
        q_lo + static_cast<int>(queue_stream.uniform_int(
                   static_cast<std::uint64_t>(q_hi - q_lo + 1)));
  }
  return net;
}

}  // namespace chsim
