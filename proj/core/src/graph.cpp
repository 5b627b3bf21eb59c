#include "chsim/graph.hpp"

#include <stdexcept>

#include "chsim/rng.hpp"

namespace chsim {

namespace {

std::uint64_t edge_key(int a, int b) {
  const auto lo = static_cast<std::uint64_t>(a < b ? a : b);
  const auto hi = static_cast<std::uint64_t>(a < b ? b : a);
  return (lo << 32) | hi;
}

}  // namespace

double CommunicationGraph::retransmission_load(int vertex) const {
  double total = 0.0;
  for (double c : edge_costs[static_cast<std::size_t>(vertex)]) total += c;
  return total;
}

CommunicationGraph build_graph(const Network& network, double forwarding_radius) {
  if (forwarding_radius < 0.0)
    throw std::invalid_argument("build_graph: forwarding_radius must be >= 0");

  CommunicationGraph g;
  g.radius = forwarding_radius;
  g.node_ids = network.alive_ids();
  g.vertex_of.assign(network.nodes.size(), -1);
  for (int v = 0; v < g.vertex_count(); ++v)
    g.vertex_of[static_cast<std::size_t>(g.node_ids[static_cast<std::size_t>(v)])] = v;

  const int n = g.vertex_count();
  g.adjacency.assign(static_cast<std::size_t>(n), {});
  g.edge_costs.assign(static_cast<std::size_t>(n), {});
  if (forwarding_radius == 0.0) return g;  // no edges, distance 0 pairs included

  const std::uint64_t seed = network.config.rng_seed;
  for (int u = 0; u < n; ++u) {
    const auto& nu = network.nodes[static_cast<std::size_t>(g.node_ids[static_cast<std::size_t>(u)])];
    for (int v = u + 1; v < n; ++v) {
      const auto& nv = network.nodes[static_cast<std::size_t>(g.node_ids[static_cast<std::size_t>(v)])];
      const double d = distance(nu.pos, nv.pos);
      if (d > forwarding_radius) continue;
      const double ratio = d / forwarding_radius;
      const double noise =
          0.5 * hashed_uniform01(seed, stream::kEdgeNoise, edge_key(nu.id, nv.id));
      const double cost = 1.0 + ratio * ratio + noise;
      g.adjacency[static_cast<std::size_t>(u)].push_back(v);
      g.edge_costs[static_cast<std::size_t>(u)].push_back(cost);
      g.adjacency[static_cast<std::size_t>(v)].push_back(u);
      g.edge_costs[static_cast<std::size_t>(v)].push_back(cost);
    }
  }
  return g;
}

}  // namespace chsim
