#pragma once

#include <vector>

#include "chsim/network.hpp"

namespace chsim {

// Undirected communication graph over the non-dead nodes: an edge joins two
// nodes within the forwarding radius. Each edge carries an expected
// retransmission cost 1 + (d/radius)^2 + noise, noise uniform in [0, 0.5]
// derived from (deployment seed, edge ids) so it is stable across rebuilds.
struct CommunicationGraph {
  std::vector<int> node_ids;       // vertex -> node id, ascending
  std::vector<int> vertex_of;      // node id -> vertex index or -1
  std::vector<std::vector<int>> adjacency;        // vertex -> neighbor vertices
  std::vector<std::vector<double>> edge_costs;    // parallel to adjacency
  double radius = 0.0;

  int vertex_count() const { return static_cast<int>(node_ids.size()); }
  int degree(int vertex) const { return static_cast<int>(adjacency[vertex].size()); }
  // Sum of retransmission costs on the vertex's incident edges.
  double retransmission_load(int vertex) const;
};

CommunicationGraph build_graph(const Network& network, double forwarding_radius);

}  // namespace chsim
