#pragma once

#include <vector>

#include "chsim/graph.hpp"

namespace chsim {

// Betweenness centrality of every vertex on the unweighted graph, normalized
// by (n-1)(n-2)/2 so a vertex lying on every shortest path scores 1. Pairs
// with no connecting path contribute nothing. Graphs with fewer than three
// vertices score all zeros.
std::vector<double> betweenness_centrality(const CommunicationGraph& graph);

}  // namespace chsim
