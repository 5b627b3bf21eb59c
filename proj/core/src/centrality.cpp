#include "chsim/centrality.hpp"

#include <queue>

namespace chsim {

// Brandes' accumulation over BFS shortest-path DAGs. Undirected graphs count
// each pair twice across source iterations, which the final normalization
// folds in: raw / 2 / ((n-1)(n-2)/2) = raw / ((n-1)(n-2)).
std::vector<double> betweenness_centrality(const CommunicationGraph& graph) {
  const int n = graph.vertex_count();
  std::vector<double> bc(static_cast<std::size_t>(n), 0.0);
  if (n < 3) return bc;

  std::vector<double> sigma(static_cast<std::size_t>(n));
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<double> delta(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> preds(static_cast<std::size_t>(n));
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));

  for (int s = 0; s < n; ++s) {
    sigma.assign(static_cast<std::size_t>(n), 0.0);
    dist.assign(static_cast<std::size_t>(n), -1);
    delta.assign(static_cast<std::size_t>(n), 0.0);
    for (auto& p : preds) p.clear();
    order.clear();

    sigma[static_cast<std::size_t>(s)] = 1.0;
    dist[static_cast<std::size_t>(s)] = 0;
    std::queue<int> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      order.push_back(u);
      for (int w : graph.adjacency[static_cast<std::size_t>(u)]) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          frontier.push(w);
        }
        if (dist[static_cast<std::size_t>(w)] ==
            dist[static_cast<std::size_t>(u)] + 1) {
          sigma[static_cast<std::size_t>(w)] += sigma[static_cast<std::size_t>(u)];
          preds[static_cast<std::size_t>(w)].push_back(u);
        }
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int w = *it;
      for (int v : preds[static_cast<std::size_t>(w)]) {
        delta[static_cast<std::size_t>(v)] +=
            sigma[static_cast<std::size_t>(v)] / sigma[static_cast<std::size_t>(w)] *
            (1.0 + delta[static_cast<std::size_t>(w)]);
      }
      if (w != s) bc[static_cast<std::size_t>(w)] += delta[static_cast<std::size_t>(w)];
    }
  }

  const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2);
  for (auto& value : bc) value /= norm;
  return bc;
}

}  // namespace chsim
