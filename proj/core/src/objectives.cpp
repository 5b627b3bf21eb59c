#include "chsim/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chsim/centrality.hpp"

namespace chsim {

namespace {

constexpr double kReciprocalGuard = 1e-12;
constexpr double kDegenerateSpan = 1e-12;

void require_alive(const SensorNode& node, const char* what) {
  if (!node.alive())
    throw std::domain_error(std::string(what) + ": node " +
                            std::to_string(node.id) + " is dead");
}

// Per-bit forward cost over distance d; the literal flag switches the
// amplifier to the linear-distance form printed for the cluster objective.
double forward_energy(double bits, double d, const RadioEnergyModel& radio) {
  if (radio.literal_linear_amp)
    return bits * (radio.electronics_energy + radio.fs_amp * d);
  return tx_energy(bits, d, radio);
}

// Min-max normalize in place; a degenerate pool (max == min) is
// uninformative and maps everything to 0.5.
void minmax_normalize(std::vector<double>& values) {
  if (values.empty()) return;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  const double span = hi - lo;
  if (!(span > kDegenerateSpan * std::max(1.0, std::abs(hi)))) {
    std::fill(values.begin(), values.end(), 0.5);
    return;
  }
  for (auto& v : values) v = std::clamp((v - lo) / span, 0.0, 1.0);
}

}  // namespace

double energy_ch_gather(const SensorNode& ch, const SensorNode& member,
                        double bits, const RadioEnergyModel& radio) {
  require_alive(ch, "energy_ch_gather");
  require_alive(member, "energy_ch_gather");
  if (bits < 0.0) throw std::domain_error("energy_ch_gather: bits must be >= 0");
  return forward_energy(bits, distance(ch.pos, member.pos), radio);
}

double energy_ch_to_bs(const SensorNode& ch, const BaseStation& bs, double bits,
                       double node_count, double cluster_count,
                       const RadioEnergyModel& radio) {
  require_alive(ch, "energy_ch_to_bs");
  if (bits < 0.0) throw std::domain_error("energy_ch_to_bs: bits must be >= 0");
  if (!(cluster_count >= 1.0))
    throw std::domain_error("energy_ch_to_bs: cluster count must be >= 1");
  if (!(node_count >= cluster_count))
    throw std::domain_error("energy_ch_to_bs: node count must be >= cluster count");
  // signals gathered per cluster head, counting its own
  const double signals = node_count / cluster_count;
  const double receive = bits * radio.electronics_energy * (signals - 1.0);
  const double aggregate = bits * radio.aggregation_energy * signals;
  return receive + aggregate + forward_energy(bits, distance(ch.pos, bs.pos), radio);
}

double cluster_energy(const SensorNode& ch, std::span<const int> member_ids,
                      const Network& net, double bits, double node_count,
                      double cluster_count, const RadioEnergyModel& radio) {
  const double to_bs =
      energy_ch_to_bs(ch, net.base_station, bits, node_count, cluster_count, radio);
  if (member_ids.empty()) return to_bs;
  double gather_sum = 0.0;
  for (int id : member_ids) {
    gather_sum +=
        energy_ch_gather(ch, net.nodes[static_cast<std::size_t>(id)], bits, radio);
  }
  const double mean_gather = gather_sum / static_cast<double>(member_ids.size());
  const double signals = node_count / cluster_count;
  return to_bs + (signals - 1.0) * mean_gather;
}

double communication_cost(int node_id, const CommunicationGraph& graph,
                          const Network& net) {
  const int v = graph.vertex_of[static_cast<std::size_t>(node_id)];
  if (v < 0)
    throw std::domain_error("communication_cost: node " + std::to_string(node_id) +
                            " is not in the graph");
  const double radius = graph.radius;
  const auto& neighbors = graph.adjacency[static_cast<std::size_t>(v)];
  if (neighbors.empty()) {
    // Unreachable node: charge the worst case so it cannot look attractive.
    const double worst = net.config.area.diagonal() / radius;
    return worst * worst;
  }
  const auto& me = net.nodes[static_cast<std::size_t>(node_id)];
  double sum = 0.0;
  for (int w : neighbors) {
    const int other_id = graph.node_ids[static_cast<std::size_t>(w)];
    sum += distance(me.pos, net.nodes[static_cast<std::size_t>(other_id)].pos);
  }
  const double mean = sum / static_cast<double>(neighbors.size());
  return (mean * mean) / (radius * radius);
}

double queuing_delay(const SensorNode& node) {
  if (node.queue_length < 1)
    throw std::domain_error("queuing_delay: queue_length must be >= 1");
  return (node.arrival_rate + node.forwarding_capacity) /
         static_cast<double>(node.queue_length);
}

int ObjectiveTable::index_of(int node_id) const {
  const auto it = std::lower_bound(node_ids.begin(), node_ids.end(), node_id);
  if (it == node_ids.end() || *it != node_id)
    throw std::out_of_range("ObjectiveTable: node " + std::to_string(node_id) +
                            " is not in the candidate pool");
  return static_cast<int>(it - node_ids.begin());
}

double ObjectiveTable::fitness_of(int node_id) const {
  return fitness[static_cast<std::size_t>(index_of(node_id))];
}

double ObjectiveTable::set_fitness(std::span<const int> ch_ids) const {
  std::vector<int> sorted(ch_ids.begin(), ch_ids.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (int id : sorted) total += fitness_of(id);
  return total;
}

ObjectiveTable evaluate_candidates(const ObjectiveContext& ctx) {
  ctx.weights.validate();
  if (ctx.cluster_count < 1)
    throw std::invalid_argument("evaluate_candidates: cluster_count must be >= 1");

  ObjectiveTable table;
  table.node_ids = ctx.graph.node_ids;
  const int n = static_cast<int>(table.node_ids.size());
  if (n == 0) return table;
  if (n < ctx.cluster_count)
    throw std::invalid_argument(
        "evaluate_candidates: fewer alive nodes than clusters");

  table.objectives.resize(static_cast<std::size_t>(n));
  table.residual_energy.resize(static_cast<std::size_t>(n));

  const auto centrality = betweenness_centrality(ctx.graph);

  // Link quality: min-max normalized retransmission load; isolated nodes are
  // assigned the pool maximum before normalizing.
  std::vector<double> lq(static_cast<std::size_t>(n), 0.0);
  double max_load = 0.0;
  bool any_edges = false;
  for (int v = 0; v < n; ++v) {
    if (ctx.graph.degree(v) == 0) continue;
    const double load = ctx.graph.retransmission_load(v);
    lq[static_cast<std::size_t>(v)] = load;
    max_load = std::max(max_load, load);
    any_edges = true;
  }
  if (any_edges) {
    for (int v = 0; v < n; ++v)
      if (ctx.graph.degree(v) == 0) lq[static_cast<std::size_t>(v)] = max_load;
  }
  minmax_normalize(lq);

  const double pool = static_cast<double>(n);
  for (int v = 0; v < n; ++v) {
    const int id = table.node_ids[static_cast<std::size_t>(v)];
    const auto& node = ctx.network.nodes[static_cast<std::size_t>(id)];
    auto& obj = table.objectives[static_cast<std::size_t>(v)];

    // Members are not known until clusters form; use the node's graph
    // neighborhood as the gather set.
    std::vector<int> neighbor_ids;
    neighbor_ids.reserve(ctx.graph.adjacency[static_cast<std::size_t>(v)].size());
    for (int w : ctx.graph.adjacency[static_cast<std::size_t>(v)])
      neighbor_ids.push_back(ctx.graph.node_ids[static_cast<std::size_t>(w)]);

    obj.cluster_energy = cluster_energy(
        node, neighbor_ids, ctx.network, ctx.packet_bits, pool,
        static_cast<double>(ctx.cluster_count), ctx.network.config.radio);
    obj.comm_cost = communication_cost(id, ctx.graph, ctx.network);
    obj.queuing_delay = queuing_delay(node);
    obj.link_quality = lq[static_cast<std::size_t>(v)];
    obj.centrality = centrality[static_cast<std::size_t>(v)];
    table.residual_energy[static_cast<std::size_t>(v)] = node.residual_energy;
  }

  table.fitness =
      score_candidates(table.objectives, table.residual_energy, ctx.weights, ctx.mode);
  return table;
}

std::vector<double> score_candidates(std::span<const ObjectiveVector> raw,
                                     std::span<const double> residual_energy,
                                     const FitnessWeights& weights,
                                     FitnessMode mode) {
  const std::size_t n = raw.size();
  std::vector<double> fitness(n, 0.0);
  if (n == 0) return fitness;

  if (mode == FitnessMode::Literal) {
    for (std::size_t i = 0; i < n; ++i) {
      fitness[i] = weights.energy * raw[i].cluster_energy +
                   weights.comm_cost / std::max(raw[i].comm_cost, kReciprocalGuard) +
                   weights.queuing_delay /
                       std::max(raw[i].queuing_delay, kReciprocalGuard) +
                   weights.link_quality * raw[i].link_quality +
                   weights.centrality * raw[i].centrality;
    }
    return fitness;
  }

  // Residual mode: orient every term larger-is-better, normalize over the
  // pool, then combine. LQ and N_c are already normalized and enter as-is.
  std::vector<double> e(residual_energy.begin(), residual_energy.end());
  std::vector<double> c(n), d(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = 1.0 / std::max(raw[i].comm_cost, kReciprocalGuard);
    d[i] = 1.0 / std::max(raw[i].queuing_delay, kReciprocalGuard);
  }
  minmax_normalize(e);
  minmax_normalize(c);
  minmax_normalize(d);
  for (std::size_t i = 0; i < n; ++i) {
    fitness[i] = weights.energy * e[i] + weights.comm_cost * c[i] +
                 weights.queuing_delay * d[i] +
                 weights.link_quality * raw[i].link_quality +
                 weights.centrality * raw[i].centrality;
  }
  return fitness;
}

}  // namespace chsim
