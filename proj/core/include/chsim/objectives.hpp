#pragma once

#include <span>
#include <vector>

#include "chsim/fitness.hpp"
#include "chsim/graph.hpp"
#include "chsim/network.hpp"

namespace chsim {

// Raw per-node objective values, before any combination.
struct ObjectiveVector {
  double cluster_energy = 0.0;  // E_C, joules
  double comm_cost = 0.0;       // Com_c, dimensionless
  double queuing_delay = 0.0;   // D_Que, seconds-per-packet flavored ratio
  double link_quality = 0.0;    // LQ, min-max normalized retransmission load
  double centrality = 0.0;      // N_c, normalized betweenness
};

// Per-packet CH-side gathering cost for one member at its distance.
double energy_ch_gather(const SensorNode& ch, const SensorNode& member,
                        double bits, const RadioEnergyModel& radio);

// CH duty cycle toward the BS: receive-from-members electronics, aggregation
// over the expected per-cluster signal count (node_count / cluster_count),
// and the forward hop to the BS.
double energy_ch_to_bs(const SensorNode& ch, const BaseStation& bs, double bits,
                       double node_count, double cluster_count,
                       const RadioEnergyModel& radio);

// E_C: energy_ch_to_bs plus (signals-per-cluster - 1) gather terms, the
// gather cost averaged over the given members (zero when none).
double cluster_energy(const SensorNode& ch,
                      std::span<const int> member_ids, const Network& net,
                      double bits, double node_count, double cluster_count,
                      const RadioEnergyModel& radio);

// Com_c = (mean distance to graph neighbors)^2 / radius^2. Isolated nodes get
// the worst-case sentinel (area diagonal / radius)^2.
double communication_cost(int node_id, const CommunicationGraph& graph,
                          const Network& net);

// D_Que = (A_R + F_C) / P_i.
double queuing_delay(const SensorNode& node);

// Everything the pool-wide evaluation needs.
struct ObjectiveContext {
  const Network& network;
  const CommunicationGraph& graph;
  FitnessWeights weights{};
  FitnessMode mode = FitnessMode::Residual;
  int cluster_count = 1;
  double packet_bits = 1500.0;
};

struct ObjectiveTable {
  std::vector<int> node_ids;  // candidate pool (alive), ascending
  std::vector<ObjectiveVector> objectives;
  std::vector<double> residual_energy;
  std::vector<double> fitness;

  int index_of(int node_id) const;
  double fitness_of(int node_id) const;
  // Sum of per-node fitness over a CH set (summed in ascending id order).
  double set_fitness(std::span<const int> ch_ids) const;
};

// Raw objectives for every alive node (the graph's vertices).
ObjectiveTable evaluate_candidates(const ObjectiveContext& ctx);

// Scoring stage, separated so tests can rescale raw objectives directly.
std::vector<double> score_candidates(std::span<const ObjectiveVector> raw,
                                     std::span<const double> residual_energy,
                                     const FitnessWeights& weights,
                                     FitnessMode mode);

}  // namespace chsim
