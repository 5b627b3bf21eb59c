// Microbenchmarks for the hot paths: graph construction, the per-round
// objective table, one swarm election, and a full protocol round.

#include <benchmark/benchmark.h>

#include "chsim/config.hpp"
#include "chsim/graph.hpp"
#include "chsim/network.hpp"
#include "chsim/objectives.hpp"
#include "chsim/selectors.hpp"
#include "chsim/simulation.hpp"

namespace {

using namespace chsim;

NetworkConfig sized_network(int node_count) {
  NetworkConfig cfg = Config::desk_scale().network;
  cfg.node_count = node_count;
  return cfg;
}

void BM_BuildGraph(benchmark::State& state) {
  const NetworkConfig cfg = sized_network(static_cast<int>(state.range(0)));
  const Network net = deploy(cfg);
  const double radius = cfg.effective_forwarding_radius();
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_graph(net, radius));
  }
}
BENCHMARK(BM_BuildGraph)->Arg(100)->Arg(400);

void BM_ObjectiveTable(benchmark::State& state) {
  const NetworkConfig cfg = sized_network(static_cast<int>(state.range(0)));
  const Network net = deploy(cfg);
  const CommunicationGraph graph =
      build_graph(net, cfg.effective_forwarding_radius());
  const ObjectiveContext ctx{net, graph, FitnessWeights{},
                             FitnessMode::Residual, cfg.cluster_count,
                             static_cast<double>(cfg.packet_size_bits)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_candidates(ctx));
  }
}
BENCHMARK(BM_ObjectiveTable)->Arg(100)->Arg(400);

void BM_SwarmElection(benchmark::State& state) {
  const Config cfg = Config::desk_scale();
  const Network net = deploy(cfg.network);
  const CommunicationGraph graph =
      build_graph(net, cfg.network.effective_forwarding_radius());
  const ObjectiveContext ctx{net, graph, cfg.fitness.weights,
                             cfg.fitness.mode, cfg.network.cluster_count,
                             static_cast<double>(cfg.network.packet_size_bits)};
  const ObjectiveTable table = evaluate_candidates(ctx);
  const SelectionInput input{table, cfg.network.cluster_count, 1, cfg.cso,
                             cfg.pso};
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_cluster_heads(SelectorKind::Cso, input));
  }
}
BENCHMARK(BM_SwarmElection);

void BM_SimulationRound(benchmark::State& state) {
  const Config cfg = Config::desk_scale();
  SimulationState sim = make_simulation(cfg);
  int rounds = 0;
  for (auto _ : state) {
    // Fresh network periodically so the benchmark never drains it dry.
    if (rounds == 50) {
      state.PauseTiming();
      sim = make_simulation(cfg);
      rounds = 0;
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(run_round(sim));
    ++rounds;
  }
}
BENCHMARK(BM_SimulationRound);

}  // namespace

BENCHMARK_MAIN();
