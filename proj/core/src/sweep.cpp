#include "chsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace chsim {

namespace {

using Clock = std::chrono::steady_clock;

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

int integral_value(double value, const char* what) {
  const double rounded = std::nearbyint(value);
  if (std::abs(value - rounded) > 1e-9)
    throw std::invalid_argument(std::string("sweep: ") + what +
                                " values must be integers, got " +
                                std::to_string(value));
  return static_cast<int>(rounded);
}

}  // namespace

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::Packets: return "packets";
    case SweepKind::NodeCount: return "node-count";
    case SweepKind::TxPower: return "tx-power";
    case SweepKind::ClusterCount: return "cluster-count";
    case SweepKind::DelayVsNodes: return "delay-vs-nodes";
  }
  return "packets";
}

SweepKind sweep_kind_from_string(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) {
    return c == '_' ? '-' : static_cast<char>(std::tolower(c));
  });
  if (n == "packets") return SweepKind::Packets;
  if (n == "node-count") return SweepKind::NodeCount;
  if (n == "tx-power") return SweepKind::TxPower;
  if (n == "cluster-count") return SweepKind::ClusterCount;
  if (n == "delay-vs-nodes") return SweepKind::DelayVsNodes;
  throw std::invalid_argument(
      "unknown sweep kind '" + name +
      "' (packets|node-count|tx-power|cluster-count|delay-vs-nodes)");
}

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep: no values given");
  if (values.size() > 1) {
    const bool increasing = values[1] > values[0];
    for (std::size_t i = 1; i < values.size(); ++i) {
      const bool step_up = values[i] > values[i - 1];
      if (values[i] == values[i - 1] || step_up != increasing)
        throw std::invalid_argument("sweep: values must be strictly monotone");
    }
  }
  if (selectors.empty()) throw std::invalid_argument("sweep: no selectors given");
  if (seeds.empty()) throw std::invalid_argument("sweep: no seeds given");
  base.validate();
  for (double v : values) apply_sweep_override(base, kind, v);  // domain check
}

Config apply_sweep_override(const Config& base, SweepKind kind, double value) {
  Config cfg = base;
  switch (kind) {
    case SweepKind::Packets:
      cfg.simulation.packets_per_round = integral_value(value, "packets");
      break;
    case SweepKind::NodeCount:
    case SweepKind::DelayVsNodes:
      cfg.network.node_count = integral_value(value, "node-count");
      cfg.network.cluster_count =
          std::min(cfg.network.cluster_count, cfg.network.node_count);
      break;
    case SweepKind::TxPower:
      cfg.simulation.tx_power_dbm = value;
      break;
    case SweepKind::ClusterCount:
      cfg.network.cluster_count = integral_value(value, "cluster-count");
      break;
  }
  cfg.validate();
  return cfg;
}

SweepResult run_sweep(const SweepSpec& spec, int jobs) {
  spec.validate();
  if (jobs < 1) throw std::invalid_argument("sweep: jobs must be >= 1");

  struct CellJob {
    double value;
    SelectorKind selector;
    std::uint64_t seed;
  };
  std::vector<CellJob> plan;
  for (double value : spec.values)
    for (SelectorKind selector : spec.selectors)
      for (std::uint64_t seed : spec.seeds) plan.push_back({value, selector, seed});

  SweepResult result;
  result.kind = spec.kind;
  result.cells.resize(plan.size());

  std::atomic<std::size_t> cursor{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= plan.size()) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        const auto& job = plan[i];
        Config cfg = apply_sweep_override(spec.base, spec.kind, job.value);
        cfg.network.rng_seed = job.seed;
        const RunSummary summary = run(cfg, job.selector);
        SweepCell& cell = result.cells[i];
        cell.value = job.value;
        cell.selector = job.selector;
        cell.seed = job.seed;
        cell.energy_per_round =
            summary.rounds_executed > 0
                ? summary.total_energy / static_cast<double>(summary.rounds_executed)
                : 0.0;
        cell.lifetime_fnd = static_cast<double>(summary.first_node_death_round);
        cell.throughput_mbps = summary.mean_throughput_mbps;
        cell.delay_ms = summary.mean_delay_ms;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int pool = std::min<std::size_t>(static_cast<std::size_t>(jobs), plan.size());
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(pool));
    for (int t = 0; t < pool; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Aggregate per (value, selector); cells are already grouped by plan order.
  for (double value : spec.values) {
    for (SelectorKind selector : spec.selectors) {
      std::vector<double> energy, lifetime, throughput, delay;
      for (const auto& cell : result.cells) {
        if (cell.value != value || cell.selector != selector) continue;
        energy.push_back(cell.energy_per_round);
        lifetime.push_back(cell.lifetime_fnd);
        throughput.push_back(cell.throughput_mbps);
        delay.push_back(cell.delay_ms);
      }
      SweepAggregate agg;
      agg.value = value;
      agg.selector = selector;
      agg.seed_count = static_cast<int>(energy.size());
      agg.energy_mean = mean_of(energy);
      agg.energy_sd = sample_sd(energy, agg.energy_mean);
      agg.lifetime_mean = mean_of(lifetime);
      agg.lifetime_sd = sample_sd(lifetime, agg.lifetime_mean);
      agg.throughput_mean = mean_of(throughput);
      agg.throughput_sd = sample_sd(throughput, agg.throughput_mean);
      agg.delay_mean = mean_of(delay);
      agg.delay_sd = sample_sd(delay, agg.delay_mean);
      result.aggregates.push_back(agg);
    }
  }
  return result;
}

SelectorComparison compare_selectors(const Config& cfg,
                                     const std::vector<SelectorKind>& selectors,
                                     std::span<const std::uint64_t> seeds) {
  if (selectors.empty())
    throw std::invalid_argument("compare: no selectors given");
  if (seeds.empty()) throw std::invalid_argument("compare: no seeds given");
  cfg.validate();

  const std::size_t count = selectors.size();
  SelectorComparison comparison;
  comparison.stats.resize(count);
  comparison.win_rate.assign(count, std::vector<double>(count, 0.0));
  for (std::size_t s = 0; s < count; ++s)
    comparison.stats[s].selector = selectors[s];

  struct Snapshot {
    ObjectiveTable table;
    int k;
    std::uint64_t seed;  // per-snapshot selection seed, shared by all selectors
  };
  std::vector<Snapshot> snapshots;

  std::vector<double> fnd_sum(count, 0.0), energy_sum(count, 0.0);
  for (std::size_t s = 0; s < count; ++s) {
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      Config run_cfg = cfg;
      run_cfg.network.rng_seed = seeds[i];
      RoundObserver observer;
      if (s == 0) {
        // The first selector's trajectory supplies the shared snapshots.
        observer = [&snapshots, &run_cfg](const RoundObservation& obs) {
          Snapshot snap;
          snap.table = obs.table;
          snap.k = std::min(run_cfg.network.cluster_count,
                            static_cast<int>(obs.table.node_ids.size()));
          snap.seed = derive_seed(run_cfg.network.rng_seed,
                                  stream::kSnapshotSelect,
                                  static_cast<std::uint64_t>(obs.metrics.round_index));
          snapshots.push_back(std::move(snap));
        };
      }
      const RunSummary summary = run(run_cfg, selectors[s], observer);
      fnd_sum[s] += static_cast<double>(summary.first_node_death_round);
      energy_sum[s] +=
          summary.rounds_executed > 0
              ? summary.total_energy / static_cast<double>(summary.rounds_executed)
              : 0.0;
    }
    comparison.stats[s].mean_fnd = fnd_sum[s] / static_cast<double>(seeds.size());
    comparison.stats[s].mean_round_energy =
        energy_sum[s] / static_cast<double>(seeds.size());
  }

  comparison.snapshot_count = static_cast<int>(snapshots.size());
  if (snapshots.empty()) return comparison;

  // Every selector re-elects on each frozen table with the same seed.
  std::vector<std::vector<double>> fitness(count,
                                           std::vector<double>(snapshots.size()));
  for (std::size_t s = 0; s < count; ++s) {
    double fit_sum = 0.0;
    double ms_sum = 0.0;
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
      const auto& snap = snapshots[i];
      SelectionInput input{snap.table, snap.k, snap.seed, cfg.cso, cfg.pso};
      const auto t0 = Clock::now();
      const SelectionResult result = select_cluster_heads(selectors[s], input);
      ms_sum += std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      fitness[s][i] = result.set_fitness;
      fit_sum += result.set_fitness;
    }
    comparison.stats[s].mean_set_fitness =
        fit_sum / static_cast<double>(snapshots.size());
    comparison.stats[s].mean_selection_ms =
        ms_sum / static_cast<double>(snapshots.size());
  }

  // win_rate[a][b]: fraction of snapshots where a's elected set scores at
  // least b's. A selector against itself is 0.5 by the tie convention.
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      if (selectors[a] == selectors[b]) {
        comparison.win_rate[a][b] = 0.5;
        continue;
      }
      double credit = 0.0;
      for (std::size_t i = 0; i < snapshots.size(); ++i) {
        if (fitness[a][i] >= fitness[b][i]) credit += 1.0;
      }
      comparison.win_rate[a][b] = credit / static_cast<double>(snapshots.size());
    }
  }
  return comparison;
}

}  // namespace chsim
