#pragma once

#include <string>
#include <vector>

#include "chsim/simulation.hpp"

namespace chsim {

enum class SweepKind { Packets, NodeCount, TxPower, ClusterCount, DelayVsNodes };

std::string to_string(SweepKind kind);
SweepKind sweep_kind_from_string(const std::string& name);

struct SweepSpec {
  SweepKind kind = SweepKind::Packets;
  std::vector<double> values;        // strictly monotone
  std::vector<SelectorKind> selectors;
  std::vector<std::uint64_t> seeds;
  Config base{};

  void validate() const;
};

// One (value, selector, seed) run with the headline metrics pulled out.
struct SweepCell {
  double value = 0.0;
  SelectorKind selector = SelectorKind::Cso;
  std::uint64_t seed = 1;
  double energy_per_round = 0.0;   // J
  double lifetime_fnd = 0.0;       // rounds
  double throughput_mbps = 0.0;
  double delay_ms = 0.0;
};

struct SweepAggregate {
  double value = 0.0;
  SelectorKind selector = SelectorKind::Cso;
  int seed_count = 0;
  double energy_mean = 0.0, energy_sd = 0.0;
  double lifetime_mean = 0.0, lifetime_sd = 0.0;
  double throughput_mean = 0.0, throughput_sd = 0.0;
  double delay_mean = 0.0, delay_sd = 0.0;
};

struct SweepResult {
  SweepKind kind = SweepKind::Packets;
  std::vector<SweepCell> cells;           // ordered (value, selector, seed)
  std::vector<SweepAggregate> aggregates; // ordered (value, selector)
};

Config apply_sweep_override(const Config& base, SweepKind kind, double value);

// Runs every (value, selector, seed) cell, optionally on a bounded worker
// pool; results are merged in deterministic order regardless of job count.
SweepResult run_sweep(const SweepSpec& spec, int jobs = 1);

struct SelectorStats {
  SelectorKind selector = SelectorKind::Cso;
  double mean_fnd = 0.0;
  double mean_round_energy = 0.0;   // J
  double mean_set_fitness = 0.0;    // over shared snapshots
  double mean_selection_ms = 0.0;   // wall clock per election on shared snapshots
};

// Head-to-head comparison. Full runs per selector supply the lifetime and
// energy stats; win rates are computed on shared per-round snapshots taken
// from the first selector's trajectory, every selector electing on the same
// frozen objective table. win_rate[a][b] is the fraction of snapshots where
// a's set fitness is at least b's; a selector against itself scores exactly
// 0.5 by convention.
struct SelectorComparison {
  std::vector<SelectorStats> stats;
  std::vector<std::vector<double>> win_rate;  // [a][b]
  int snapshot_count = 0;
};

SelectorComparison compare_selectors(const Config& cfg,
                                     const std::vector<SelectorKind>& selectors,
                                     std::span<const std::uint64_t> seeds);

}  // namespace chsim
