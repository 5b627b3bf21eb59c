// Acceptance gate. Each criterion re-derives one shipped claim from scratch
// (independent oracles, frozen tolerances) and enforces its own wall-clock
// budget. Run with no arguments for all criteria, or pass criterion numbers.
// Prints one PASS/FAIL line per criterion; the exit code is the failure count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "chsim/centrality.hpp"
#include "chsim/config.hpp"
#include "chsim/cso.hpp"
#include "chsim/graph.hpp"
#include "chsim/network.hpp"
#include "chsim/objectives.hpp"
#include "chsim/radio.hpp"
#include "chsim/rng.hpp"
#include "chsim/selectors.hpp"
#include "chsim/simulation.hpp"
#include "chsim/sweep.hpp"

namespace {

using namespace chsim;
namespace fs = std::filesystem;

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

// --- 1: split tx + rx must equal the closed-form one-hop cost -------------

bool radio_identity(std::string& why) {
  const RadioEnergyModel radio;
  RngStream rng(42);
  for (int i = 0; i < 1000; ++i) {
    const double bits = rng.uniform(0.0, 5000.0);
    const double d = rng.uniform(0.0, 300.0);
    const double split = tx_energy(bits, d, radio) + rx_energy(bits, radio);
    const double whole = cumulative_energy(bits, d, radio);
    const double rel = std::abs(split - whole) / std::max(1.0, std::abs(whole));
    if (rel > 1e-12) {
      why = fmt("rel error %.3g at bits %.6g", rel, bits);
      return false;
    }
  }
  const double rx = rx_energy(1500.0, radio);
  if (std::abs(rx - 4.5e-5) > 1e-12 * 4.5e-5) {
    why = fmt("rx(1500) = %.12g, want 4.5e-5", rx);
    return false;
  }
  return true;
}

// --- 2: betweenness vs exhaustive shortest-path enumeration ---------------

bool graph_connected(const CommunicationGraph& g) {
  const int n = g.vertex_count();
  if (n == 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int w : g.adjacency[static_cast<std::size_t>(u)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == n;
}

// Every simple path between every pair, kept only at the minimum hop count.
std::vector<double> exhaustive_betweenness(const CommunicationGraph& g) {
  const int n = g.vertex_count();
  std::vector<double> bc(static_cast<std::size_t>(n), 0.0);
  if (n < 3) return bc;

  std::vector<int> path;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> shortest;  // interior vertices per best path
  int best_len = 0;

  std::function<void(int, int)> dfs = [&](int u, int t) {
    if (u == t) {
      const int len = static_cast<int>(path.size());
      if (shortest.empty() || len < best_len) {
        shortest.clear();
        best_len = len;
      }
      if (len == best_len)
        shortest.emplace_back(path.begin() + 1, path.end());  // drop the source
      return;
    }
    if (!shortest.empty() && static_cast<int>(path.size()) >= best_len) return;
    for (int w : g.adjacency[static_cast<std::size_t>(u)]) {
      if (used[static_cast<std::size_t>(w)]) continue;
      used[static_cast<std::size_t>(w)] = true;
      path.push_back(w);
      dfs(w, t);
      path.pop_back();
      used[static_cast<std::size_t>(w)] = false;
    }
  };

  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      shortest.clear();
      best_len = 0;
      path.assign(1, s);
      used.assign(static_cast<std::size_t>(n), false);
      used[static_cast<std::size_t>(s)] = true;
      dfs(s, t);
      if (shortest.empty()) continue;  // unreachable pair
      const double sigma = static_cast<double>(shortest.size());
      std::vector<double> through(static_cast<std::size_t>(n), 0.0);
      for (const auto& interior : shortest)
        for (std::size_t i = 0; i + 1 < interior.size(); ++i)
          through[static_cast<std::size_t>(interior[i])] += 1.0;
      for (int v = 0; v < n; ++v)
        bc[static_cast<std::size_t>(v)] += through[static_cast<std::size_t>(v)] / sigma;
    }

  const double norm =
      static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
  for (auto& value : bc) value /= norm;
  return bc;
}

bool centrality_oracle(std::string& why) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    NetworkConfig cfg = Config::desk_scale().network;
    cfg.node_count = 3 + static_cast<int>(seed % 6);
    cfg.cluster_count = 1;
    cfg.area = {150.0, 150.0};
    cfg.bs_position = {75.0, 75.0};
    cfg.rng_seed = seed;
    const Network net = deploy(cfg);
    const CommunicationGraph g =
        build_graph(net, cfg.effective_forwarding_radius());
    if (!graph_connected(g)) continue;
    ++checked;
    const auto fast = betweenness_centrality(g);
    const auto slow = exhaustive_betweenness(g);
    for (int v = 0; v < g.vertex_count(); ++v) {
      const double diff =
          std::abs(fast[static_cast<std::size_t>(v)] - slow[static_cast<std::size_t>(v)]);
      if (diff > 1e-12) {
        why = fmt("seed %g vertex diff %.3g", static_cast<double>(seed), diff);
        return false;
      }
    }
  }
  if (checked < 50) {
    why = fmt("only %g connected deployments", static_cast<double>(checked));
    return false;
  }
  return true;
}

// --- 3: swarm election vs the exhaustive subset oracle --------------------

bool election_near_optimal(std::string& why) {
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    NetworkConfig ncfg = Config::desk_scale().network;
    ncfg.node_count = 12;
    ncfg.cluster_count = 2;
    ncfg.rng_seed = seed;
    const Network net = deploy(ncfg);
    const CommunicationGraph g =
        build_graph(net, ncfg.effective_forwarding_radius());
    const ObjectiveContext ctx{net, g, FitnessWeights{}, FitnessMode::Residual,
                               2, 1500.0};
    const ObjectiveTable table = evaluate_candidates(ctx);

    SelectionInput input{table, 2, derive_seed(seed, stream::kSelection, 1),
                         SwarmConfig{}, PsoConfig{}};
    const SelectionResult swarm = select_cluster_heads(SelectorKind::Cso, input);
    const SelectionResult oracle = brute_force_select(table, 2);
    if (swarm.set_fitness >= 0.95 * oracle.set_fitness - 1e-15) ++wins;
  }
  why = fmt("near-optimal on %g/20 snapshots", static_cast<double>(wins));
  return wins >= 18;
}

// --- 4: swarm optimum on the negated 5-dim sphere -------------------------

bool sphere_convergence(std::string& why) {
  const auto sphere = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return -s;
  };
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SwarmConfig cfg;
    cfg.population = 50;
    cfg.max_iterations = 150;
    cfg.bounds.assign(5, Bounds{-5.0, 5.0});
    cfg.rng_seed = seed;
    if (cso_optimize(sphere, cfg).fitness >= -1e-2) ++hits;
  }
  why = fmt("within 1e-2 of the optimum on %g/20 seeds", static_cast<double>(hits));
  return hits >= 18;
}

// --- 5: lifetime-run bookkeeping invariants --------------------------------

bool lifetime_invariants(std::string& why) {
  const Config cfg = Config::desk_scale();
  double prev_total =
      cfg.network.node_count * cfg.network.initial_energy;
  int prev_alive = cfg.network.node_count;
  bool ok = true;
  std::string detail;

  const RunSummary summary = run(cfg, {}, [&](const RoundObservation& obs) {
    if (!ok) return;
    double total = 0.0;
    for (const auto& node : obs.state.network.nodes)
      total += node.residual_energy;
    const double delta = prev_total - total;
    const double rel = std::abs(delta - obs.metrics.energy_consumed) /
                       std::max(1.0, std::abs(delta));
    if (rel > 1e-9) {
      detail = fmt("energy ledger off by rel %.3g in round %g", rel,
                   static_cast<double>(obs.metrics.round_index));
      ok = false;
    }
    if (obs.metrics.alive_count > prev_alive) {
      detail = "alive count increased";
      ok = false;
    }
    if (obs.selection.solution) {
      const auto& trace = obs.selection.solution->fitness_trace;
      for (std::size_t i = 1; i < trace.size(); ++i)
        if (trace[i] < trace[i - 1]) {
          detail = "fitness trace decreased within an election";
          ok = false;
          break;
        }
    }
    prev_total = total;
    prev_alive = obs.metrics.alive_count;
  });

  if (!ok) {
    why = detail;
    return false;
  }
  if (!(summary.first_node_death_round <= summary.half_nodes_death_round &&
        summary.half_nodes_death_round <= summary.last_node_death_round)) {
    why = "death milestones out of order";
    return false;
  }
  return true;
}

// --- 6: selector quality, swarm vs random and particle swarm ---------------

bool selector_quality(std::string& why) {
  struct Snap {
    ObjectiveTable table;
    int k = 0;
    std::uint64_t seed = 0;
  };

  double fnd_cso = 0.0, fnd_random = 0.0;
  long long snapshots = 0, beats_random = 0, holds_pso = 0;

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Config cfg = Config::desk_scale();
    cfg.network.rng_seed = seed;

    std::vector<Snap> snaps;
    const RunSummary cso_run =
        run(cfg, SelectorKind::Cso, [&](const RoundObservation& obs) {
          const int pool = static_cast<int>(obs.table.node_ids.size());
          if (pool < 1) return;
          snaps.push_back({obs.table,
                           std::min(cfg.network.cluster_count, pool),
                           derive_seed(seed, stream::kSnapshotSelect,
                                       static_cast<std::uint64_t>(
                                           obs.metrics.round_index))});
        });
    const RunSummary random_run = run(cfg, SelectorKind::Random);
    fnd_cso += cso_run.first_node_death_round;
    fnd_random += random_run.first_node_death_round;

    for (const auto& snap : snaps) {
      const SelectionInput input{snap.table, snap.k, snap.seed, cfg.cso,
                                 cfg.pso};
      const double f_cso =
          select_cluster_heads(SelectorKind::Cso, input).set_fitness;
      const double f_pso =
          select_cluster_heads(SelectorKind::Pso, input).set_fitness;
      const double f_random =
          select_cluster_heads(SelectorKind::Random, input).set_fitness;
      ++snapshots;
      if (f_cso > f_random) ++beats_random;
      if (f_cso >= f_pso) ++holds_pso;
    }
  }

  const double vs_random =
      static_cast<double>(beats_random) / static_cast<double>(snapshots);
  const double vs_pso =
      static_cast<double>(holds_pso) / static_cast<double>(snapshots);
  why = fmt("beats random on %.3f, holds vs pso on %.3f", vs_random, vs_pso) +
        fmt(", mean FND %.2f vs %.2f random", fnd_cso / 20.0, fnd_random / 20.0);
  return fnd_cso >= fnd_random && vs_random >= 0.8 && vs_pso >= 0.5;
}

// --- 7: more traffic per round must cost more energy per round --------------

bool traffic_monotonicity(std::string& why) {
  SweepSpec spec;
  spec.kind = SweepKind::Packets;
  spec.values = {5.0, 25.0, 50.0, 100.0};
  spec.selectors = {SelectorKind::Cso, SelectorKind::Pso, SelectorKind::Random};
  spec.seeds = {1, 2, 3};
  spec.base = Config::desk_scale();
  const SweepResult result = run_sweep(spec, 4);

  for (const SelectorKind kind : spec.selectors) {
    double prev = -1.0;
    for (double value : spec.values) {
      const auto it = std::find_if(
          result.aggregates.begin(), result.aggregates.end(),
          [&](const SweepAggregate& a) {
            return a.selector == kind && a.value == value;
          });
      if (it == result.aggregates.end()) {
        why = "missing aggregate cell";
        return false;
      }
      if (it->energy_mean <= prev) {
        why = fmt("energy mean %.6g did not grow at value %g", it->energy_mean,
                  value);
        return false;
      }
      prev = it->energy_mean;
    }
  }
  return true;
}

// --- 8: byte-identical CLI traces for equal seeds ---------------------------

int run_command(const std::string& cmd) {
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  while (std::fread(buf, 1, sizeof(buf), pipe) > 0) {
  }
  const int status = ::pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string strip_formation(const std::string& csv) {
  std::istringstream lines(csv);
  std::string line, out;
  while (std::getline(lines, line)) {
    std::vector<std::string> fields;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    std::string rebuilt;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i == 5) continue;
      if (!rebuilt.empty()) rebuilt += ',';
      rebuilt += fields[i];
    }
    out += rebuilt + '\n';
  }
  return out;
}

bool trace_reproducibility(std::string& why) {
  const char* cli = std::getenv("CHSIM_CLI");
  if (!cli) {
    why = "CHSIM_CLI is not set";
    return false;
  }
  const fs::path dir = fs::temp_directory_path() /
                       ("chsim_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::string traces[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path trace = dir / ("trace" + std::to_string(i) + ".csv");
    const fs::path out = dir / ("summary" + std::to_string(i) + ".csv");
    const std::string cmd = std::string("'") + cli + "' run --seed 7 --trace '" +
                            trace.string() + "' --out '" + out.string() +
                            "' 2>/dev/null";
    if (run_command(cmd) != 0) {
      why = "CLI run exited nonzero";
      fs::remove_all(dir);
      return false;
    }
    std::ifstream in(trace, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    traces[i] = ss.str();
  }
  fs::remove_all(dir);
  if (traces[0].empty()) {
    why = "empty trace";
    return false;
  }
  if (strip_formation(traces[0]) != strip_formation(traces[1])) {
    why = "traces differ outside the wall-clock column";
    return false;
  }
  return true;
}

struct Criterion {
  int id;
  const char* label;
  double budget_seconds;
  bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "radio tx+rx equals the one-hop closed form", 1.0, radio_identity},
    {2, "betweenness matches exhaustive path enumeration", 10.0,
     centrality_oracle},
    {3, "swarm election reaches 95% of the exhaustive optimum", 60.0,
     election_near_optimal},
    {4, "swarm optimum on the 5-dim sphere", 30.0, sphere_convergence},
    {5, "lifetime run conserves energy and orders milestones", 30.0,
     lifetime_invariants},
    {6, "swarm selector beats random and holds against pso", 300.0,
     selector_quality},
    {7, "per-round energy grows with traffic", 120.0, traffic_monotonicity},
    {8, "equal seeds reproduce the run trace byte for byte", 30.0,
     trace_reproducibility},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), c.id) == wanted.end())
      continue;
    std::string why;
    const auto start = std::chrono::steady_clock::now();
    bool ok = c.fn(why);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds > c.budget_seconds) {
      ok = false;
      why = fmt("exceeded the %.0fs budget", c.budget_seconds) +
            (why.empty() ? "" : "; " + why);
    }
    std::printf("%s criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.id,
                c.label, seconds, why.empty() ? "" : "; ",
                why.c_str());
    if (!ok) ++failures;
  }
  return failures;
}
