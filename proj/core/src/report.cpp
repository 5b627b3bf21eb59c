#include "chsim/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace chsim {

namespace {

using nlohmann::ordered_json;

// Traces keep nine significant digits, aggregate tables six.
std::string num9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string num6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string join_ids(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(ids[i]);
  }
  return out;
}

ordered_json summary_json(const RunSummary& summary, SelectorKind selector,
                          std::uint64_t seed) {
  ordered_json j;
  j["selector"] = to_string(selector);
  j["seed"] = seed;
  j["rounds_executed"] = summary.rounds_executed;
  j["first_node_death_round"] = summary.first_node_death_round;
  j["half_nodes_death_round"] = summary.half_nodes_death_round;
  j["last_node_death_round"] = summary.last_node_death_round;
  j["total_energy_j"] = summary.total_energy;
  j["total_bits"] = summary.total_bits;
  j["mean_throughput_mbps"] = summary.mean_throughput_mbps;
  j["mean_delay_ms"] = summary.mean_delay_ms;
  j["mean_formation_ms"] = summary.mean_formation_ms;
  return j;
}

}  // namespace

ReportFormat report_format_from_string(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (n == "csv") return ReportFormat::Csv;
  if (n == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown format '" + name + "' (csv|json)");
}

void write_text_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out.flush()) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write failed for '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

std::string render_round_trace_csv(const RunSummary& summary) {
  std::string out = "round,energy_j,alive,bits,delay_ms,formation_ms,ch_ids\n";
  for (const auto& r : summary.rounds) {
    out += std::to_string(r.round_index);
    out += ',';
    out += num9(r.energy_consumed);
    out += ',';
    out += std::to_string(r.alive_count);
    out += ',';
    out += std::to_string(r.bits_delivered_to_bs);
    out += ',';
    out += num9(r.mean_propagation_delay_ms);
    out += ',';
    out += num9(r.cluster_formation_ms);
    out += ',';
    out += join_ids(r.ch_ids);
    out += '\n';
  }
  return out;
}

std::string render_run_summary_json(const RunSummary& summary,
                                    SelectorKind selector, std::uint64_t seed) {
  return summary_json(summary, selector, seed).dump(2) + "\n";
}

std::string render_run_summary_csv(const RunSummary& summary,
                                   SelectorKind selector, std::uint64_t seed) {
  std::string out =
      "selector,seed,rounds_executed,first_node_death_round,"
      "half_nodes_death_round,last_node_death_round,total_energy_j,total_bits,"
      "mean_throughput_mbps,mean_delay_ms,mean_formation_ms\n";
  out += to_string(selector);
  out += ',';
  out += std::to_string(seed);
  out += ',';
  out += std::to_string(summary.rounds_executed);
  out += ',';
  out += std::to_string(summary.first_node_death_round);
  out += ',';
  out += std::to_string(summary.half_nodes_death_round);
  out += ',';
  out += std::to_string(summary.last_node_death_round);
  out += ',';
  out += num9(summary.total_energy);
  out += ',';
  out += std::to_string(summary.total_bits);
  out += ',';
  out += num9(summary.mean_throughput_mbps);
  out += ',';
  out += num9(summary.mean_delay_ms);
  out += ',';
  out += num9(summary.mean_formation_ms);
  out += '\n';
  return out;
}

std::string render_sweep_rows_csv(const SweepResult& result) {
  std::string out =
      "sweep,value,selector,seed,energy_per_round_j,lifetime_fnd,"
      "throughput_mbps,delay_ms\n";
  for (const auto& cell : result.cells) {
    out += to_string(result.kind);
    out += ',';
    out += num9(cell.value);
    out += ',';
    out += to_string(cell.selector);
    out += ',';
    out += std::to_string(cell.seed);
    out += ',';
    out += num9(cell.energy_per_round);
    out += ',';
    out += num9(cell.lifetime_fnd);
    out += ',';
    out += num9(cell.throughput_mbps);
    out += ',';
    out += num9(cell.delay_ms);
    out += '\n';
  }
  return out;
}

std::string render_sweep_summary_csv(const SweepResult& result) {
  std::string out =
      "sweep,value,selector,seeds,energy_mean_j,energy_sd,lifetime_mean,"
      "lifetime_sd,throughput_mean_mbps,throughput_sd,delay_mean_ms,delay_sd\n";
  for (const auto& agg : result.aggregates) {
    out += to_string(result.kind);
    out += ',';
    out += num6(agg.value);
    out += ',';
    out += to_string(agg.selector);
    out += ',';
    out += std::to_string(agg.seed_count);
    out += ',';
    out += num6(agg.energy_mean);
    out += ',';
    out += num6(agg.energy_sd);
    out += ',';
    out += num6(agg.lifetime_mean);
    out += ',';
    out += num6(agg.lifetime_sd);
    out += ',';
    out += num6(agg.throughput_mean);
    out += ',';
    out += num6(agg.throughput_sd);
    out += ',';
    out += num6(agg.delay_mean);
    out += ',';
    out += num6(agg.delay_sd);
    out += '\n';
  }
  return out;
}

std::string render_sweep_json(const SweepResult& result) {
  ordered_json j;
  j["sweep"] = to_string(result.kind);
  j["cells"] = ordered_json::array();
  for (const auto& cell : result.cells) {
    ordered_json c;
    c["value"] = cell.value;
    c["selector"] = to_string(cell.selector);
    c["seed"] = cell.seed;
    c["energy_per_round_j"] = cell.energy_per_round;
    c["lifetime_fnd"] = cell.lifetime_fnd;
    c["throughput_mbps"] = cell.throughput_mbps;
    c["delay_ms"] = cell.delay_ms;
    j["cells"].push_back(std::move(c));
  }
  j["aggregates"] = ordered_json::array();
  for (const auto& agg : result.aggregates) {
    ordered_json a;
    a["value"] = agg.value;
    a["selector"] = to_string(agg.selector);
    a["seeds"] = agg.seed_count;
    a["energy_mean_j"] = agg.energy_mean;
    a["energy_sd"] = agg.energy_sd;
    a["lifetime_mean"] = agg.lifetime_mean;
    a["lifetime_sd"] = agg.lifetime_sd;
    a["throughput_mean_mbps"] = agg.throughput_mean;
    a["throughput_sd"] = agg.throughput_sd;
    a["delay_mean_ms"] = agg.delay_mean;
    a["delay_sd"] = agg.delay_sd;
    j["aggregates"].push_back(std::move(a));
  }
  return j.dump(2) + "\n";
}

std::string render_comparison_csv(const SelectorComparison& comparison,
                                  const std::vector<SelectorKind>& selectors) {
  std::string out = "selector,mean_fnd,mean_round_energy_j,mean_set_fitness,"
                    "mean_selection_ms";
  for (SelectorKind s : selectors) out += ",win_vs_" + to_string(s);
  out += '\n';
  for (std::size_t a = 0; a < comparison.stats.size(); ++a) {
    const auto& st = comparison.stats[a];
    out += to_string(st.selector);
    out += ',';
    out += num6(st.mean_fnd);
    out += ',';
    out += num6(st.mean_round_energy);
    out += ',';
    out += num6(st.mean_set_fitness);
    out += ',';
    out += num6(st.mean_selection_ms);
    for (std::size_t b = 0; b < comparison.stats.size(); ++b) {
      out += ',';
      out += num6(comparison.win_rate[a][b]);
    }
    out += '\n';
  }
  return out;
}

std::string render_comparison_json(const SelectorComparison& comparison,
                                   const std::vector<SelectorKind>& selectors) {
  ordered_json j;
  j["snapshots"] = comparison.snapshot_count;
  j["stats"] = ordered_json::array();
  for (const auto& st : comparison.stats) {
    ordered_json s;
    s["selector"] = to_string(st.selector);
    s["mean_fnd"] = st.mean_fnd;
    s["mean_round_energy_j"] = st.mean_round_energy;
    s["mean_set_fitness"] = st.mean_set_fitness;
    s["mean_selection_ms"] = st.mean_selection_ms;
    j["stats"].push_back(std::move(s));
  }
  j["win_rate"] = ordered_json::object();
  for (std::size_t a = 0; a < comparison.stats.size(); ++a) {
    ordered_json row;
    for (std::size_t b = 0; b < comparison.stats.size(); ++b)
      row[to_string(selectors[b])] = comparison.win_rate[a][b];
    j["win_rate"][to_string(selectors[a])] = std::move(row);
  }
  return j.dump(2) + "\n";
}

std::string render_objective_table_csv(const ObjectiveTable& table) {
  std::string out = "node_id,cluster_energy_j,comm_cost,queuing_delay,"
                    "link_quality,centrality,fitness\n";
  for (std::size_t i = 0; i < table.node_ids.size(); ++i) {
    const auto& o = table.objectives[i];
    out += std::to_string(table.node_ids[i]);
    out += ',';
    out += num9(o.cluster_energy);
    out += ',';
    out += num9(o.comm_cost);
    out += ',';
    out += num9(o.queuing_delay);
    out += ',';
    out += num9(o.link_quality);
    out += ',';
    out += num9(o.centrality);
    out += ',';
    out += num9(table.fitness[i]);
    out += '\n';
  }
  return out;
}

std::string render_solution_trace_csv(const Solution& solution) {
  std::string out = "iteration,best_fitness\n";
  for (std::size_t i = 0; i < solution.fitness_trace.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += num9(solution.fitness_trace[i]);
    out += '\n';
  }
  return out;
}

}  // namespace chsim
