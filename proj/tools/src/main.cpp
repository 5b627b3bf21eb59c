// Command-line front end: lifetime runs, parameter sweeps, selector
// comparisons, and one-shot inspection of the objective table or a single
// election. All file output goes through the atomic writer so an interrupted
// run never leaves a partial artifact.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chsim/report.hpp"
#include "json.hpp"

namespace {

using namespace chsim;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  write_text_atomically(out_path, text);
}

Config make_config(const std::string& preset, const std::string& config_path) {
  const Config base = config_preset(preset);
  if (config_path.empty())
    return load_config_text("{}", base);  // still applies SIM_* overrides
  return load_config(config_path, base);
}

std::vector<SelectorKind> parse_selectors(const std::vector<std::string>& names) {
  std::vector<SelectorKind> kinds;
  kinds.reserve(names.size());
  for (const auto& name : names) kinds.push_back(selector_from_string(name));
  return kinds;
}

std::string join_ids(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(ids[i]);
  }
  return out;
}

struct CommonOpts {
  std::string preset = "desk";
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::string selector;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_selector = true) {
  cmd->add_option("--preset", opts.preset, "Base preset (desk|paper-scale)")
      ->capture_default_str();
  cmd->add_option("--config", opts.config_path, "JSON config overlaying the preset");
  cmd->add_option("--out", opts.out_path, "Output file (stdout when omitted)");
  cmd->add_option("--format", opts.format, "Output format (csv|json)")
      ->capture_default_str();
  opts.seed_opt = cmd->add_option("--seed", opts.seed, "Deployment RNG seed");
  if (with_selector)
    cmd->add_option("--selector", opts.selector,
                    "Cluster-head selector (cso|pso|random|oracle)");
}

Config resolve(const CommonOpts& opts) {
  Config cfg = make_config(opts.preset, opts.config_path);
  if (opts.seed_opt && opts.seed_opt->count() > 0) cfg.network.rng_seed = opts.seed;
  if (!opts.selector.empty())
    cfg.simulation.selector = selector_from_string(opts.selector);
  return cfg;
}

int cmd_run(const CommonOpts& opts, const std::string& trace_path) {
  const Config cfg = resolve(opts);
  const ReportFormat format = report_format_from_string(opts.format);
  const RunSummary summary = run(cfg);
  if (!trace_path.empty())
    write_text_atomically(trace_path, render_round_trace_csv(summary));
  emit(format == ReportFormat::Json
           ? render_run_summary_json(summary, cfg.simulation.selector,
                                     cfg.network.rng_seed)
           : render_run_summary_csv(summary, cfg.simulation.selector,
                                    cfg.network.rng_seed),
       opts.out_path);
  return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& kind_name,
              const std::vector<double>& values,
              const std::vector<std::string>& selector_names,
              const std::vector<std::uint64_t>& seeds, int jobs,
              const std::string& summary_path) {
  const ReportFormat format = report_format_from_string(opts.format);
  SweepSpec spec;
  spec.kind = sweep_kind_from_string(kind_name);
  spec.values = values;
  spec.selectors = parse_selectors(selector_names);
  spec.seeds = seeds;
  spec.base = resolve(opts);
  const SweepResult result = run_sweep(spec, jobs);
  if (!summary_path.empty())
    write_text_atomically(summary_path, render_sweep_summary_csv(result));
  emit(format == ReportFormat::Json ? render_sweep_json(result)
                                    : render_sweep_rows_csv(result),
       opts.out_path);
  return 0;
}

int cmd_compare(const CommonOpts& opts,
                const std::vector<std::string>& selector_names,
                const std::vector<std::uint64_t>& seeds) {
  const ReportFormat format = report_format_from_string(opts.format);
  const Config cfg = resolve(opts);
  const auto selectors = parse_selectors(selector_names);
  const SelectorComparison comparison = compare_selectors(cfg, selectors, seeds);
  emit(format == ReportFormat::Json
           ? render_comparison_json(comparison, selectors)
           : render_comparison_csv(comparison, selectors),
       opts.out_path);
  return 0;
}

ObjectiveTable first_round_table(const Config& cfg, CommunicationGraph& graph) {
  const Network net = deploy(cfg.network);
  graph = build_graph(net, cfg.network.effective_forwarding_radius());
  const ObjectiveContext ctx{net,
                             graph,
                             cfg.fitness.weights,
                             cfg.fitness.mode,
                             std::min(cfg.network.cluster_count, graph.vertex_count()),
                             static_cast<double>(cfg.network.packet_size_bits)};
  return evaluate_candidates(ctx);
}

int cmd_objectives(const CommonOpts& opts) {
  const ReportFormat format = report_format_from_string(opts.format);
  const Config cfg = resolve(opts);
  CommunicationGraph graph;
  const ObjectiveTable table = first_round_table(cfg, graph);
  if (format == ReportFormat::Csv) {
    emit(render_objective_table_csv(table), opts.out_path);
    return 0;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < table.node_ids.size(); ++i) {
    nlohmann::ordered_json row;
    row["node_id"] = table.node_ids[i];
    row["cluster_energy_j"] = table.objectives[i].cluster_energy;
    row["comm_cost"] = table.objectives[i].comm_cost;
    row["queuing_delay"] = table.objectives[i].queuing_delay;
    row["link_quality"] = table.objectives[i].link_quality;
    row["centrality"] = table.objectives[i].centrality;
    row["fitness"] = table.fitness[i];
    rows.push_back(std::move(row));
  }
  emit(rows.dump(2) + "\n", opts.out_path);
  return 0;
}

int cmd_optimize(const CommonOpts& opts, const std::string& trace_path) {
  const ReportFormat format = report_format_from_string(opts.format);
  const Config cfg = resolve(opts);
  CommunicationGraph graph;
  const ObjectiveTable table = first_round_table(cfg, graph);
  SelectionInput input{table,
                       std::min(cfg.network.cluster_count,
                                static_cast<int>(table.node_ids.size())),
                       derive_seed(cfg.network.rng_seed, stream::kSelection, 1),
                       cfg.cso, cfg.pso};
  const SelectionResult result =
      select_cluster_heads(cfg.simulation.selector, input);
  if (!trace_path.empty()) {
    if (!result.solution)
      throw std::invalid_argument(
          "--trace needs an optimizer-backed selector (cso|pso)");
    write_text_atomically(trace_path, render_solution_trace_csv(*result.solution));
  }
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["selector"] = to_string(cfg.simulation.selector);
    j["seed"] = cfg.network.rng_seed;
    j["k"] = input.k;
    j["ch_ids"] = result.ch_ids;
    j["set_fitness"] = result.set_fitness;
    if (result.solution) {
      j["iterations_used"] = result.solution->iterations_used;
      j["reorder_count"] = result.solution->reorder_count;
    }
    emit(j.dump(2) + "\n", opts.out_path);
  } else {
    std::string out = "selector,seed,k,set_fitness,ch_ids\n";
    out += to_string(cfg.simulation.selector) + ',' +
           std::to_string(cfg.network.rng_seed) + ',' + std::to_string(input.k) +
           ',';
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", result.set_fitness);
    out += buf;
    out += ',' + join_ids(result.ch_ids) + '\n';
    emit(out, opts.out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-aware cluster-head selection simulator"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  std::string run_trace;
  auto* run_cmd = app.add_subcommand("run", "Full lifetime simulation");
  add_common(run_cmd, run_opts);
  run_cmd->add_option("--trace", run_trace, "Write the per-round CSV trace here");

  CommonOpts sweep_opts;
  std::string sweep_kind = "packets";
  std::vector<double> sweep_values;
  std::vector<std::string> sweep_selectors{"cso"};
  std::vector<std::uint64_t> sweep_seeds{1, 2, 3};
  std::string sweep_summary;
  int jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep over lifetime runs");
  add_common(sweep_cmd, sweep_opts, false);
  sweep_cmd->add_option("--kind", sweep_kind,
                        "packets|node-count|tx-power|cluster-count|delay-vs-nodes")
      ->capture_default_str();
  sweep_cmd->add_option("--values", sweep_values, "Swept values, strictly monotone")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--selectors", sweep_selectors, "Selectors to sweep")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--seeds", sweep_seeds, "Deployment seeds per cell")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  sweep_cmd->add_option("--summary-out", sweep_summary,
                        "Also write the per-(value, selector) aggregate CSV here");

  CommonOpts compare_opts;
  std::vector<std::string> compare_selectors_opt{"cso", "pso", "random"};
  std::vector<std::uint64_t> compare_seeds{1, 2, 3};
  auto* compare_cmd =
      app.add_subcommand("compare", "Head-to-head selector comparison");
  add_common(compare_cmd, compare_opts, false);
  compare_cmd->add_option("--selectors", compare_selectors_opt, "Selectors to compare")
      ->delimiter(',')
      ->capture_default_str();
  compare_cmd->add_option("--seeds", compare_seeds, "Deployment seeds")
      ->delimiter(',')
      ->capture_default_str();

  CommonOpts objectives_opts;
  auto* objectives_cmd =
      app.add_subcommand("objectives", "Dump the per-node objective table");
  add_common(objectives_cmd, objectives_opts, false);

  CommonOpts optimize_opts;
  std::string optimize_trace;
  auto* optimize_cmd = app.add_subcommand("optimize", "One election on a fresh deployment");
  add_common(optimize_cmd, optimize_opts);
  optimize_cmd->add_option("--trace", optimize_trace,
                           "Write the optimizer's best-fitness trace here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(run_opts, run_trace);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_opts, sweep_kind, sweep_values, sweep_selectors,
                       sweep_seeds, jobs, sweep_summary);
    if (compare_cmd->parsed())
      return cmd_compare(compare_opts, compare_selectors_opt, compare_seeds);
    if (objectives_cmd->parsed()) return cmd_objectives(objectives_opts);
    if (optimize_cmd->parsed()) return cmd_optimize(optimize_opts, optimize_trace);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
