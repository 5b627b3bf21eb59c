#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "chsim/report.hpp"
#include "json.hpp"

using namespace chsim;
namespace fs = std::filesystem;

namespace {

// Scratch directory for atomic-write tests, removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("chsim_report_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunSummary tiny_summary() {
  RunSummary summary;
  summary.rounds_executed = 2;
  summary.first_node_death_round = 2;
  summary.half_nodes_death_round = 2;
  summary.last_node_death_round = 2;
  summary.total_energy = 0.75;
  summary.total_bits = 6000;
  summary.mean_throughput_mbps = 0.5;
  summary.mean_delay_ms = 1.5;
  summary.mean_formation_ms = 2.25;
  RoundMetrics r1;
  r1.round_index = 1;
  r1.energy_consumed = 0.5;
  r1.alive_count = 10;
  r1.bits_delivered_to_bs = 3000;
  r1.mean_propagation_delay_ms = 1.5;
  r1.cluster_formation_ms = 2.25;
  r1.ch_ids = {1, 5};
  RoundMetrics r2 = r1;
  r2.round_index = 2;
  r2.energy_consumed = 0.25;
  r2.alive_count = 8;
  r2.ch_ids = {5};
  summary.rounds = {r1, r2};
  return summary;
}

}  // namespace

TEST_CASE("format names") {
  CHECK(report_format_from_string("csv") == ReportFormat::Csv);
  CHECK(report_format_from_string("CSV") == ReportFormat::Csv);
  CHECK(report_format_from_string("json") == ReportFormat::Json);
  CHECK_THROWS_AS(report_format_from_string("xml"), std::invalid_argument);
}

TEST_CASE("atomic writes") {
  TempDir dir;
  SUBCASE("content lands and the temp file is gone") {
    const auto target = dir.path / "out.csv";
    write_text_atomically(target.string(), "a,b\n1,2\n");
    CHECK(slurp(target) == "a,b\n1,2\n");
    CHECK(!fs::exists(dir.path / "out.csv.tmp"));
  }
  SUBCASE("overwrites are whole-file swaps") {
    const auto target = dir.path / "out.csv";
    write_text_atomically(target.string(), "first\n");
    write_text_atomically(target.string(), "second\n");
    CHECK(slurp(target) == "second\n");
  }
  SUBCASE("an unwritable directory throws and leaves nothing") {
    const std::string bad = "/nonexistent_dir_for_report_test/out.csv";
    CHECK_THROWS_AS(write_text_atomically(bad, "x"), std::runtime_error);
    CHECK(!fs::exists(bad));
    CHECK(!fs::exists(bad + ".tmp"));
  }
}

TEST_CASE("round trace schema") {
  const auto csv = render_round_trace_csv(tiny_summary());
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "round,energy_j,alive,bits,delay_ms,formation_ms,ch_ids");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "1,0.5,10,3000,1.5,2.25,1;5");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "2,0.25,8,3000,1.5,2.25,5");
  CHECK(!std::getline(lines, line));
}

TEST_CASE("run summary renderers") {
  const auto summary = tiny_summary();
  SUBCASE("csv header and row") {
    const auto csv = render_run_summary_csv(summary, SelectorKind::Random, 7);
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line ==
          "selector,seed,rounds_executed,first_node_death_round,"
          "half_nodes_death_round,last_node_death_round,total_energy_j,"
          "total_bits,mean_throughput_mbps,mean_delay_ms,mean_formation_ms");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "random,7,2,2,2,2,0.75,6000,0.5,1.5,2.25");
  }
  SUBCASE("json parses and carries the fields") {
    const auto text = render_run_summary_json(summary, SelectorKind::Cso, 3);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["selector"] == "cso");
    CHECK(j["seed"] == 3);
    CHECK(j["rounds_executed"] == 2);
    CHECK(j["total_energy_j"] == doctest::Approx(0.75));
    CHECK(j["mean_throughput_mbps"] == doctest::Approx(0.5));
  }
  SUBCASE("rendering twice is byte-identical") {
    CHECK(render_run_summary_csv(summary, SelectorKind::Pso, 1) ==
          render_run_summary_csv(summary, SelectorKind::Pso, 1));
    CHECK(render_round_trace_csv(summary) == render_round_trace_csv(summary));
  }
}

TEST_CASE("sweep renderers") {
  SweepResult result;
  result.kind = SweepKind::Packets;
  SweepCell cell;
  cell.value = 5;
  cell.selector = SelectorKind::Cso;
  cell.seed = 2;
  cell.energy_per_round = 0.125;
  cell.lifetime_fnd = 40;
  cell.throughput_mbps = 0.25;
  cell.delay_ms = 1.5;
  result.cells = {cell};
  SweepAggregate agg;
  agg.value = 5;
  agg.selector = SelectorKind::Cso;
  agg.seed_count = 3;
  agg.energy_mean = 0.123456789;  // six significant digits in the table
  agg.energy_sd = 0.5;
  agg.lifetime_mean = 40;
  agg.lifetime_sd = 0;
  agg.throughput_mean = 0.25;
  agg.throughput_sd = 0;
  agg.delay_mean = 1.5;
  agg.delay_sd = 0;
  result.aggregates = {agg};

  SUBCASE("row table") {
    std::istringstream lines(render_sweep_rows_csv(result));
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line ==
          "sweep,value,selector,seed,energy_per_round_j,lifetime_fnd,"
          "throughput_mbps,delay_ms");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "packets,5,cso,2,0.125,40,0.25,1.5");
  }
  SUBCASE("summary table rounds to six significant digits") {
    std::istringstream lines(render_sweep_summary_csv(result));
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line ==
          "sweep,value,selector,seeds,energy_mean_j,energy_sd,lifetime_mean,"
          "lifetime_sd,throughput_mean_mbps,throughput_sd,delay_mean_ms,"
          "delay_sd");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "packets,5,cso,3,0.123457,0.5,40,0,0.25,0,1.5,0");
  }
  SUBCASE("json parses with both sections") {
    const auto j = nlohmann::json::parse(render_sweep_json(result));
    CHECK(j["sweep"] == "packets");
    REQUIRE(j["cells"].size() == 1);
    CHECK(j["cells"][0]["selector"] == "cso");
    CHECK(j["cells"][0]["energy_per_round_j"] == doctest::Approx(0.125));
    REQUIRE(j["aggregates"].size() == 1);
    CHECK(j["aggregates"][0]["seeds"] == 3);
  }
}

TEST_CASE("comparison renderers") {
  SelectorComparison cmp;
  cmp.snapshot_count = 4;
  cmp.stats.resize(2);
  cmp.stats[0].selector = SelectorKind::Cso;
  cmp.stats[0].mean_fnd = 70.5;
  cmp.stats[0].mean_round_energy = 0.25;
  cmp.stats[0].mean_set_fitness = 3.5;
  cmp.stats[0].mean_selection_ms = 1.25;
  cmp.stats[1].selector = SelectorKind::Random;
  cmp.stats[1].mean_fnd = 60;
  cmp.stats[1].mean_round_energy = 0.5;
  cmp.stats[1].mean_set_fitness = 3;
  cmp.stats[1].mean_selection_ms = 0.125;
  cmp.win_rate = {{0.5, 0.75}, {0.25, 0.5}};
  const std::vector<SelectorKind> selectors{SelectorKind::Cso,
                                            SelectorKind::Random};

  SUBCASE("csv matrix") {
    std::istringstream lines(render_comparison_csv(cmp, selectors));
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line ==
          "selector,mean_fnd,mean_round_energy_j,mean_set_fitness,"
          "mean_selection_ms,win_vs_cso,win_vs_random");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "cso,70.5,0.25,3.5,1.25,0.5,0.75");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "random,60,0.5,3,0.125,0.25,0.5");
  }
  SUBCASE("json matrix") {
    const auto j = nlohmann::json::parse(render_comparison_json(cmp, selectors));
    CHECK(j["snapshots"] == 4);
    CHECK(j["win_rate"]["cso"]["random"] == doctest::Approx(0.75));
    CHECK(j["win_rate"]["random"]["cso"] == doctest::Approx(0.25));
    CHECK(j["stats"][0]["selector"] == "cso");
  }
}

TEST_CASE("objective table csv") {
  ObjectiveTable table;
  table.node_ids = {3, 9};
  table.objectives.resize(2);
  table.objectives[0] = {0.5, 0.25, 10, 0.5, 1};
  table.objectives[1] = {0.25, 0.125, 20, 1, 0};
  table.residual_energy = {2, 1};
  table.fitness = {0.75, 0.5};
  std::istringstream lines(render_objective_table_csv(table));
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line ==
        "node_id,cluster_energy_j,comm_cost,queuing_delay,link_quality,"
        "centrality,fitness");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "3,0.5,0.25,10,0.5,1,0.75");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "9,0.25,0.125,20,1,0,0.5");
}

TEST_CASE("solution trace csv is one-based") {
  Solution sol;
  sol.fitness_trace = {0.25, 0.5, 0.5};
  std::istringstream lines(render_solution_trace_csv(sol));
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "iteration,best_fitness");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "1,0.25");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "2,0.5");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "3,0.5");
}
