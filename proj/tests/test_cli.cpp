// Drives the installed front end as a subprocess. The binary path arrives in
// CHSIM_CLI (set by ctest); every invocation here keeps the network small so
// the whole suite stays in the sub-second range per case.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

struct CliFixture {
  fs::path dir;
  std::string binary;

  CliFixture() {
    const char* env = std::getenv("CHSIM_CLI");
    REQUIRE_MESSAGE(env != nullptr, "CHSIM_CLI must point at the CLI binary");
    binary = env;
    dir = fs::temp_directory_path() /
          ("chsim_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~CliFixture() { fs::remove_all(dir); }

  // args is a raw shell tail; env_prefix holds inline VAR=value assignments.
  CliResult run_cli(const std::string& args,
                    const std::string& env_prefix = "") const {
    const fs::path err_file = dir / "stderr.txt";
    std::string cmd = env_prefix;
    if (!cmd.empty()) cmd += ' ';
    cmd += "'" + binary + "' " + args + " 2>'" + err_file.string() + "'";
    CliResult result;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0)
      result.out.append(buf, got);
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err(err_file);
    std::ostringstream ss;
    ss << err.rdbuf();
    result.err = ss.str();
    return result;
  }

  std::string slurp(const fs::path& p) const {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

// Small topology so full runs finish instantly.
const std::string kSmallEnv =
    "SIM_NETWORK_NODE_COUNT=12 SIM_NETWORK_CLUSTER_COUNT=2 "
    "SIM_NETWORK_MAX_ROUNDS=4";

// Drops the wall-clock formation column (index 5) from a trace CSV.
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

}  // namespace

TEST_CASE_FIXTURE(CliFixture, "run writes summary and trace") {
  const auto out1 = dir / "run1.csv";
  const auto trace1 = dir / "trace1.csv";
  const auto r = run_cli("run --seed 7 --selector cso --out '" + out1.string() +
                             "' --trace '" + trace1.string() + "'",
                         kSmallEnv);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());

  const std::string summary = slurp(out1);
  CHECK(summary.rfind("selector,seed,rounds_executed,", 0) == 0);
  CHECK(summary.find("\ncso,7,4,") != std::string::npos);

  const std::string trace = slurp(trace1);
  CHECK(trace.rfind("round,energy_j,alive,bits,delay_ms,formation_ms,ch_ids",
                    0) == 0);

  SUBCASE("a second run matches except for wall-clock columns") {
    const auto trace2 = dir / "trace2.csv";
    const auto r2 = run_cli("run --seed 7 --selector cso --trace '" +
                                trace2.string() + "' --out '" +
                                (dir / "run2.csv").string() + "'",
                            kSmallEnv);
    CHECK(r2.exit_code == 0);
    CHECK(strip_formation(slurp(trace2)) == strip_formation(trace));
  }
}

TEST_CASE_FIXTURE(CliFixture, "run emits json") {
  const auto r = run_cli("run --seed 3 --selector random --format json", kSmallEnv);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["selector"] == "random");
  CHECK(j["seed"] == 3);
  CHECK(j["rounds_executed"] == 4);
  CHECK(j["total_energy_j"].get<double>() > 0.0);
}

TEST_CASE_FIXTURE(CliFixture, "objectives table") {
  SUBCASE("csv header and row count") {
    const auto r = run_cli("objectives --seed 2", kSmallEnv);
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line ==
          "node_id,cluster_energy_j,comm_cost,queuing_delay,link_quality,"
          "centrality,fitness");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 12);
  }
  SUBCASE("json rows parse") {
    const auto r = run_cli("objectives --seed 2 --format json", kSmallEnv);
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 12);
    CHECK(j[0].contains("node_id"));
    CHECK(j[0].contains("fitness"));
  }
  SUBCASE("env override resizes the pool") {
    const auto r = run_cli("objectives --seed 2",
                           "SIM_NETWORK_NODE_COUNT=7 SIM_NETWORK_CLUSTER_COUNT=2");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int rows = -1;  // header
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 7);
  }
}

TEST_CASE_FIXTURE(CliFixture, "optimize") {
  const auto trace = dir / "opt_trace.csv";
  SUBCASE("cso election with a trace") {
    const auto r = run_cli("optimize --seed 5 --selector cso --trace '" +
                               trace.string() + "'",
                           kSmallEnv);
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("selector,seed,k,set_fitness,ch_ids\ncso,5,2,", 0) == 0);
    std::istringstream lines(slurp(trace));
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "iteration,best_fitness");
    double prev = -1e300;
    int rows = 0;
    while (std::getline(lines, line)) {
      const auto comma = line.find(',');
      REQUIRE(comma != std::string::npos);
      const double best = std::stod(line.substr(comma + 1));
      CHECK(best >= prev);
      prev = best;
      ++rows;
    }
    CHECK(rows == 150);  // optimizer default iteration budget
  }
  SUBCASE("json carries the election") {
    const auto r = run_cli("optimize --seed 5 --selector pso --format json",
                           kSmallEnv);
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["selector"] == "pso");
    CHECK(j["k"] == 2);
    REQUIRE(j["ch_ids"].is_array());
    CHECK(j["ch_ids"].size() == 2);
    CHECK(j.contains("iterations_used"));
  }
  SUBCASE("trace needs an optimizer-backed selector") {
    const auto r = run_cli("optimize --selector random --trace '" +
                               trace.string() + "'",
                           kSmallEnv);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(!fs::exists(trace));
  }
}

TEST_CASE_FIXTURE(CliFixture, "sweep writes rows and aggregates") {
  const auto rows_path = dir / "sweep_rows.csv";
  const auto summary_path = dir / "sweep_summary.csv";
  const auto r = run_cli(
      "sweep --kind packets --values 1,2 --selectors random --seeds 1,2 "
      "--jobs 2 --out '" +
          rows_path.string() + "' --summary-out '" + summary_path.string() + "'",
      kSmallEnv);
  CHECK(r.exit_code == 0);

  std::istringstream rows(slurp(rows_path));
  std::string line;
  REQUIRE(std::getline(rows, line));
  CHECK(line ==
        "sweep,value,selector,seed,energy_per_round_j,lifetime_fnd,"
        "throughput_mbps,delay_ms");
  int row_count = 0;
  while (std::getline(rows, line)) {
    CHECK(line.rfind("packets,", 0) == 0);
    ++row_count;
  }
  CHECK(row_count == 4);  // 2 values x 1 selector x 2 seeds

  std::istringstream summary(slurp(summary_path));
  REQUIRE(std::getline(summary, line));
  CHECK(line.rfind("sweep,value,selector,seeds,", 0) == 0);
  int agg_count = 0;
  while (std::getline(summary, line)) ++agg_count;
  CHECK(agg_count == 2);
}

TEST_CASE_FIXTURE(CliFixture, "compare emits the win matrix") {
  const auto r = run_cli("compare --selectors oracle,random --seeds 1", kSmallEnv);
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line ==
        "selector,mean_fnd,mean_round_energy_j,mean_set_fitness,"
        "mean_selection_ms,win_vs_oracle,win_vs_random");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 2);
}

TEST_CASE_FIXTURE(CliFixture, "failures exit nonzero and leave no artifact") {
  SUBCASE("missing config file") {
    const auto out = dir / "never.csv";
    const auto r = run_cli("run --config '" + (dir / "absent.json").string() +
                           "' --out '" + out.string() + "'");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(!fs::exists(out));
  }
  SUBCASE("config value out of range") {
    const auto cfg = dir / "bad.json";
    std::ofstream(cfg) << "{\"network\":{\"node_count\":0}}";
    const auto r = run_cli("run --config '" + cfg.string() + "'");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
  }
  SUBCASE("unknown environment override") {
    const auto r = run_cli("objectives", "SIM_BOGUS_KEY=1");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("unknown environment override") != std::string::npos);
  }
  SUBCASE("unknown selector name") {
    const auto r = run_cli("run --selector zeus", kSmallEnv);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
  }
  SUBCASE("unknown output format") {
    const auto r = run_cli("run --format xml", kSmallEnv);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("unknown format") != std::string::npos);
  }
  SUBCASE("a subcommand is required") {
    const auto r = run_cli("");
    CHECK(r.exit_code != 0);
  }
  SUBCASE("unknown sweep kind") {
    const auto r = run_cli("sweep --kind volume --values 1,2", kSmallEnv);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
  }
}
