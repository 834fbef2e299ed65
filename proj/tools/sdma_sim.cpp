// Monte Carlo sweep driver: runs one of the standard scenarios (fig1-fig5)
// or a custom scenario file, and writes per-(scheme, K) throughput
// statistics as CSV. With --plot it also emits a matplotlib script that
// renders sum throughput vs number of concurrent links.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sdma/scenario_file.hpp"
#include "sdma/sim_harness.hpp"

namespace {

int run(const sdma::Scenario& scenario, const std::string& out_path,
        bool emit_plot, int n_threads) {
  const sdma::SweepResult result = sdma::run_scenario(scenario, n_threads);

  std::ostringstream csv;
  sdma::write_csv(result, csv);
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot open output file: " << out_path << "\n";
      return 1;
    }
    out << csv.str();
    if (!out) {
      std::cerr << "error: failed writing output file: " << out_path << "\n";
      return 1;
    }
  }

  if (emit_plot) {
    std::filesystem::path csv_path(out_path.empty() ? "sweep.csv" : out_path);
    std::filesystem::path script_path = csv_path;
    script_path.replace_extension(".plot.py");
    std::ofstream plot(script_path);
    if (!plot) {
      std::cerr << "error: cannot open plot script: " << script_path << "\n";
      return 1;
    }
    plot << "#!/usr/bin/env python3\n"
            "\"\"\"Render sum throughput vs concurrent links from "
         << csv_path.filename() << ".\"\"\"\n"
            "import csv\n"
            "from collections import defaultdict\n"
            "import matplotlib.pyplot as plt\n"
            "\n"
            "series = defaultdict(list)\n"
            "with open("
         << csv_path.filename() << ") as f:\n"
            "    for row in csv.DictReader(f):\n"
            "        series[row['scheme']].append(\n"
            "            (int(row['k']), float(row['mean_mbps'])))\n"
            "for name in sorted(series):\n"
            "    pts = sorted(series[name])\n"
            "    plt.plot([k for k, _ in pts], [m for _, m in pts],\n"
            "             marker='o', label=name)\n"
            "plt.xlabel('Number of concurrent links')\n"
            "plt.ylabel('Sum throughput (Mbps)')\n"
            "plt.title("
         << "'" << scenario.name << "'"
         << ")\n"
            "plt.grid(True)\n"
            "plt.legend()\n"
            "plt.savefig("
         << "'" << scenario.name << ".png'"
         << ", dpi=150)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SDMA concurrent-link MAC Monte Carlo simulator"};

  std::string scenario_name;
  std::string config_path;
  std::string out_path;
  int topologies = 0;
  long long seed = -1;
  bool emit_plot = false;
  int n_threads = 0;

  app.add_option("--scenario", scenario_name,
                 "Scenario: fig1|fig2|fig3|fig4|fig5|custom")
      ->required();
  app.add_option("--config", config_path,
                 "Scenario file (required for --scenario custom)");
  app.add_option("--topologies", topologies,
                 "Override the number of topologies per (scheme, K) cell");
  app.add_option("--seed", seed, "Base seed for topology generation");
  app.add_option("--out", out_path, "CSV output path ('-' for stdout)");
  app.add_flag("--plot", emit_plot, "Also write a matplotlib render script");
  app.add_option("--threads", n_threads,
                 "Worker threads (default: hardware concurrency)");

  CLI11_PARSE(app, argc, argv);

  try {
    sdma::Scenario scenario;
    if (scenario_name == "custom") {
      if (config_path.empty()) {
        std::cerr << "error: --scenario custom requires --config\n"
                  << app.help();
        return 2;
      }
      scenario = sdma::load_custom_scenario(config_path);
      if (scenario.schemes.empty()) {
        std::cerr << "error: scenario file defines no schemes\n";
        return 2;
      }
    } else {
      int index = -1;
      if (scenario_name.size() == 4 && scenario_name.rfind("fig", 0) == 0 &&
          scenario_name[3] >= '1' && scenario_name[3] <= '5')
        index = scenario_name[3] - '1';
      if (index < 0) {
        std::cerr << "error: unknown scenario '" << scenario_name << "'\n"
                  << app.help();
        return 2;
      }
      scenario = sdma::figure_scenarios()[index];
    }
    if (topologies > 0) scenario.n_topologies = topologies;
    if (seed >= 0) scenario.base_seed = static_cast<std::uint64_t>(seed);
    return run(scenario, out_path, emit_plot, n_threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
