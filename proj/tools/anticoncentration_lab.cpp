// Copyright 2026 The anticoncentration-lab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "aclab/scenario.hpp"

namespace {

int workers_from_env() {
  const char* env = std::getenv("ACLAB_WORKERS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

int run_with_expectation(const std::string& scenario_path, const std::string& out_dir,
                         const std::string& task, const std::string& mode) {
  std::ifstream in(scenario_path);
  if (!in) {
    std::cerr << "cannot open scenario file '" << scenario_path << "'\n";
    return 2;
  }
  nlohmann::json sc;
  try {
    sc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse: " << e.what() << "\n";
    return 2;
  }
  if (sc.contains("scenarios")) {
    std::cerr << "batch scenario files are run with the verify-all subcommand\n";
    return 2;
  }
  if (!task.empty()) {
    if (sc.contains("task") && sc.at("task") != task) {
      std::cerr << "scenario task '" << sc.at("task").get<std::string>()
                << "' does not match subcommand '" << task << "'\n";
      return 2;
    }
    sc["task"] = task;
    if (!mode.empty()) {
      if (sc.contains("mode") && sc.at("mode") != mode) {
        std::cerr << "scenario mode '" << sc.at("mode").get<std::string>()
                  << "' does not match subcommand mode '" << mode << "'\n";
        return 2;
      }
      sc["mode"] = mode;
    }
  }
  const aclab::RunOutcome outcome = aclab::run_scenario_json(sc, out_dir);
  (outcome.exit_code == 2 ? std::cerr : std::cout) << outcome.message << "\n";
  if (out_dir.empty() && outcome.exit_code != 2) std::cout << outcome.csv;
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic anti-concentration laboratory"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::string task;
  std::string mode;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    cmd->add_option("--out", out_dir, "output directory for result.csv / artifacts.json");
  };

  CLI::App* bound = app.add_subcommand("bound", "certified rho_S bound pipeline");
  add_common(bound);
  bound->callback([&] { task = "bound"; });

  CLI::App* selfdim = app.add_subcommand("selfdim", "self-translate dimension certificates");
  CLI::App* selfdim_verify = selfdim->add_subcommand("verify", "verify a certificate");
  add_common(selfdim_verify);
  selfdim_verify->callback([&] { task = "selfdim"; mode = "verify"; });
  CLI::App* selfdim_search = selfdim->add_subcommand("search", "search for a certificate");
  add_common(selfdim_search);
  selfdim_search->callback([&] { task = "selfdim"; mode = "search"; });
  selfdim->require_subcommand(1);

  CLI::App* mine = app.add_subcommand("mine", "structure mining");
  for (const std::string m : {"ap", "grid", "bad"}) {
    CLI::App* sub = mine->add_subcommand(m, "mine " + m);
    add_common(sub);
    sub->callback([&task, &mode, m] { task = "mine"; mode = m; });
  }
  mine->require_subcommand(1);

  CLI::App* baseline = app.add_subcommand("baseline", "forward baseline bounds");
  for (const std::string m : {"js", "forward1", "forward2"}) {
    CLI::App* sub = baseline->add_subcommand(m, "baseline " + m);
    add_common(sub);
    sub->callback([&task, &mode, m] { task = "baseline"; mode = m; });
  }
  baseline->require_subcommand(1);

  CLI::App* sweep = app.add_subcommand("sweep", "scaling sweeps");
  CLI::App* sweep_erdos = sweep->add_subcommand("erdos", "central binomial scaling");
  add_common(sweep_erdos);
  sweep_erdos->callback([&] { task = "sweep"; mode = "erdos"; });
  sweep->require_subcommand(1);

  CLI::App* verify_all = app.add_subcommand(
      "verify-all", "run a scenario or batch file, dispatching on its task field");
  add_common(verify_all);

  CLI11_PARSE(app, argc, argv);

  if (verify_all->parsed()) {
    std::ifstream in(scenario_path);
    if (!in) {
      std::cerr << "cannot open scenario file '" << scenario_path << "'\n";
      return 2;
    }
    nlohmann::json sc;
    try {
      sc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "parse: " << e.what() << "\n";
      return 2;
    }
    const aclab::RunOutcome outcome = aclab::run_batch_json(sc, out_dir, workers_from_env());
    (outcome.exit_code == 2 ? std::cerr : std::cout) << outcome.message << "\n";
    if (out_dir.empty() && outcome.exit_code != 2) std::cout << outcome.csv;
    return outcome.exit_code;
  }
  return run_with_expectation(scenario_path, out_dir, task, mode);
}
