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

#include "aclab/scenario.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"

using namespace aclab;
using namespace aclab::testing;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

nlohmann::json ten_coin_partition_scenario() {
  nlohmann::json steps = nlohmann::json::array();
  for (int i = 0; i < 10; ++i) {
    steps.push_back(nlohmann::json::parse(R"({"entries": [[[0], "1/2"], [[1], "1/2"]]})"));
  }
  return nlohmann::json{{"task", "bound"},
                        {"seed", 1},
                        {"group", "Z^1"},
                        {"steps", steps},
                        {"lambdas", {"1/2", "1/2"}}};
}

// Nine fixed generic +-v steps in Z^2 with a sign-flip parallelogram target
// and an inline depth-2 complexity-1 certificate.
nlohmann::json generic_bound_scenario() {
  const Group z2 = Group::free_abelian(2);
  std::vector<Element> vs;
  Rng rng(903);
  for (int i = 0; i < 9; ++i) {
    vs.push_back(Element({rng.uniform(1, 400) * 3 + 1, rng.uniform(1, 400) * 7 + 2}));
  }
  Element base = z2.identity();
  for (const Element& v : vs) base = z2.mul(base, v);
  const Element p1 = z2.mul(base, z2.pow(z2.inv(vs[0]), 2));
  const Element p2 = z2.mul(base, z2.pow(z2.inv(vs[1]), 2));
  const Element p3 = z2.mul(p1, z2.pow(z2.inv(vs[1]), 2));
  const std::vector<Element> set = {base, p1, p2, p3};

  nlohmann::json gs = nlohmann::json::array();
  for (const Element& v : vs) gs.push_back(element_to_json(v, z2));
  nlohmann::json set_json = nlohmann::json::array();
  for (const Element& e : set) set_json.push_back(element_to_json(e, z2));

  const nlohmann::json leaf{{"leaf", 1}};
  const nlohmann::json inner{
      {"node", {{"C", 1}, {"parts", nlohmann::json::array({set_json})}, {"child", leaf}}}};
  const nlohmann::json cert{
      {"node", {{"C", 1}, {"parts", nlohmann::json::array({set_json})}, {"child", inner}}}};

  return nlohmann::json{{"task", "bound"},
                        {"seed", 7},
                        {"group", "Z^2"},
                        {"steps", {{"model", "signs"}, {"gs", gs}}},
                        {"set", set_json},
                        {"certificate", cert}};
}

}  // namespace

TEST_CASE("cli-harness: partition probe reproduces the ten-step example") {
  const RunOutcome out = run_scenario_json(ten_coin_partition_scenario(), "");
  CHECK(out.exit_code == 0);
  CHECK(out.csv.find("{1}, {2..10}") != std::string::npos);
  CHECK(out.csv.find("63/256") != std::string::npos);  // 126/512 in lowest terms
  CHECK(out.artifacts.at("result").at("holds").get<bool>());
}

TEST_CASE("cli-harness: certified bound scenario is sound end to end") {
  const RunOutcome out = run_scenario_json(generic_bound_scenario(), "");
  CHECK(out.exit_code == 0);
  CHECK(out.csv.find("sound") != std::string::npos);
  CHECK(out.artifacts.at("result").at("sound").get<bool>());
  CHECK(out.artifacts.at("result").at("exact").get<std::string>() == "1/128");  // 4/512
}

TEST_CASE("cli-harness: empty set scenario exits zero with rho_S = 0") {
  nlohmann::json sc = generic_bound_scenario();
  sc["set"] = nlohmann::json::array();
  sc["certificate"] = {{"leaf", 1}};
  const RunOutcome out = run_scenario_json(sc, "");
  CHECK(out.exit_code == 0);
  CHECK(out.artifacts.at("result").at("exact").get<std::string>() == "0");
}

TEST_CASE("cli-harness: unpartitionable scenarios exit 2 naming the inequality") {
  const nlohmann::json sc{
      {"task", "bound"},
      {"seed", 3},
      {"group", "Z^1"},
      {"steps", nlohmann::json::array(
                    {nlohmann::json::parse(R"({"entries": [[[0], "3/4"], [[1], "1/4"]]})")})},
      {"set", nlohmann::json::array({nlohmann::json::array({0})})},
      {"certificate", {{"leaf", 1}}}};
  const RunOutcome out = run_scenario_json(sc, "");
  CHECK(out.exit_code == 2);
  CHECK(out.message.find("rho^{1/(2^{k+1}-1)} > p0") != std::string::npos);
}

TEST_CASE("cli-harness: lambda overrides must match the certificate depth") {
  nlohmann::json sc = generic_bound_scenario();
  sc["lambdas"] = {"1/2"};  // depth-2 certificate needs three levels
  const RunOutcome out = run_scenario_json(sc, "");
  CHECK(out.exit_code == 2);
  CHECK(out.message.find("certificate depth") != std::string::npos);
}

TEST_CASE("cli-harness: selfdim verify and search tasks") {
  const nlohmann::json verify_sc{
      {"task", "selfdim"},
      {"mode", "verify"},
      {"group", "Z^1"},
      {"set", nlohmann::json::array({nlohmann::json::array({3})})},
      {"certificate", {{"leaf", 1}}}};
  CHECK(run_scenario_json(verify_sc, "").exit_code == 0);

  nlohmann::json bad = verify_sc;
  bad["set"] = nlohmann::json::parse("[[3], [4]]");
  const RunOutcome failed = run_scenario_json(bad, "");
  CHECK(failed.exit_code == 1);

  const nlohmann::json search_sc{{"task", "selfdim"},
                                 {"mode", "search"},
                                 {"group", "Z^1"},
                                 {"set", nlohmann::json::parse("[[0], [1], [2], [3]]")},
                                 {"C", 1},
                                 {"k_max", 3}};
  const RunOutcome found = run_scenario_json(search_sc, "");
  CHECK(found.exit_code == 0);
  CHECK(found.artifacts.at("result").at("k").get<int>() == 3);
}

TEST_CASE("cli-harness: mine tasks produce verified witnesses") {
  const nlohmann::json ap_sc{{"task", "mine"},
                             {"mode", "ap"},
                             {"group", "Z^1"},
                             {"set", nlohmann::json::parse("[[1], [2], [3], [5]]")},
                             {"m", 3},
                             {"cap", 10}};
  const RunOutcome ap = run_scenario_json(ap_sc, "");
  CHECK(ap.exit_code == 0);
  CHECK(ap.artifacts.at("result").at("found").get<bool>());
  CHECK(ap.artifacts.at("result").at("max_ap_length").get<int>() == 3);

  const nlohmann::json grid_sc{{"task", "mine"},
                               {"mode", "grid"},
                               {"group", "Z^1"},
                               {"set", nlohmann::json::parse("[[0], [1], [2], [3], [4]]")},
                               {"r", 2},
                               {"C", 2}};
  const RunOutcome grid = run_scenario_json(grid_sc, "");
  CHECK(grid.exit_code == 0);
  CHECK(grid.artifacts.at("result").at("found").get<bool>());

  const nlohmann::json bad_sc{{"task", "mine"},
                              {"mode", "bad"},
                              {"group", "Z^1"},
                              {"set", nlohmann::json::parse("[[0], [1], [2]]")},
                              {"t", 2}};
  const RunOutcome bad = run_scenario_json(bad_sc, "");
  CHECK(bad.exit_code == 0);
  CHECK(bad.artifacts.at("result").at("count").get<int>() == 2);
}

TEST_CASE("cli-harness: baseline and sweep tasks") {
  const nlohmann::json js_sc{{"task", "baseline"},
                             {"mode", "js"},
                             {"group", "Z^1"},
                             {"gs", nlohmann::json::parse("[[1], [1], [1], [1]]")}};
  const RunOutcome js = run_scenario_json(js_sc, "");
  CHECK(js.exit_code == 0);
  CHECK(js.csv.find("3/8") != std::string::npos);

  const nlohmann::json sweep_sc{{"task", "sweep"}, {"mode", "erdos"}, {"n_list", {4, 6, 8}}};
  const RunOutcome sweep = run_scenario_json(sweep_sc, "");
  CHECK(sweep.exit_code == 0);
  CHECK(sweep.csv.find("3/8") != std::string::npos);
}

TEST_CASE("cli-harness: forward2 is descriptive output without a holds column") {
  nlohmann::json steps = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    steps.push_back(nlohmann::json::parse(R"({"entries": [[[0], "1/3"], [[1], "2/3"]]})"));
  }
  const nlohmann::json sc{{"task", "baseline"},
                          {"mode", "forward2"},
                          {"group", "Z^1"},
                          {"steps", steps},
                          {"set", nlohmann::json::parse("[[2]]")},
                          {"certificate", {{"leaf", 1}}}};
  const RunOutcome out = run_scenario_json(sc, "");
  CHECK(out.exit_code == 0);
  CHECK(out.csv.find("holds") == std::string::npos);
  CHECK(out.csv.find("n_rate_approx") != std::string::npos);
}

TEST_CASE("cli-harness: convex polygon generator is deterministic and convex") {
  const auto a = gen_convex_polygon(99, 20);
  const auto b = gen_convex_polygon(99, 20);
  CHECK(a == b);
  CHECK(a.size() == 20);
  const auto c = gen_convex_polygon(100, 20);
  CHECK(a != c);
  CHECK_THROWS_AS(gen_convex_polygon(1, 3), PreconditionError);
  CHECK_THROWS_AS(gen_convex_polygon(1, 52), PreconditionError);

  const nlohmann::json sc{{"task", "mine"},
                          {"mode", "bad"},
                          {"group", "Z^2"},
                          {"seed", 5},
                          {"set", {{"generator", "convex-polygon"}, {"vertices", 16}}},
                          {"t", 3}};
  const RunOutcome out = run_scenario_json(sc, "");
  CHECK(out.exit_code == 0);
  CHECK(out.artifacts.at("result").at("count").get<int>() == 0);  // overlap <= 2 everywhere
  CHECK(out.artifacts.at("scenario").at("set").size() == 16);      // generated set echoed
}

TEST_CASE("cli-harness: identical scenario and seed give byte-identical artifacts") {
  const std::filesystem::path base = std::filesystem::temp_directory_path() / "aclab_repro";
  std::filesystem::remove_all(base);
  const nlohmann::json sc = generic_bound_scenario();
  const RunOutcome first = run_scenario_json(sc, (base / "a").string());
  const RunOutcome second = run_scenario_json(sc, (base / "b").string());
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  CHECK(slurp(base / "a" / "result.csv") == slurp(base / "b" / "result.csv"));
  CHECK(slurp(base / "a" / "artifacts.json") == slurp(base / "b" / "artifacts.json"));
  CHECK(!slurp(base / "a" / "result.csv").empty());
  std::filesystem::remove_all(base);
}

TEST_CASE("cli-harness: batches aggregate exit codes") {
  nlohmann::json batch{{"scenarios", nlohmann::json::array()}};
  batch["scenarios"].push_back(ten_coin_partition_scenario());
  nlohmann::json broken = ten_coin_partition_scenario();
  broken["lambdas"] = {"3/4", "1/2"};  // lambda > p0
  batch["scenarios"].push_back(broken);

  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "aclab_batch";
  std::filesystem::remove_all(dir);
  const RunOutcome out = run_batch_json(batch, dir.string(), 2);
  CHECK(out.exit_code == 2);
  CHECK(std::filesystem::exists(dir / "summary.csv"));
  CHECK(std::filesystem::exists(dir / "scenario_000" / "result.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli-harness: the installed binary honors the exit-code contract") {
  const char* binary = std::getenv("ACLAB_CLI_BINARY");
  if (!binary) return;  // only wired up under ctest
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "aclab_cli";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);

  const auto run = [&](const nlohmann::json& sc, const std::string& args) {
    const std::filesystem::path file = dir / "scenario.json";
    std::ofstream(file) << sc.dump();
    const std::string cmd = std::string(binary) + " " + args + " --scenario " + file.string() +
                            " --out " + (dir / "out").string() + " > " +
                            (dir / "stdout.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };

  CHECK(run(ten_coin_partition_scenario(), "bound") == 0);
  CHECK(std::filesystem::exists(dir / "out" / "result.csv"));
  CHECK(std::filesystem::exists(dir / "out" / "artifacts.json"));

  nlohmann::json broken = ten_coin_partition_scenario();
  broken["lambdas"] = {"3/4", "1/2"};
  CHECK(run(broken, "bound") == 2);

  // Task mismatch between subcommand and scenario.
  CHECK(run(ten_coin_partition_scenario(), "sweep erdos") == 2);
  // verify-all dispatches on the embedded task field.
  CHECK(run(ten_coin_partition_scenario(), "verify-all") == 0);

  std::filesystem::remove_all(dir);
}
