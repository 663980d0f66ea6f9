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

#ifndef ACLAB_SCENARIO_HPP_
#define ACLAB_SCENARIO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "aclab/group.hpp"
#include "json.hpp"

namespace aclab {

// Deterministic splitmix64 stream; identical across platforms, so scenario
// artifacts are byte-identical for identical (scenario, seed).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [lo, hi] by rejection; lo <= hi.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

// Seeded strictly convex lattice polygon with the requested (even, in
// [4, 50]) number of vertices: pairwise non-parallel upper-half-plane edge
// vectors plus their negatives, angle-sorted and prefix-summed.
std::vector<Element> gen_convex_polygon(std::uint64_t seed, int vertices);

struct RunOutcome {
  // 0: all holds/sound flags true. 1: some checked flag false (for bound and
  // baseline tasks this is the soundness-violation signal). 2: precondition
  // or parse error.
  int exit_code = 0;
  std::string message;
  nlohmann::json artifacts;
  std::string csv;
};

// Runs one scenario. When out_dir is nonempty, writes result.csv and
// artifacts.json into it (creating directories as needed).
RunOutcome run_scenario_json(const nlohmann::json& scenario, const std::string& out_dir);
RunOutcome run_scenario_file(const std::string& path, const std::string& out_dir);

// A single scenario object, or {"scenarios": [...]} run as a batch with
// per-scenario subdirectories and a summary.csv. Batch exit code: 1 if any
// scenario reported 1, else 2 if any reported 2, else 0.
RunOutcome run_batch_json(const nlohmann::json& j, const std::string& out_dir, int workers);

}  // namespace aclab

#endif  // ACLAB_SCENARIO_HPP_
