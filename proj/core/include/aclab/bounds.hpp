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

#ifndef ACLAB_BOUNDS_HPP_
#define ACLAB_BOUNDS_HPP_

#include <optional>
#include <vector>

#include "aclab/certificate.hpp"
#include "aclab/dist.hpp"
#include "aclab/engine.hpp"

namespace aclab {

// One row of a baseline / forward-bound experiment. All probabilities are
// exact; the sign-model baseline 3*max(1/s, 1/sqrt(n)) is carried as its
// exact square so comparisons stay rational. Flags are recomputed from the
// exact fields, never cached.
struct ScenarioReport {
  std::size_t n = 0;
  std::optional<std::int64_t> torsion_s;  // min torsion order over steps; nullopt = infinite
  Rat p0;
  Rat rho;
  std::optional<Rat> rho_s;
  Rat baseline_sq;                         // (3 max(1/s, 1/sqrt(n)))^2, exact
  std::optional<Rat> certified;            // upper-rounded certified bound, when computed
  bool holds = false;
};

// Signed-product model X = prod g_i^{e_i} with independent fair signs.
// Checks rho <= 3 max(1/s, 1/sqrt(n)) exactly via rho^2 vs 9 max(1/s^2, 1/n).
ScenarioReport js_bound_check(const std::vector<Element>& gs, const Group& grp);

// Same sign model bootstrapped through a verified (k, C) certificate: the
// walk is equipartitioned into k+1 contiguous blocks (larger blocks first),
// each block concentration is replaced by its own sign-model baseline
// 3 max(1/s, 1/sqrt(|I_i|)) rounded up and clamped at 1, and the bound
// recursion runs on those baselines. holds = exact rho_S <= certified bound.
ScenarioReport forward1_check(const std::vector<Element>& gs, const SetPredicate& s,
                              const SelfDimCertificate& cert, const Group& grp);

// Descriptive counterpart of forward1_check for arbitrary step distributions
// under the pair-order model: s is the min over steps of the best order of a
// quotient of two support points. The asymptotic rate here carries no
// explicit constant, so the report has no holds flag and nothing is
// certified; it exists for side-by-side CSV output only.
struct DescriptiveReport {
  std::size_t n = 0;
  std::optional<std::int64_t> pair_order_s;  // nullopt = infinite
  int k = 0;
  Rat p0;
  Rat rho;
  Rat rho_s;
  std::vector<Rat> block_rhos;  // equipartition blocks, larger first
};

DescriptiveReport forward2_describe(const std::vector<Dist>& mus, const SetPredicate& s,
                                    const SelfDimCertificate& cert, const Group& grp);

// (2^(k+1) - 1)(A + 1) + 1: the exponent an inverse theorem for rho must be
// invoked with to cover rho_S >= n^-A.
Rat inverse_exponent(int k, const Rat& a);

// The explicit constant K_{C,k} used to invert the certified bound:
// K_{C,0} = C and K_{C,k} = (3/2) C (sqrt(K_{C,k-1}) + 2) for k >= 1, square
// roots rounded up to denominator 10^6. The 3/2 factor absorbs the directed
// roundings of the forward pipeline.
Rat inverse_constant_K(std::int64_t complexity, int k);

// Lower bound on rho implied by rho_S: (rho_S p0 / K_{C,k})^(2^(k+1)-1),
// exact once K is fixed. Returns 0 when rho_S = 0.
Rat rho_from_rhoS(const Rat& rho_s, const Rat& p0, int k, std::int64_t complexity);

struct ErdosRow {
  std::int64_t n = 0;
  Rat rho;        // central binomial mass, exact
  Rat rho_sq_n;   // rho^2 n, the exact square of rho sqrt(n)
  bool holds = false;  // 1/4 <= rho^2 n <= 1
};

// Fair +-1 walk on Z for each even n in the list; rejects odd n.
std::vector<ErdosRow> erdos_scaling_sweep(const std::vector<std::int64_t>& n_list);

}  // namespace aclab

#endif  // ACLAB_BOUNDS_HPP_
