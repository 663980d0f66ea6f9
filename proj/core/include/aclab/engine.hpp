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

#ifndef ACLAB_ENGINE_HPP_
#define ACLAB_ENGINE_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aclab/certificate.hpp"
#include "aclab/dist.hpp"
#include "aclab/rational.hpp"

namespace aclab {

// Decoupling inequality P(E(Y,Z)) <= sqrt(lambda) + 2 mu, where mu is the
// largest point mass of Y and lambda the largest P(E(y,Z) and E(y',Z)) over
// distinct y, y' in supp(Y). `holds` is decided exactly: trivially true when
// pE <= 2 mu, otherwise (pE - 2 mu)^2 <= lambda. lambda over an empty pair
// range (single-point support) is 0.
struct DecouplingCheck {
  Rat p_event;
  Rat mu;
  Rat lambda;
  bool holds = false;
};

DecouplingCheck decoupling_check(const Dist& law_y, const Dist& law_z,
                                 const std::function<bool(const Element&, const Element&)>& event);

// Contiguous intervals I_0 u ... u I_k covering {1..n} in index order, with
// each block's exact law and concentration.
struct PartitionResult {
  std::vector<std::pair<std::size_t, std::size_t>> intervals;  // 0-based, half-open
  std::vector<Dist> block_laws;
  std::vector<Rat> block_rhos;

  std::string intervals_to_string() const;  // 1-based "{1}, {2..10}" rendering
};

// Splits the walk so that rho_i <= p0^-1 lambda_i for every block. Requires
// 0 < lambda_i <= p0, rho <= prod lambda_i, and n >= k+1; violations raise
// PreconditionError naming the failed inequality before any work is done.
// Scans for the smallest l with rho(prefix l) >= lambda_0 >= rho(prefix l+1),
// emits I_0 = {1..l}, and recurses on the suffix.
PartitionResult contiguous_partition(const std::vector<Dist>& mus, const std::vector<Rat>& lambdas);

// lambda_i ~= rho^(2^i/(2^(k+1)-1)) as exact upper-rounded radicals, or
// nullopt when rho^(1/(2^(k+1)-1)) > p0 (tested exactly as rho > p0^(2^(k+1)-1)).
// After rounding, lambda_i <= p0 and prod lambda_i >= rho are re-verified
// exactly; rounding is retried with tighter precision as needed.
std::optional<std::vector<Rat>> default_lambdas(const Rat& rho, const Rat& p0, int k);

// The explicit-constant recursion behind the certified bound:
//   B_0(C; r0)        = C r0
//   B_k(C; r0..rk)    = C (sqrt(B_{k-1}(C; r1..rk)) + 2 r0)
// with every square root rounded up to a rational with denominator <= 10^12,
// so value >= the real B_k.
struct BoundLevel {
  int level = 0;           // i in B_i
  Rat rho;                 // the r_0 of this level
  Rat inner;               // B_{i-1} fed to the square root (level > 0)
  Rat sqrt_rounded;        // upper-rounded sqrt(inner) (level > 0)
  Rat value;               // B_i
};

struct CertifiedBound {
  Rat value;
  int k = 0;
  std::int64_t complexity = 1;
  std::vector<BoundLevel> trace;  // bottom level first
};

CertifiedBound certified_bound_B(std::int64_t complexity, const std::vector<Rat>& rhos);

// Full certified pipeline: verify the certificate, derive default lambdas,
// partition the walk, and run the bound recursion on the exact block
// concentrations. `exact` is rho_S of the walk law and `sound` must always
// come out true.
struct CertifiedRhoS {
  CertifiedBound bound;
  Rat exact;
  bool sound = false;
  Rat rho;
  Rat p0;
  std::vector<Rat> lambdas;
  PartitionResult partition;
};

CertifiedRhoS certified_rhoS(const std::vector<Dist>& mus, const SelfDimCertificate& cert,
                             const SetPredicate& s);

}  // namespace aclab

#endif  // ACLAB_ENGINE_HPP_
