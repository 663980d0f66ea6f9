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

#include "aclab/engine.hpp"

#include <algorithm>
#include <sstream>

namespace aclab {

namespace {

const Int kSqrtDenom("1000000000000");  // 10^12

}  // namespace

DecouplingCheck decoupling_check(
    const Dist& law_y, const Dist& law_z,
    const std::function<bool(const Element&, const Element&)>& event) {
  if (law_y.group() != law_z.group()) {
    throw PreconditionError("decoupling_check: group mismatch (" + law_y.group().to_string() +
                            " vs " + law_z.group().to_string() + ")");
  }
  DecouplingCheck out;
  out.mu = rho(law_y);
  const auto ys = law_y.sorted_entries();
  const auto zs = law_z.sorted_entries();

  out.p_event = 0;
  for (const auto& [y, py] : ys) {
    for (const auto& [z, pz] : zs) {
      if (event(y, z)) out.p_event += py * pz;
    }
  }

  out.lambda = 0;  // sup over an empty pair range
  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t j = i + 1; j < ys.size(); ++j) {
      Rat both = 0;
      for (const auto& [z, pz] : zs) {
        if (event(ys[i].first, z) && event(ys[j].first, z)) both += pz;
      }
      out.lambda = std::max(out.lambda, both);
    }
  }

  const Rat two_mu = 2 * out.mu;
  out.holds = out.p_event <= two_mu ||
              (out.p_event - two_mu) * (out.p_event - two_mu) <= out.lambda;
  return out;
}

std::string PartitionResult::intervals_to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (i) out << ", ";
    const auto [b, e] = intervals[i];
    if (e == b + 1) {
      out << "{" << b + 1 << "}";
    } else {
      out << "{" << b + 1 << ".." << e << "}";
    }
  }
  return out.str();
}

namespace {

void partition_rec(const std::vector<Dist>& mus, std::size_t begin,
                   const std::vector<Rat>& lambdas, std::size_t level, PartitionResult* out) {
  const std::size_t n = mus.size();
  if (level + 1 == lambdas.size()) {
    // Last block takes the rest; rho <= prod of remaining lambdas = lambda_k
    // <= p0^-1 lambda_k is inherited from the scan invariant.
    Dist law = mus[begin];
    for (std::size_t i = begin + 1; i < n; ++i) law = convolve(law, mus[i]);
    out->intervals.emplace_back(begin, n);
    out->block_rhos.push_back(rho(law));
    out->block_laws.push_back(std::move(law));
    return;
  }
  const Rat& lambda0 = lambdas[level];
  Dist prev_law = mus[begin];
  Rat prev_rho = rho(prev_law);
  std::size_t ell = 0;  // block length
  for (std::size_t len = 1; begin + len < n; ++len) {
    const Dist next = convolve(prev_law, mus[begin + len]);
    const Rat next_rho = rho(next);
    if (prev_rho >= lambda0 && lambda0 >= next_rho) {
      ell = len;
      break;
    }
    prev_law = next;
    prev_rho = next_rho;
  }
  if (ell == 0) {
    // The scan invariant rho(prefix 1) >= lambda_0 >= rho(all) guarantees a
    // crossing before the suffix would become empty.
    throw std::logic_error("contiguous_partition: no crossing index found");
  }
  out->intervals.emplace_back(begin, begin + ell);
  out->block_rhos.push_back(prev_rho);
  out->block_laws.push_back(std::move(prev_law));
  partition_rec(mus, begin + ell, lambdas, level + 1, out);
}

}  // namespace

PartitionResult contiguous_partition(const std::vector<Dist>& mus,
                                     const std::vector<Rat>& lambdas) {
  if (mus.empty()) throw PreconditionError("contiguous_partition: empty step list");
  if (lambdas.empty()) throw PreconditionError("contiguous_partition: empty lambda list");
  const std::size_t n = mus.size();
  const std::size_t k_plus_1 = lambdas.size();
  if (n < k_plus_1) {
    throw PreconditionError("contiguous_partition: n = " + std::to_string(n) + " < k+1 = " +
                            std::to_string(k_plus_1) + " (blocks must be nonempty)");
  }
  const Rat p0 = p0_of(mus);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] <= 0) {
      throw PreconditionError("contiguous_partition: lambda_" + std::to_string(i) + " = " +
                              rat_to_string(lambdas[i]) + " <= 0");
    }
    if (lambdas[i] > p0) {
      throw PreconditionError("contiguous_partition: lambda_" + std::to_string(i) + " = " +
                              rat_to_string(lambdas[i]) + " > p0 = " + rat_to_string(p0));
    }
  }
  Rat prod = 1;
  for (const Rat& l : lambdas) prod *= l;
  const Rat walk_rho = rho(walk_law(mus));
  if (walk_rho > prod) {
    throw PreconditionError("contiguous_partition: rho = " + rat_to_string(walk_rho) +
                            " > prod(lambda) = " + rat_to_string(prod));
  }

  PartitionResult out;
  partition_rec(mus, 0, lambdas, 0, &out);
  return out;
}

std::optional<std::vector<Rat>> default_lambdas(const Rat& rho_value, const Rat& p0, int k) {
  if (rho_value <= 0 || rho_value > 1) {
    throw PreconditionError("default_lambdas: rho = " + rat_to_string(rho_value) +
                            " outside (0, 1]");
  }
  if (p0 <= 0 || p0 > 1) {
    throw PreconditionError("default_lambdas: p0 = " + rat_to_string(p0) + " outside (0, 1]");
  }
  if (k < 0) throw PreconditionError("default_lambdas: k < 0");
  const unsigned long b = (1ul << (k + 1)) - 1;  // 2^(k+1) - 1
  // rho^(1/b) <= p0, tested exactly.
  if (rho_value > pow_rat(p0, b)) return std::nullopt;

  for (unsigned rel_bits = 40;; rel_bits += 20) {
    std::vector<Rat> lambdas;
    lambdas.reserve(static_cast<std::size_t>(k) + 1);
    bool ok = true;
    for (int i = 0; i <= k && ok; ++i) {
      const Rat powered = pow_rat(rho_value, 1ul << i);  // rho^(2^i)
      Rat lam = nth_root_up_rel(powered, b, rel_bits);
      if (lam > p0) ok = false;  // upward rounding overshot the exact bound
      lambdas.push_back(std::move(lam));
    }
    if (!ok) continue;
    Rat prod = 1;
    for (const Rat& l : lambdas) prod *= l;
    if (prod < rho_value) continue;  // cannot happen with upward rounding; re-verify anyway
    return lambdas;
  }
}

CertifiedBound certified_bound_B(std::int64_t complexity, const std::vector<Rat>& rhos) {
  if (complexity < 1) throw PreconditionError("certified_bound_B: C < 1");
  if (rhos.empty()) throw PreconditionError("certified_bound_B: empty rho list");
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    if (rhos[i] < 0 || rhos[i] > 1) {
      throw PreconditionError("certified_bound_B: rho_" + std::to_string(i) + " = " +
                              rat_to_string(rhos[i]) + " outside [0, 1]");
    }
  }
  CertifiedBound out;
  out.k = static_cast<int>(rhos.size()) - 1;
  out.complexity = complexity;

  Rat value = complexity * rhos.back();
  out.trace.push_back({0, rhos.back(), Rat(0), Rat(0), value});
  for (int i = out.k - 1; i >= 0; --i) {
    BoundLevel level;
    level.level = out.k - i;
    level.rho = rhos[static_cast<std::size_t>(i)];
    level.inner = value;
    level.sqrt_rounded = sqrt_up(value, kSqrtDenom);
    value = complexity * (level.sqrt_rounded + 2 * level.rho);
    level.value = value;
    out.trace.push_back(std::move(level));
  }
  out.value = value;
  return out;
}

CertifiedRhoS certified_rhoS(const std::vector<Dist>& mus, const SelfDimCertificate& cert,
                             const SetPredicate& s) {
  if (mus.empty()) throw PreconditionError("certified_rhoS: empty step list");
  const Group& grp = mus.front().group();
  const VerifyResult verified = verify_certificate(s, cert, grp);
  if (!verified.ok) {
    throw PreconditionError("certified_rhoS: certificate does not verify for S: " +
                            verified.to_string());
  }

  CertifiedRhoS out;
  const Dist law = walk_law(mus);
  out.rho = rho(law);
  out.p0 = p0_of(mus);
  const int k = cert.depth();

  auto lambdas = default_lambdas(out.rho, out.p0, k);
  if (!lambdas) {
    const unsigned long b = (1ul << (k + 1)) - 1;
    throw PreconditionError(
        "certified_rhoS: unpartitionable, rho^{1/(2^{k+1}-1)} > p0 (rho = " +
        rat_to_string(out.rho) + ", p0 = " + rat_to_string(out.p0) + ", p0^" + std::to_string(b) +
        " = " + rat_to_string(pow_rat(out.p0, b)) + ")");
  }
  out.lambdas = std::move(*lambdas);
  out.partition = contiguous_partition(mus, out.lambdas);
  out.bound = certified_bound_B(cert.complexity(), out.partition.block_rhos);
  out.exact = rho_S(law, s);
  out.sound = out.exact <= out.bound.value;
  return out;
}

}  // namespace aclab
