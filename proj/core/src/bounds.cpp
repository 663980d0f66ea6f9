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

#include "aclab/bounds.hpp"

#include <algorithm>

namespace aclab {

namespace {

std::vector<Dist> sign_model(const std::vector<Element>& gs, const Group& grp) {
  if (gs.empty()) throw PreconditionError("sign model: empty step list");
  std::vector<Dist> mus;
  mus.reserve(gs.size());
  for (const Element& g : gs) {
    if (g == grp.identity()) {
      throw PreconditionError("sign model: step " + g.to_string() + " is the identity");
    }
    mus.push_back(Dist::uniform(grp, {g, grp.inv(g)}));
  }
  return mus;
}

std::optional<std::int64_t> min_torsion(const std::vector<Element>& gs, const Group& grp) {
  std::optional<std::int64_t> s;
  for (const Element& g : gs) {
    const auto t = grp.torsion_order(g);
    if (t && (!s || *t < *s)) s = t;
  }
  return s;
}

Rat inv_s_squared(const std::optional<std::int64_t>& s) {
  if (!s) return Rat(0);  // s = infinity, 1/s = 0 exactly
  return Rat(Int(1), Int(*s) * Int(*s));
}

}  // namespace

ScenarioReport js_bound_check(const std::vector<Element>& gs, const Group& grp) {
  const std::vector<Dist> mus = sign_model(gs, grp);
  ScenarioReport out;
  out.n = gs.size();
  out.torsion_s = min_torsion(gs, grp);
  out.p0 = p0_of(mus);
  out.rho = rho(walk_law(mus));
  out.baseline_sq = 9 * std::max(inv_s_squared(out.torsion_s),
                                 Rat(Int(1), Int(static_cast<long>(out.n))));
  out.holds = out.rho * out.rho <= out.baseline_sq;
  return out;
}

ScenarioReport forward1_check(const std::vector<Element>& gs, const SetPredicate& s,
                              const SelfDimCertificate& cert, const Group& grp) {
  const VerifyResult verified = verify_certificate(s, cert, grp);
  if (!verified.ok) {
    throw PreconditionError("forward1_check: certificate does not verify for S: " +
                            verified.to_string());
  }
  const std::vector<Dist> mus = sign_model(gs, grp);
  const std::size_t n = gs.size();
  const int k = cert.depth();
  const std::size_t blocks = static_cast<std::size_t>(k) + 1;
  if (n < blocks) {
    throw PreconditionError("forward1_check: n = " + std::to_string(n) + " < k+1 = " +
                            std::to_string(blocks));
  }

  ScenarioReport out;
  out.n = n;
  out.torsion_s = min_torsion(gs, grp);
  out.p0 = p0_of(mus);
  const Dist law = walk_law(mus);
  out.rho = rho(law);
  out.rho_s = rho_S(law, s);
  out.baseline_sq =
      9 * std::max(inv_s_squared(out.torsion_s), Rat(Int(1), Int(static_cast<long>(n))));

  // Equipartition with the larger blocks first.
  const std::size_t q = n / blocks;
  const std::size_t rem = n % blocks;
  std::vector<Rat> baselines;
  baselines.reserve(blocks);
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::int64_t len = static_cast<std::int64_t>(i < rem ? q + 1 : q);
    // JS baseline for this block: 3 max(1/s, 1/sqrt(len)), exact when the
    // torsion term dominates (len >= s^2), otherwise rounded up; then clamped
    // at the trivial bound 1 so the recursion preconditions hold.
    Rat baseline;
    if (out.torsion_s && Int(*out.torsion_s) * Int(*out.torsion_s) <= Int(len)) {
      baseline = make_rat(3, Int(*out.torsion_s));
    } else {
      baseline = 3 * nth_root_up_rel(Rat(Int(1), Int(len)), 2, 40);
    }
    baselines.push_back(std::min(Rat(1), baseline));
  }
  out.certified = certified_bound_B(cert.complexity(), baselines).value;
  out.holds = *out.rho_s <= *out.certified;
  return out;
}

DescriptiveReport forward2_describe(const std::vector<Dist>& mus, const SetPredicate& s,
                                    const SelfDimCertificate& cert, const Group& grp) {
  const VerifyResult verified = verify_certificate(s, cert, grp);
  if (!verified.ok) {
    throw PreconditionError("forward2_describe: certificate does not verify for S: " +
                            verified.to_string());
  }
  if (mus.empty()) throw PreconditionError("forward2_describe: empty step list");

  DescriptiveReport out;
  out.n = mus.size();
  out.k = cert.depth();
  out.p0 = p0_of(mus);

  // s = min over steps of the largest torsion order among quotients a a'^-1
  // of two support points; a step with singleton support has no such pair.
  bool any_infinite = false;
  std::optional<std::int64_t> s_min;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const auto entries = mus[i].sorted_entries();
    if (entries.size() < 2) {
      throw PreconditionError("forward2_describe: step " + std::to_string(i + 1) +
                              " has a single support point, no quotient pair exists");
    }
    std::optional<std::int64_t> best;  // nullopt once an infinite-order pair is seen
    bool best_infinite = false;
    for (std::size_t a = 0; a < entries.size() && !best_infinite; ++a) {
      for (std::size_t b = 0; b < entries.size() && !best_infinite; ++b) {
        if (a == b) continue;
        const auto t = grp.torsion_order(grp.mul(entries[a].first, grp.inv(entries[b].first)));
        if (!t) {
          best_infinite = true;
        } else if (!best || *t > *best) {
          best = t;
        }
      }
    }
    if (best_infinite) {
      any_infinite = true;
      continue;  // does not constrain the minimum
    }
    if (!s_min || *best < *s_min) s_min = best;
  }
  if (!s_min && any_infinite) {
    out.pair_order_s = std::nullopt;  // every step admits an infinite-order pair
  } else {
    out.pair_order_s = s_min;
  }

  const Dist law = walk_law(mus);
  out.rho = rho(law);
  out.rho_s = rho_S(law, s);

  const std::size_t blocks = static_cast<std::size_t>(out.k) + 1;
  if (out.n >= blocks) {
    const std::size_t q = out.n / blocks;
    const std::size_t rem = out.n % blocks;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < blocks; ++i) {
      const std::size_t len = i < rem ? q + 1 : q;
      std::vector<Dist> block(mus.begin() + begin, mus.begin() + begin + len);
      out.block_rhos.push_back(rho(walk_law(block)));
      begin += len;
    }
  }
  return out;
}

Rat inverse_exponent(int k, const Rat& a) {
  if (k < 0) throw PreconditionError("inverse_exponent: k < 0");
  if (a <= 0) throw PreconditionError("inverse_exponent: A <= 0");
  const unsigned long b = (1ul << (k + 1)) - 1;
  return Rat(static_cast<unsigned long>(b)) * (a + 1) + 1;
}

Rat inverse_constant_K(std::int64_t complexity, int k) {
  if (complexity < 1) throw PreconditionError("inverse_constant_K: C < 1");
  if (k < 0) throw PreconditionError("inverse_constant_K: k < 0");
  const Int denom(1000000);
  Rat kk(complexity);
  for (int j = 1; j <= k; ++j) {
    kk = Rat(complexity) * (sqrt_up(kk, denom) + 2);
  }
  if (k == 0) return kk;
  return Rat(3, 2) * kk;
}

Rat rho_from_rhoS(const Rat& rho_s, const Rat& p0, int k, std::int64_t complexity) {
  if (rho_s == 0) return Rat(0);
  if (rho_s < 0 || rho_s > 1) {
    throw PreconditionError("rho_from_rhoS: rho_S = " + rat_to_string(rho_s) + " outside [0, 1]");
  }
  if (p0 <= 0 || p0 > 1) {
    throw PreconditionError("rho_from_rhoS: p0 = " + rat_to_string(p0) + " outside (0, 1]");
  }
  const Rat k_const = inverse_constant_K(complexity, k);
  const unsigned long b = (1ul << (k + 1)) - 1;
  return pow_rat(rho_s * p0 / k_const, b);
}

std::vector<ErdosRow> erdos_scaling_sweep(const std::vector<std::int64_t>& n_list) {
  const Group z = Group::free_abelian(1);
  const Dist step = Dist::uniform(z, {Element({1}), Element({-1})});
  std::vector<ErdosRow> out;
  out.reserve(n_list.size());
  for (const std::int64_t n : n_list) {
    if (n < 2 || n % 2 != 0) {
      throw PreconditionError("erdos_scaling_sweep: n = " + std::to_string(n) +
                              " is not an even integer >= 2");
    }
    const std::vector<Dist> mus(static_cast<std::size_t>(n), step);
    ErdosRow row;
    row.n = n;
    row.rho = rho(walk_law(mus));
    row.rho_sq_n = row.rho * row.rho * Rat(static_cast<unsigned long>(n));
    row.holds = Rat(1, 4) <= row.rho_sq_n && row.rho_sq_n <= 1;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace aclab
