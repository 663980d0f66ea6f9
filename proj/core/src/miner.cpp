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

#include "aclab/miner.hpp"

#include <algorithm>
#include <functional>

#include "aclab/certificate.hpp"

namespace aclab {

std::vector<Element> ap_points(const APWitness& w, const Group& grp) {
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(w.length));
  Element cur = w.h;
  for (std::int64_t i = 0; i < w.length; ++i) {
    out.push_back(cur);
    cur = grp.mul(w.g, cur);
  }
  return out;
}

namespace {

// Longest run h, gh, g^2 h, ... of distinct points staying in S, capped.
std::int64_t run_length(const SetPredicate& s, const Element& g, const Element& h,
                        std::int64_t cap, const Group& grp) {
  ElementSet seen;
  Element cur = h;
  std::int64_t len = 0;
  while (len < cap && s.contains(cur) && seen.insert(cur).second) {
    ++len;
    cur = grp.mul(g, cur);
  }
  return len;
}

std::vector<Element> step_candidates(const SetPredicate& s, const Element& h, const Group& grp) {
  const Element hinv = grp.inv(h);
  std::vector<Element> out;
  out.reserve(s.size());
  for (const Element& t : s.sorted_elements()) out.push_back(grp.mul(t, hinv));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::optional<APWitness> find_ap(const SetPredicate& s, std::int64_t m, const Group& grp) {
  if (m < 2) throw PreconditionError("find_ap: m = " + std::to_string(m) + " < 2");
  for (const Element& h : s.sorted_elements()) {
    for (const Element& g : step_candidates(s, h, grp)) {
      if (run_length(s, g, h, m, grp) >= m) return APWitness{g, h, m};
    }
  }
  return std::nullopt;
}

std::int64_t max_ap_length(const SetPredicate& s, std::int64_t cap, const Group& grp) {
  if (cap < 1) throw PreconditionError("max_ap_length: cap < 1");
  if (s.size() == 0) return 0;
  std::int64_t best = 1;
  for (const Element& h : s.sorted_elements()) {
    for (const Element& g : step_candidates(s, h, grp)) {
      best = std::max(best, run_length(s, g, h, cap, grp));
      if (best == cap) return best;
    }
  }
  return best;
}

namespace {

struct GridDfs {
  const SetPredicate& s;
  const Group& grp;
  std::int64_t r;
  std::int64_t c;
  std::vector<Element> sorted_s;
  GridSearch result;

  // prefix: all products of one element per already-fixed factor.
  bool extend(std::int64_t level, std::vector<std::vector<Element>>& factors,
              const std::vector<Element>& prefix) {
    ++result.visited_nodes;
    if (level == r) {
      result.witness = GridWitness{factors};
      return true;
    }
    // Every candidate must keep all prefix products inside S once the
    // remaining factors are filled with the identity, so the candidate set is
    // the intersection of the translated copies p^-1 S.
    std::vector<Element> candidates;
    const Element id = grp.identity();
    for (const Element& t : sorted_s) {
      const Element cand = grp.mul(grp.inv(prefix.front()), t);
      bool ok = true;
      for (const Element& p : prefix) {
        if (!s.contains(grp.mul(p, cand))) {
          ok = false;
          break;
        }
      }
      if (ok) candidates.push_back(cand);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    // Normalized factors beyond the first contain the identity.
    if (!std::binary_search(candidates.begin(), candidates.end(), id)) return false;
    std::erase(candidates, id);
    const std::int64_t need = c - 1;
    if (static_cast<std::int64_t>(candidates.size()) < need) return false;

    std::vector<std::size_t> pick(static_cast<std::size_t>(need));
    return choose_combination(level, factors, prefix, candidates, pick, 0, 0);
  }

  bool choose_combination(std::int64_t level, std::vector<std::vector<Element>>& factors,
                          const std::vector<Element>& prefix,
                          const std::vector<Element>& candidates, std::vector<std::size_t>& pick,
                          std::size_t depth, std::size_t start) {
    if (depth == pick.size()) {
      std::vector<Element> factor = {grp.identity()};
      for (std::size_t idx : pick) factor.push_back(candidates[idx]);
      std::sort(factor.begin(), factor.end());
      std::vector<Element> next_prefix;
      next_prefix.reserve(prefix.size() * factor.size());
      for (const Element& p : prefix) {
        for (const Element& a : factor) next_prefix.push_back(grp.mul(p, a));
      }
      std::sort(next_prefix.begin(), next_prefix.end());
      next_prefix.erase(std::unique(next_prefix.begin(), next_prefix.end()), next_prefix.end());
      factors.push_back(std::move(factor));
      if (extend(level + 1, factors, next_prefix)) return true;
      factors.pop_back();
      return false;
    }
    for (std::size_t i = start; i + (pick.size() - depth) <= candidates.size(); ++i) {
      pick[depth] = i;
      ++result.visited_nodes;
      if (choose_combination(level, factors, prefix, candidates, pick, depth + 1, i + 1))
        return true;
    }
    return false;
  }
};

}  // namespace

GridSearch find_grid(const SetPredicate& s, std::int64_t r, std::int64_t c, const Group& grp) {
  if (r < 1) throw PreconditionError("find_grid: r = " + std::to_string(r) + " < 1");
  if (c < 2) throw PreconditionError("find_grid: C = " + std::to_string(c) + " < 2");
  double space = 1;
  for (std::int64_t i = 0; i < r; ++i) space *= static_cast<double>(c);
  if (space > 1e6) {
    throw PreconditionError("find_grid: C^r = " + std::to_string(space) + " > 10^6 (guard)");
  }

  GridDfs dfs{s, grp, r, c, s.sorted_elements(), {}};
  std::sort(dfs.sorted_s.begin(), dfs.sorted_s.end());

  // First factor: C-subsets of S itself.
  const std::size_t n = dfs.sorted_s.size();
  if (static_cast<std::int64_t>(n) >= c) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(c));
    // Iterate lexicographic combinations of indices into sorted_s.
    std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t depth,
                                                               std::size_t start) -> bool {
      if (depth == pick.size()) {
        std::vector<Element> factor;
        factor.reserve(pick.size());
        for (std::size_t idx : pick) factor.push_back(dfs.sorted_s[idx]);
        std::vector<std::vector<Element>> factors = {factor};
        return dfs.extend(1, factors, factor);
      }
      for (std::size_t i = start; i + (pick.size() - depth) <= n; ++i) {
        pick[depth] = i;
        ++dfs.result.visited_nodes;
        if (choose(depth + 1, i + 1)) return true;
      }
      return false;
    };
    choose(0, 0);
  }
  dfs.result.exhausted = !dfs.result.witness.has_value();
  return dfs.result;
}

std::uint64_t count_grid_edges(const SetPredicate& s, const std::vector<std::vector<Element>>& a,
                               const Group& grp) {
  if (a.empty()) throw PreconditionError("count_grid_edges: empty factor list");
  double space = 1;
  for (const auto& factor : a) {
    if (factor.empty()) throw PreconditionError("count_grid_edges: empty factor set");
    space *= static_cast<double>(factor.size());
  }
  if (space > 1e7) throw PreconditionError("count_grid_edges: product of sizes exceeds 10^7");

  std::uint64_t count = 0;
  std::function<void(std::size_t, const Element&)> walk = [&](std::size_t level,
                                                              const Element& prefix) {
    if (level == a.size()) {
      if (s.contains(prefix)) ++count;
      return;
    }
    for (const Element& e : a[level]) walk(level + 1, grp.mul(prefix, e));
  };
  walk(0, grp.identity());
  return count;
}

std::vector<Element> bad_set_finite(const SetPredicate& s, std::int64_t t, const Group& grp) {
  if (t < 1) throw PreconditionError("bad_set_finite: t < 1");
  const std::vector<Element> elems = s.sorted_elements();
  std::vector<Element> out;
  for (const Element& g : translate_family(elems, grp)) {
    const Element ginv = grp.inv(g);
    std::int64_t overlap = 0;
    for (const Element& x : elems) {
      if (s.contains(grp.mul(ginv, x))) ++overlap;
    }
    if (overlap >= t) out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t max_translate_overlap(const SetPredicate& s, const Group& grp) {
  const std::vector<Element> elems = s.sorted_elements();
  std::int64_t best = 0;
  for (const Element& g : translate_family(elems, grp)) {
    const Element ginv = grp.inv(g);
    std::int64_t overlap = 0;
    for (const Element& x : elems) {
      if (s.contains(grp.mul(ginv, x))) ++overlap;
    }
    best = std::max(best, overlap);
  }
  return best;
}

}  // namespace aclab
