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

#ifndef ACLAB_MINER_HPP_
#define ACLAB_MINER_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "aclab/dist.hpp"
#include "aclab/group.hpp"

namespace aclab {

// Arithmetic progression {h, gh, ..., g^(m-1) h} inside S, all m points
// distinct.
struct APWitness {
  Element g;
  Element h;
  std::int64_t length = 0;
};

std::vector<Element> ap_points(const APWitness& w, const Group& grp);

// Factor sets A_1, ..., A_r, each of size C, with every ordered product
// a_1 ... a_r inside S.
struct GridWitness {
  std::vector<std::vector<Element>> factors;
};

struct GridSearch {
  std::optional<GridWitness> witness;
  std::uint64_t visited_nodes = 0;  // partial assignments expanded
  bool exhausted = false;            // absence is certified over the whole space
};

// First witness in canonical order, or nullopt. Candidate steps g are the
// quotients s h^-1 that send the base point back into S.
std::optional<APWitness> find_ap(const SetPredicate& s, std::int64_t m, const Group& grp);

// Largest m <= cap admitting a witness; distinctness keeps torsion cycles
// from inflating the answer. Returns 0 for the empty set.
std::int64_t max_ap_length(const SetPredicate& s, std::int64_t cap, const Group& grp);

// Backtracking search for a grid witness with prefix-product pruning, over
// the normalized space where A_1 is a subset of S and every later factor
// contains the identity (any grid can be translated into this form without
// changing its products). Guard: C^r <= 10^6.
GridSearch find_grid(const SetPredicate& s, std::int64_t r, std::int64_t c, const Group& grp);

// Exact number of tuples in A_1 x ... x A_{r+1} whose ordered product lies
// in S. Guard: prod |A_i| <= 10^7.
std::uint64_t count_grid_edges(const SetPredicate& s, const std::vector<std::vector<Element>>& a,
                               const Group& grp);

// Finite Bad-set analog {g != id : |S n gS| >= t}, computed over the
// effective difference family.
std::vector<Element> bad_set_finite(const SetPredicate& s, std::int64_t t, const Group& grp);

// Largest |S n gS| over g != id (0 for |S| <= 1 sets).
std::int64_t max_translate_overlap(const SetPredicate& s, const Group& grp);

}  // namespace aclab

#endif  // ACLAB_MINER_HPP_
