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

#ifndef ACLAB_DIST_HPP_
#define ACLAB_DIST_HPP_

#include <functional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "aclab/group.hpp"
#include "aclab/rational.hpp"
#include "json.hpp"

namespace aclab {

using ElementSet = std::unordered_set<Element, ElementHash>;
using MassMap = std::unordered_map<Element, Rat, ElementHash>;

// A finitely supported exact probability distribution over group elements.
// Masses are strictly positive rationals summing exactly to 1; keys are
// canonical, so duplicate entries are merged on construction.
class Dist {
 public:
  Dist(Group group, const std::vector<std::pair<Element, Rat>>& entries);

  static Dist point_mass(const Group& group, const Element& e);
  static Dist uniform(const Group& group, const std::vector<Element>& support);

  const Group& group() const { return group_; }
  const MassMap& mass() const { return mass_; }
  Rat mass_of(const Element& e) const;
  std::size_t support_size() const { return mass_.size(); }
  Rat min_support_mass() const;
  std::vector<std::pair<Element, Rat>> sorted_entries() const;

 private:
  struct FromMap {};
  Dist(FromMap, Group group, MassMap mass)
      : group_(std::move(group)), mass_(std::move(mass)) {}
  friend Dist convolve(const Dist& d1, const Dist& d2);

  Group group_;
  MassMap mass_;
};

// A target set S. Either an explicit finite element set, or a pure callable
// membership test with a declared finite evaluation window; querying a
// callable outside its window is an error, which keeps membership total on
// every support it is legitimately used with.
class SetPredicate {
 public:
  static SetPredicate explicit_set(Group group, const std::vector<Element>& elems);
  static SetPredicate callable(Group group, std::function<bool(const Element&)> fn,
                               const std::vector<Element>& window);

  bool is_explicit() const { return fn_ == nullptr; }
  const Group& group() const { return group_; }
  // Membership for explicit sets, or the callable on its window. Throws
  // PreconditionError if a callable is queried outside the window.
  bool contains(const Element& e) const;
  const ElementSet& elements() const;  // explicit sets only
  std::size_t size() const;            // explicit sets only
  std::vector<Element> sorted_elements() const;

 private:
  SetPredicate(Group group, ElementSet elems, std::function<bool(const Element&)> fn)
      : group_(std::move(group)), elems_(std::move(elems)), fn_(std::move(fn)) {}

  Group group_;
  ElementSet elems_;  // the set itself, or the callable's window
  std::function<bool(const Element&)> fn_;
};

// Law of X*Y for independent X ~ d1, Y ~ d2 (same group).
Dist convolve(const Dist& d1, const Dist& d2);

// Law of the walk X = g_1 ... g_n: left-to-right fold of convolve in index
// order, which is the order that matters in nonabelian groups.
Dist walk_law(const std::vector<Dist>& mus);

// rho = max point mass of d.
Rat rho(const Dist& d);

// rho_S = P(X in S) for X ~ d.
Rat rho_S(const Dist& d, const SetPredicate& S);

// p0 = min over steps of the min support mass.
Rat p0_of(const std::vector<Dist>& mus);

nlohmann::json dist_to_json(const Dist& d);
Dist dist_from_json(const nlohmann::json& j);
Dist dist_from_json(const nlohmann::json& j, const Group& group);

}  // namespace aclab

#endif  // ACLAB_DIST_HPP_
