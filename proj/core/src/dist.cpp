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

#include "aclab/dist.hpp"

#include <algorithm>

namespace aclab {

Dist::Dist(Group group, const std::vector<std::pair<Element, Rat>>& entries)
    : group_(std::move(group)) {
  if (entries.empty()) throw PreconditionError("Dist: empty mass list");
  Rat total = 0;
  for (const auto& [e, p] : entries) {
    group_.require(e);
    if (p <= 0)
      throw PreconditionError("Dist: mass " + rat_to_string(p) + " at " + e.to_string() +
                              " is not strictly positive");
    mass_[e] += p;
    total += p;
  }
  if (total != 1)
    throw PreconditionError("Dist: masses sum to " + rat_to_string(total) + " != 1");
}

Dist Dist::point_mass(const Group& group, const Element& e) {
  return Dist(group, std::vector<std::pair<Element, Rat>>{{e, Rat(1)}});
}

Dist Dist::uniform(const Group& group, const std::vector<Element>& support) {
  if (support.empty()) throw PreconditionError("uniform: empty support");
  ElementSet dedup(support.begin(), support.end());
  const Rat p(1, static_cast<unsigned long>(dedup.size()));
  std::vector<std::pair<Element, Rat>> entries;
  entries.reserve(dedup.size());
  for (const Element& e : dedup) entries.emplace_back(e, p);
  return Dist(group, entries);
}

Rat Dist::mass_of(const Element& e) const {
  const auto it = mass_.find(e);
  return it == mass_.end() ? Rat(0) : it->second;
}

Rat Dist::min_support_mass() const {
  Rat out = 1;
  for (const auto& [e, p] : mass_) out = std::min(out, p);
  return out;
}

std::vector<std::pair<Element, Rat>> Dist::sorted_entries() const {
  std::vector<std::pair<Element, Rat>> out(mass_.begin(), mass_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

SetPredicate SetPredicate::explicit_set(Group group, const std::vector<Element>& elems) {
  ElementSet set;
  for (const Element& e : elems) {
    group.require(e);
    set.insert(e);
  }
  return SetPredicate(std::move(group), std::move(set), nullptr);
}

SetPredicate SetPredicate::callable(Group group, std::function<bool(const Element&)> fn,
                                    const std::vector<Element>& window) {
  if (!fn) throw PreconditionError("SetPredicate: null callable");
  ElementSet set;
  for (const Element& e : window) {
    group.require(e);
    set.insert(e);
  }
  return SetPredicate(std::move(group), std::move(set), std::move(fn));
}

bool SetPredicate::contains(const Element& e) const {
  if (is_explicit()) return elems_.count(e) > 0;
  if (elems_.count(e) == 0) {
    throw PreconditionError("SetPredicate: element " + e.to_string() +
                            " escapes the declared evaluation window");
  }
  return fn_(e);
}

const ElementSet& SetPredicate::elements() const {
  if (!is_explicit())
    throw PreconditionError("SetPredicate: callable predicate has no explicit element list");
  return elems_;
}

std::size_t SetPredicate::size() const { return elements().size(); }

std::vector<Element> SetPredicate::sorted_elements() const {
  std::vector<Element> out(elements().begin(), elements().end());
  std::sort(out.begin(), out.end());
  return out;
}

Dist convolve(const Dist& d1, const Dist& d2) {
  if (d1.group() != d2.group()) {
    throw PreconditionError("convolve: group mismatch (" + d1.group().to_string() + " vs " +
                            d2.group().to_string() + ")");
  }
  const Group& g = d1.group();
  MassMap out;
  out.reserve(d1.mass().size() * 2);
  for (const auto& [x, px] : d1.mass()) {
    for (const auto& [y, py] : d2.mass()) {
      out[g.mul(x, y)] += px * py;
    }
  }
  return Dist(Dist::FromMap{}, g, std::move(out));
}

Dist walk_law(const std::vector<Dist>& mus) {
  if (mus.empty()) throw PreconditionError("walk_law: empty step list");
  Dist acc = mus.front();
  for (std::size_t i = 1; i < mus.size(); ++i) acc = convolve(acc, mus[i]);
  return acc;
}

Rat rho(const Dist& d) {
  Rat out = 0;
  for (const auto& [e, p] : d.mass()) out = std::max(out, p);
  return out;
}

Rat rho_S(const Dist& d, const SetPredicate& S) {
  if (d.group() != S.group()) {
    throw PreconditionError("rho_S: group mismatch (" + d.group().to_string() + " vs " +
                            S.group().to_string() + ")");
  }
  Rat out = 0;
  if (S.is_explicit()) {
    if (S.elements().size() < d.mass().size()) {
      for (const Element& e : S.elements()) out += d.mass_of(e);
    } else {
      for (const auto& [e, p] : d.mass()) {
        if (S.contains(e)) out += p;
      }
    }
  } else {
    for (const auto& [e, p] : d.mass()) {
      if (S.contains(e)) out += p;  // throws if the support escapes the window
    }
  }
  return out;
}

Rat p0_of(const std::vector<Dist>& mus) {
  if (mus.empty()) throw PreconditionError("p0_of: empty step list");
  Rat out = 1;
  for (const Dist& d : mus) out = std::min(out, d.min_support_mass());
  return out;
}

nlohmann::json dist_to_json(const Dist& d) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [e, p] : d.sorted_entries()) {
    entries.push_back(nlohmann::json::array({element_to_json(e, d.group()), rat_to_string(p)}));
  }
  return nlohmann::json{{"group", group_to_json(d.group())}, {"entries", entries}};
}

Dist dist_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("group") || !j.contains("entries"))
    throw ParseError("dist: expected {group, entries}");
  return dist_from_json(j, group_from_json(j.at("group")));
}

Dist dist_from_json(const nlohmann::json& j, const Group& group) {
  const auto& entries = j.is_object() && j.contains("entries") ? j.at("entries") : j;
  if (!entries.is_array()) throw ParseError("dist: entries must be an array");
  std::vector<std::pair<Element, Rat>> pairs;
  for (const auto& entry : entries) {
    if (!entry.is_array() || entry.size() != 2)
      throw ParseError("dist: each entry must be [element, \"p/q\"]");
    pairs.emplace_back(element_from_json(entry[0], group),
                       rat_from_string(entry[1].get<std::string>()));
  }
  return Dist(group, pairs);
}

}  // namespace aclab
