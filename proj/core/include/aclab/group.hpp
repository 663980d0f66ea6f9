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

#ifndef ACLAB_GROUP_HPP_
#define ACLAB_GROUP_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace aclab {

// A group element in canonical form. The coordinates are interpreted by the
// owning Group: residue for cyclic, an integer vector for Z^d, (rotation,
// flip) for dihedral, (a,b,c) for Heisenberg, a table index for Cayley-table
// groups, and the concatenation of component forms for products. Equality of
// canonical forms is equality of elements.
class Element {
 public:
  Element() = default;
  explicit Element(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  Element(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  const std::vector<std::int64_t>& coords() const { return coords_; }
  std::size_t arity() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }

  bool operator==(const Element&) const = default;
  auto operator<=>(const Element&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::int64_t> coords_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

enum class GroupKind { kCyclic, kFreeAbelian, kDihedral, kHeisenberg, kCayleyTable, kProduct };

// One of the concrete groups all walks, sets and searches live in. Immutable
// after construction; copies share the underlying data and are cheap. All
// operations are pure, so a Group can be used from many threads at once.
class Group {
 public:
  static Group cyclic(std::int64_t m);
  static Group free_abelian(std::int64_t d);
  static Group dihedral(std::int64_t m);  // m >= 3
  static Group heisenberg();
  // order x order index matrix; validated on construction (rows/columns are
  // permutations; associativity in full for order <= 64, sampled above).
  static Group cayley_table(std::vector<std::vector<std::int64_t>> table);
  static Group product(std::vector<Group> factors);

  GroupKind kind() const;
  std::int64_t modulus() const;                // cyclic / dihedral
  std::int64_t dimension() const;              // free-abelian
  std::int64_t table_order() const;            // cayley-table
  const std::vector<std::vector<std::int64_t>>& table() const;  // cayley-table
  const std::vector<Group>& factors() const;   // product

  std::size_t arity() const;                   // canonical coords per element
  Element identity() const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  Element pow(const Element& a, std::int64_t e) const;

  bool contains(const Element& e) const;       // canonical-form validity
  void require(const Element& e) const;        // throws PreconditionError

  // Least 1 <= t <= m with g^t = identity, by repeated multiplication.
  std::optional<std::int64_t> order_up_to(const Element& g, std::int64_t m) const;
  // Exact torsion order computed per kind; nullopt means infinite order.
  std::optional<std::int64_t> torsion_order(const Element& g) const;

  std::optional<std::int64_t> size() const;    // nullopt for infinite groups
  std::vector<Element> enumerate() const;      // finite kinds, canonical order

  bool operator==(const Group& other) const;   // structural equality
  bool operator!=(const Group& other) const { return !(*this == other); }
  std::string to_string() const;               // spec-string round trip

 private:
  struct Data;
  explicit Group(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

// Group specification mini-language: "cyclic:6", "Z^2", "dihedral:5",
// "heisenberg", "cayley:<path>", "prod(cyclic:2,Z^1)".
Group parse_group(std::string_view spec);

// Cayley table text format: first token is the order, then order*order
// whitespace-separated indices.
Group parse_cayley_text(const std::string& text);

nlohmann::json element_to_json(const Element& e, const Group& g);
Element element_from_json(const nlohmann::json& j, const Group& g);

// Self-contained group JSON: the spec string where it is expressive enough,
// {"cayley-table": [[...]]} for table groups, {"prod": [...]} for products
// containing one.
nlohmann::json group_to_json(const Group& g);
Group group_from_json(const nlohmann::json& j);

}  // namespace aclab

#endif  // ACLAB_GROUP_HPP_
