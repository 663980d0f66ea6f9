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

#include "aclab/group.hpp"

#include <cstdio>
#include <fstream>

#include "aclab/rational.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace aclab;
using namespace aclab::testing;

TEST_CASE("group-core: cyclic arithmetic") {
  const Group g = Group::cyclic(6);
  CHECK(g.mul(Element({4}), Element({5})) == Element({3}));
  CHECK(g.inv(Element({2})) == Element({4}));
  CHECK(g.mul(Element({2}), g.identity()) == Element({2}));
  CHECK(g.order_up_to(Element({2}), 10) == 3);
  CHECK(g.order_up_to(g.identity(), 1) == 1);
  CHECK_THROWS_AS(g.mul(Element({6}), Element({0})), PreconditionError);
  CHECK_THROWS_AS(g.mul(Element({1, 2}), Element({0})), PreconditionError);
}

TEST_CASE("group-core: heisenberg law matches the matrix oracle") {
  const Group g = Group::heisenberg();
  CHECK(g.mul(Element({1, 0, 0}), Element({0, 1, 0})) == Element({1, 1, 1}));
  CHECK(!g.order_up_to(Element({1, 0, 0}), 100).has_value());

  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Element a = random_element(g, rng);
    const Element b = random_element(g, rng);
    const Element via_matrices =
        heisenberg_element(mat_mul(heisenberg_matrix(a), heisenberg_matrix(b)));
    CHECK(g.mul(a, b) == via_matrices);
  }
}

TEST_CASE("group-core: free abelian inverse") {
  const Group g = Group::free_abelian(2);
  CHECK(g.inv(Element({3, -1})) == Element({-3, 1}));
}

TEST_CASE("group-core: dihedral inverse agrees with exhaustive search") {
  const Group g = Group::dihedral(5);
  CHECK(g.inv(Element({2, 1})) == Element({2, 1}));
  for (const Element& e : g.enumerate()) {
    Element found = g.identity();
    bool ok = false;
    for (const Element& cand : g.enumerate()) {
      if (g.mul(e, cand) == g.identity()) {
        found = cand;
        ok = true;
        break;
      }
    }
    REQUIRE(ok);
    CHECK(g.inv(e) == found);
  }
}

TEST_CASE("group-core: group laws hold on every kind") {
  Rng rng(17);
  for (const Group& g : all_kind_groups()) {
    CAPTURE(g.to_string());
    for (int i = 0; i < 60; ++i) {
      const Element a = random_element(g, rng);
      const Element b = random_element(g, rng);
      const Element c = random_element(g, rng);
      CHECK(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
      CHECK(g.mul(a, g.inv(a)) == g.identity());
      CHECK(g.inv(g.inv(a)) == a);
      CHECK(g.mul(a, g.identity()) == a);
      CHECK(g.mul(g.identity(), a) == a);
    }
  }
}

TEST_CASE("group-core: order_up_to certifies by repeated multiplication") {
  Rng rng(23);
  for (const Group& g : all_kind_groups()) {
    for (int i = 0; i < 20; ++i) {
      const Element a = random_element(g, rng);
      const auto t = g.order_up_to(a, 24);
      if (t) {
        CHECK(g.pow(a, *t) == g.identity());
        for (std::int64_t s = 1; s < *t; ++s) CHECK(g.pow(a, s) != g.identity());
        CHECK(g.torsion_order(a) == t);
      } else {
        const auto exact = g.torsion_order(a);
        CHECK((!exact || *exact > 24));
      }
    }
  }
}

TEST_CASE("group-core: product groups act componentwise") {
  const Group g = Group::product({Group::cyclic(2), Group::free_abelian(1)});
  const Element a({1, 5});
  const Element b({1, -2});
  CHECK(g.mul(a, b) == Element({0, 3}));
  CHECK(g.inv(a) == Element({1, -5}));
  CHECK(g.torsion_order(Element({1, 0})) == 2);
  CHECK(!g.torsion_order(Element({1, 1})).has_value());
}

TEST_CASE("group-core: spec string mini-language round trips") {
  for (const char* spec : {"cyclic:6", "Z^2", "dihedral:5", "heisenberg",
                           "prod(cyclic:2,Z^1)", "prod(dihedral:3,prod(cyclic:2,cyclic:2))"}) {
    const Group g = parse_group(spec);
    CHECK(parse_group(g.to_string()) == g);
  }
  CHECK(parse_group(" cyclic:4 ") == Group::cyclic(4));
  CHECK_THROWS_AS(parse_group("cyclic:"), ParseError);
  CHECK_THROWS_AS(parse_group("so6"), ParseError);
  CHECK_THROWS_AS(parse_group("dihedral:2"), PreconditionError);
}

TEST_CASE("group-core: cayley tables validate on load") {
  // cyclic(3) as a table, via the text format.
  const Group c3 = parse_cayley_text("3\n0 1 2\n1 2 0\n2 0 1\n");
  CHECK(c3.mul(Element({1}), Element({2})) == Element({0}));
  CHECK(c3.inv(Element({1})) == Element({2}));
  CHECK(c3.torsion_order(Element({1})) == 3);

  const Group klein = klein_table_group();
  for (const Element& e : klein.enumerate()) CHECK(klein.mul(e, e) == klein.identity());

  // Latin square without associativity must be rejected.
  CHECK_THROWS_WITH_AS(
      Group::cayley_table({{0, 1, 2, 3, 4},
                           {1, 0, 3, 4, 2},
                           {2, 4, 0, 1, 3},
                           {3, 2, 4, 0, 1},
                           {4, 3, 1, 2, 0}}),
      doctest::Contains("associativity"), PreconditionError);
  // Identity is found even when it is not index 0.
  const Group relabeled = Group::cayley_table({{1, 0}, {0, 1}});
  CHECK(relabeled.identity() == Element({1}));
  // Repeated entry in a row.
  CHECK_THROWS_AS(Group::cayley_table({{0, 0}, {1, 1}}), PreconditionError);
  // Latin square with no two-sided identity.
  CHECK_THROWS_WITH_AS(Group::cayley_table({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}),
                       doctest::Contains("identity"), PreconditionError);
}

TEST_CASE("group-core: cayley file loading through the parser") {
  const std::string path = "/tmp/aclab_test_cayley.txt";
  {
    std::ofstream out(path);
    out << "2\n0 1\n1 0\n";
  }
  const Group g = parse_group("cayley:" + path);
  CHECK(g.table_order() == 2);
  CHECK(g.mul(Element({1}), Element({1})) == Element({0}));
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_group("cayley:/nonexistent/table.txt"), ParseError);
}

TEST_CASE("group-core: element JSON encodings per kind") {
  Rng rng(31);
  for (const Group& g : all_kind_groups()) {
    CAPTURE(g.to_string());
    for (int i = 0; i < 20; ++i) {
      const Element e = random_element(g, rng);
      CHECK(element_from_json(element_to_json(e, g), g) == e);
    }
  }
  const Group dih = Group::dihedral(5);
  CHECK(element_to_json(Element({2, 1}), dih) == nlohmann::json({{"r", 2}, {"flip", 1}}));
  const Group z2 = Group::free_abelian(2);
  CHECK(element_to_json(Element({3, -1}), z2) == nlohmann::json::array({3, -1}));
  CHECK_THROWS_AS(element_from_json(nlohmann::json::array({1, 2, 3}), z2), ParseError);
}

TEST_CASE("group-core: dihedral flip convention") {
  // flip * rot = rot^-1 * flip
  const Group g = Group::dihedral(7);
  const Element flip({0, 1});
  const Element rot({1, 0});
  CHECK(g.mul(flip, rot) == g.mul(g.inv(rot), flip));
  CHECK(g.mul(flip, flip) == g.identity());
}

TEST_CASE("group-core: large cayley tables load with sampled associativity") {
  const std::int64_t n = 100;
  std::vector<std::vector<std::int64_t>> table(n, std::vector<std::int64_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  const Group g = Group::cayley_table(std::move(table));
  CHECK(g.table_order() == n);
  CHECK(g.mul(Element({40}), Element({70})) == Element({10}));
  CHECK(g.torsion_order(Element({1})) == n);
}

TEST_CASE("group-core: reflections swap quotients with rotations") {
  // u r^-1 = r u^-1 for any reflection u and rotation r, which is why mixed
  // rotation/reflection sets always have translate overlap at least 2.
  const Group g = Group::dihedral(9);
  Rng rng(73);
  for (int i = 0; i < 40; ++i) {
    const Element u({rng.uniform(0, 8), 1});
    const Element r({rng.uniform(0, 8), 0});
    CHECK(g.mul(u, g.inv(r)) == g.mul(r, g.inv(u)));
  }
}
