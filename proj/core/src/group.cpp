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

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "aclab/rational.hpp"

namespace aclab {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow in group law");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in group law");
  return out;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::string Element::to_string() const {
  if (coords_.size() == 1) return std::to_string(coords_[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(coords_[i]);
  }
  return out + ")";
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::int64_t c : e.coords()) {
    std::uint64_t v = static_cast<std::uint64_t>(c);
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return static_cast<std::size_t>(h);
}

struct Group::Data {
  GroupKind kind;
  std::int64_t param = 0;  // m for cyclic/dihedral, d for free-abelian, order for cayley
  std::vector<std::vector<std::int64_t>> table;
  std::vector<Group> factors;
  std::size_t arity = 0;
  std::int64_t table_identity = 0;
};

Group Group::cyclic(std::int64_t m) {
  if (m < 1) throw PreconditionError("cyclic: modulus m = " + std::to_string(m) + " < 1");
  auto d = std::make_shared<Data>();
  d->kind = GroupKind::kCyclic;
  d->param = m;
  d->arity = 1;
  return Group(std::move(d));
}

Group Group::free_abelian(std::int64_t dim) {
  if (dim < 1) throw PreconditionError("free-abelian: dimension d = " + std::to_string(dim) + " < 1");
  auto d = std::make_shared<Data>();
  d->kind = GroupKind::kFreeAbelian;
  d->param = dim;
  d->arity = static_cast<std::size_t>(dim);
  return Group(std::move(d));
}

Group Group::dihedral(std::int64_t m) {
  if (m < 3) throw PreconditionError("dihedral: m = " + std::to_string(m) + " < 3");
  auto d = std::make_shared<Data>();
  d->kind = GroupKind::kDihedral;
  d->param = m;
  d->arity = 2;
  return Group(std::move(d));
}

Group Group::heisenberg() {
  auto d = std::make_shared<Data>();
  d->kind = GroupKind::kHeisenberg;
  d->arity = 3;
  return Group(std::move(d));
}

Group Group::cayley_table(std::vector<std::vector<std::int64_t>> table) {
  const std::int64_t n = static_cast<std::int64_t>(table.size());
  if (n < 1) throw PreconditionError("cayley: empty table");
  for (const auto& row : table) {
    if (static_cast<std::int64_t>(row.size()) != n)
      throw PreconditionError("cayley: table is not square");
    for (std::int64_t v : row) {
      if (v < 0 || v >= n) throw PreconditionError("cayley: index out of range");
    }
  }
  // Rows and columns must be permutations of {0..n-1}.
  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<bool> seen_row(n, false), seen_col(n, false);
    for (std::int64_t j = 0; j < n; ++j) {
      if (seen_row[table[i][j]])
        throw PreconditionError("cayley: row " + std::to_string(i) + " is not a permutation");
      seen_row[table[i][j]] = true;
      if (seen_col[table[j][i]])
        throw PreconditionError("cayley: column " + std::to_string(i) + " is not a permutation");
      seen_col[table[j][i]] = true;
    }
  }
  std::int64_t identity = -1;
  for (std::int64_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::int64_t j = 0; j < n && ok; ++j) ok = table[e][j] == j && table[j][e] == j;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw PreconditionError("cayley: table has no identity element");
  auto check_triple = [&table](std::int64_t a, std::int64_t b, std::int64_t c) {
    if (table[table[a][b]][c] != table[a][table[b][c]]) {
      throw PreconditionError("cayley: associativity fails at (" + std::to_string(a) + "," +
                              std::to_string(b) + "," + std::to_string(c) + ")");
    }
  };
  if (n <= 64) {
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b)
        for (std::int64_t c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    std::uint64_t state = 0x5eedc0de5eedc0deULL;
    for (int i = 0; i < 100000; ++i) {
      const std::int64_t a = static_cast<std::int64_t>(splitmix64(state) % n);
      const std::int64_t b = static_cast<std::int64_t>(splitmix64(state) % n);
      const std::int64_t c = static_cast<std::int64_t>(splitmix64(state) % n);
      check_triple(a, b, c);
    }
  }
  auto d = std::make_shared<Data>();
  d->kind = GroupKind::kCayleyTable;
  d->param = n;
  d->table = std::move(table);
  d->arity = 1;
  d->table_identity = identity;
  return Group(std::move(d));
}

Group Group::product(std::vector<Group> factors) {
  if (factors.empty()) throw PreconditionError("product: empty factor list");
  auto d = std::make_shared<Data>();
  d->kind = GroupKind::kProduct;
  d->arity = 0;
  for (const Group& g : factors) d->arity += g.arity();
  d->factors = std::move(factors);
  return Group(std::move(d));
}

GroupKind Group::kind() const { return data_->kind; }
std::int64_t Group::modulus() const { return data_->param; }
std::int64_t Group::dimension() const { return data_->param; }
std::int64_t Group::table_order() const { return data_->param; }
const std::vector<std::vector<std::int64_t>>& Group::table() const { return data_->table; }
const std::vector<Group>& Group::factors() const { return data_->factors; }
std::size_t Group::arity() const { return data_->arity; }

Element Group::identity() const {
  switch (data_->kind) {
    case GroupKind::kCayleyTable:
      return Element({data_->table_identity});
    case GroupKind::kProduct: {
      std::vector<std::int64_t> coords;
      coords.reserve(arity());
      for (const Group& f : data_->factors) {
        const Element sub = f.identity();
        coords.insert(coords.end(), sub.coords().begin(), sub.coords().end());
      }
      return Element(std::move(coords));
    }
    default:
      return Element(std::vector<std::int64_t>(arity(), 0));
  }
}

bool Group::contains(const Element& e) const {
  if (e.arity() != arity()) return false;
  switch (data_->kind) {
    case GroupKind::kCyclic:
      return e[0] >= 0 && e[0] < data_->param;
    case GroupKind::kFreeAbelian:
    case GroupKind::kHeisenberg:
      return true;
    case GroupKind::kDihedral:
      return e[0] >= 0 && e[0] < data_->param && (e[1] == 0 || e[1] == 1);
    case GroupKind::kCayleyTable:
      return e[0] >= 0 && e[0] < data_->param;
    case GroupKind::kProduct: {
      std::size_t off = 0;
      for (const Group& f : data_->factors) {
        std::vector<std::int64_t> sub(e.coords().begin() + off, e.coords().begin() + off + f.arity());
        if (!f.contains(Element(std::move(sub)))) return false;
        off += f.arity();
      }
      return true;
    }
  }
  return false;
}

void Group::require(const Element& e) const {
  if (!contains(e)) {
    throw PreconditionError("element " + e.to_string() + " is not in canonical form for group " +
                            to_string());
  }
}

Element Group::mul(const Element& a, const Element& b) const {
  require(a);
  require(b);
  switch (data_->kind) {
    case GroupKind::kCyclic:
      return Element({mod(a[0] + b[0], data_->param)});
    case GroupKind::kFreeAbelian: {
      std::vector<std::int64_t> coords(arity());
      for (std::size_t i = 0; i < arity(); ++i) coords[i] = checked_add(a[i], b[i]);
      return Element(std::move(coords));
    }
    case GroupKind::kDihedral: {
      // Canonical form (rot, flip) with flip*rot = rot^-1*flip.
      const std::int64_t rot = mod(a[0] + (a[1] ? -b[0] : b[0]), data_->param);
      return Element({rot, a[1] ^ b[1]});
    }
    case GroupKind::kHeisenberg:
      return Element({checked_add(a[0], b[0]), checked_add(a[1], b[1]),
                      checked_add(checked_add(a[2], b[2]), checked_mul(a[0], b[1]))});
    case GroupKind::kCayleyTable:
      return Element({data_->table[a[0]][b[0]]});
    case GroupKind::kProduct: {
      std::vector<std::int64_t> coords;
      coords.reserve(arity());
      std::size_t off = 0;
      for (const Group& f : data_->factors) {
        std::vector<std::int64_t> ca(a.coords().begin() + off, a.coords().begin() + off + f.arity());
        std::vector<std::int64_t> cb(b.coords().begin() + off, b.coords().begin() + off + f.arity());
        const Element sub = f.mul(Element(std::move(ca)), Element(std::move(cb)));
        coords.insert(coords.end(), sub.coords().begin(), sub.coords().end());
        off += f.arity();
      }
      return Element(std::move(coords));
    }
  }
  throw std::logic_error("unreachable group kind");
}

Element Group::inv(const Element& a) const {
  require(a);
  switch (data_->kind) {
    case GroupKind::kCyclic:
      return Element({mod(-a[0], data_->param)});
    case GroupKind::kFreeAbelian: {
      std::vector<std::int64_t> coords(arity());
      for (std::size_t i = 0; i < arity(); ++i) coords[i] = -a[i];
      return Element(std::move(coords));
    }
    case GroupKind::kDihedral:
      if (a[1]) return a;  // reflections are involutions
      return Element({mod(-a[0], data_->param), 0});
    case GroupKind::kHeisenberg:
      return Element({-a[0], -a[1], checked_add(checked_mul(a[0], a[1]), -a[2])});
    case GroupKind::kCayleyTable: {
      const auto& row = data_->table[a[0]];
      for (std::int64_t j = 0; j < data_->param; ++j) {
        if (row[j] == data_->table_identity) return Element({j});
      }
      throw std::logic_error("cayley: row without inverse despite validation");
    }
    case GroupKind::kProduct: {
      std::vector<std::int64_t> coords;
      coords.reserve(arity());
      std::size_t off = 0;
      for (const Group& f : data_->factors) {
        std::vector<std::int64_t> ca(a.coords().begin() + off, a.coords().begin() + off + f.arity());
        const Element sub = f.inv(Element(std::move(ca)));
        coords.insert(coords.end(), sub.coords().begin(), sub.coords().end());
        off += f.arity();
      }
      return Element(std::move(coords));
    }
  }
  throw std::logic_error("unreachable group kind");
}

Element Group::pow(const Element& a, std::int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  Element acc = identity();
  Element base = a;
  std::int64_t k = e;
  while (k > 0) {
    if (k & 1) acc = mul(acc, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return acc;
}

std::optional<std::int64_t> Group::order_up_to(const Element& g, std::int64_t m) const {
  if (m < 1) throw PreconditionError("order_up_to: m = " + std::to_string(m) + " < 1");
  const Element id = identity();
  Element acc = identity();
  for (std::int64_t t = 1; t <= m; ++t) {
    acc = mul(acc, g);
    if (acc == id) return t;
  }
  return std::nullopt;
}

std::optional<std::int64_t> Group::torsion_order(const Element& g) const {
  require(g);
  switch (data_->kind) {
    case GroupKind::kCyclic:
      return g[0] == 0 ? 1 : data_->param / std::gcd(g[0], data_->param);
    case GroupKind::kFreeAbelian:
      return g == identity() ? std::optional<std::int64_t>(1) : std::nullopt;
    case GroupKind::kDihedral:
      if (g[1]) return 2;
      return g[0] == 0 ? 1 : data_->param / std::gcd(g[0], data_->param);
    case GroupKind::kHeisenberg:
      return g == identity() ? std::optional<std::int64_t>(1) : std::nullopt;
    case GroupKind::kCayleyTable:
      return order_up_to(g, data_->param);
    case GroupKind::kProduct: {
      std::int64_t l = 1;
      std::size_t off = 0;
      for (const Group& f : data_->factors) {
        std::vector<std::int64_t> cg(g.coords().begin() + off, g.coords().begin() + off + f.arity());
        const auto t = f.torsion_order(Element(std::move(cg)));
        if (!t) return std::nullopt;
        l = checked_mul(l / std::gcd(l, *t), *t);
        off += f.arity();
      }
      return l;
    }
  }
  return std::nullopt;
}

std::optional<std::int64_t> Group::size() const {
  switch (data_->kind) {
    case GroupKind::kCyclic:
      return data_->param;
    case GroupKind::kDihedral:
      return 2 * data_->param;
    case GroupKind::kCayleyTable:
      return data_->param;
    case GroupKind::kFreeAbelian:
    case GroupKind::kHeisenberg:
      return std::nullopt;
    case GroupKind::kProduct: {
      std::int64_t n = 1;
      for (const Group& f : data_->factors) {
        const auto s = f.size();
        if (!s) return std::nullopt;
        n = checked_mul(n, *s);
      }
      return n;
    }
  }
  return std::nullopt;
}

std::vector<Element> Group::enumerate() const {
  const auto n = size();
  if (!n) throw PreconditionError("enumerate: group " + to_string() + " is infinite");
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(*n));
  switch (data_->kind) {
    case GroupKind::kCyclic:
    case GroupKind::kCayleyTable:
      for (std::int64_t i = 0; i < data_->param; ++i) out.push_back(Element({i}));
      return out;
    case GroupKind::kDihedral:
      for (std::int64_t r = 0; r < data_->param; ++r)
        for (std::int64_t f = 0; f <= 1; ++f) out.push_back(Element({r, f}));
      return out;
    case GroupKind::kProduct: {
      out.push_back(identity());
      std::vector<Element> acc = {Element(std::vector<std::int64_t>{})};
      for (const Group& f : data_->factors) {
        std::vector<Element> next;
        const auto sub = f.enumerate();
        next.reserve(acc.size() * sub.size());
        for (const Element& a : acc) {
          for (const Element& b : sub) {
            std::vector<std::int64_t> coords = a.coords();
            coords.insert(coords.end(), b.coords().begin(), b.coords().end());
            next.push_back(Element(std::move(coords)));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    default:
      throw std::logic_error("unreachable enumerate kind");
  }
}

bool Group::operator==(const Group& other) const {
  if (data_ == other.data_) return true;
  if (data_->kind != other.data_->kind) return false;
  switch (data_->kind) {
    case GroupKind::kHeisenberg:
      return true;
    case GroupKind::kCayleyTable:
      return data_->table == other.data_->table;
    case GroupKind::kProduct:
      return data_->factors == other.data_->factors;
    default:
      return data_->param == other.data_->param;
  }
}

std::string Group::to_string() const {
  switch (data_->kind) {
    case GroupKind::kCyclic:
      return "cyclic:" + std::to_string(data_->param);
    case GroupKind::kFreeAbelian:
      return "Z^" + std::to_string(data_->param);
    case GroupKind::kDihedral:
      return "dihedral:" + std::to_string(data_->param);
    case GroupKind::kHeisenberg:
      return "heisenberg";
    case GroupKind::kCayleyTable:
      return "cayley:#" + std::to_string(data_->param);
    case GroupKind::kProduct: {
      std::string out = "prod(";
      for (std::size_t i = 0; i < data_->factors.size(); ++i) {
        if (i) out += ",";
        out += data_->factors[i].to_string();
      }
      return out + ")";
    }
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(std::string(s), &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad integer in " + what + ": '" + std::string(s) + "'");
  }
}

}  // namespace

Group parse_cayley_text(const std::string& text) {
  std::istringstream in(text);
  std::int64_t n = 0;
  if (!(in >> n) || n < 1) throw ParseError("cayley table: first token must be the order");
  std::vector<std::vector<std::int64_t>> table(n, std::vector<std::int64_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      if (!(in >> table[i][j]))
        throw ParseError("cayley table: expected " + std::to_string(n * n) + " entries");
    }
  }
  return Group::cayley_table(std::move(table));
}

Group parse_group(std::string_view spec) {
  const std::string_view s = trim(spec);
  if (s.empty()) throw ParseError("empty group spec");
  if (s == "heisenberg") return Group::heisenberg();
  if (s.starts_with("cyclic:")) return Group::cyclic(parse_int(s.substr(7), "cyclic modulus"));
  if (s.starts_with("dihedral:")) return Group::dihedral(parse_int(s.substr(9), "dihedral modulus"));
  if (s.starts_with("Z^") || s.starts_with("z^"))
    return Group::free_abelian(parse_int(s.substr(2), "free-abelian dimension"));
  if (s.starts_with("cayley:")) {
    const std::string path(trim(s.substr(7)));
    std::ifstream in(path);
    if (!in) throw ParseError("cayley: cannot open file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_cayley_text(buf.str());
  }
  if (s.starts_with("prod(") && s.ends_with(")")) {
    const std::string_view inner = s.substr(5, s.size() - 6);
    std::vector<Group> factors;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= inner.size(); ++i) {
      if (i == inner.size() || (inner[i] == ',' && depth == 0)) {
        factors.push_back(parse_group(inner.substr(start, i - start)));
        start = i + 1;
      } else if (inner[i] == '(') {
        ++depth;
      } else if (inner[i] == ')') {
        --depth;
      }
    }
    return Group::product(std::move(factors));
  }
  throw ParseError("unrecognized group spec: '" + std::string(s) + "'");
}

namespace {

bool needs_structured_json(const Group& g) {
  if (g.kind() == GroupKind::kCayleyTable) return true;
  if (g.kind() == GroupKind::kProduct) {
    for (const Group& f : g.factors()) {
      if (needs_structured_json(f)) return true;
    }
  }
  return false;
}

}  // namespace

nlohmann::json group_to_json(const Group& g) {
  if (!needs_structured_json(g)) return g.to_string();
  if (g.kind() == GroupKind::kCayleyTable) return nlohmann::json{{"cayley-table", g.table()}};
  nlohmann::json factors = nlohmann::json::array();
  for (const Group& f : g.factors()) factors.push_back(group_to_json(f));
  return nlohmann::json{{"prod", std::move(factors)}};
}

Group group_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_group(j.get<std::string>());
  if (j.is_object() && j.contains("cayley-table")) {
    return Group::cayley_table(j.at("cayley-table").get<std::vector<std::vector<std::int64_t>>>());
  }
  if (j.is_object() && j.contains("prod")) {
    std::vector<Group> factors;
    for (const auto& f : j.at("prod")) factors.push_back(group_from_json(f));
    return Group::product(std::move(factors));
  }
  throw ParseError("group: expected a spec string, {\"cayley-table\": ...} or {\"prod\": ...}");
}

nlohmann::json element_to_json(const Element& e, const Group& g) {
  g.require(e);
  switch (g.kind()) {
    case GroupKind::kCyclic:
    case GroupKind::kCayleyTable:
      return e[0];
    case GroupKind::kFreeAbelian: {
      nlohmann::json arr = nlohmann::json::array();
      for (std::int64_t c : e.coords()) arr.push_back(c);
      return arr;
    }
    case GroupKind::kDihedral:
      return nlohmann::json{{"r", e[0]}, {"flip", e[1]}};
    case GroupKind::kHeisenberg:
      return nlohmann::json{{"a", e[0]}, {"b", e[1]}, {"c", e[2]}};
    case GroupKind::kProduct: {
      nlohmann::json arr = nlohmann::json::array();
      std::size_t off = 0;
      for (const Group& f : g.factors()) {
        std::vector<std::int64_t> sub(e.coords().begin() + off, e.coords().begin() + off + f.arity());
        arr.push_back(element_to_json(Element(std::move(sub)), f));
        off += f.arity();
      }
      return arr;
    }
  }
  throw std::logic_error("unreachable element_to_json kind");
}

Element element_from_json(const nlohmann::json& j, const Group& g) {
  Element out;
  switch (g.kind()) {
    case GroupKind::kCyclic:
    case GroupKind::kCayleyTable:
      if (!j.is_number_integer()) throw ParseError("element: expected integer for " + g.to_string());
      out = Element({j.get<std::int64_t>()});
      break;
    case GroupKind::kFreeAbelian: {
      if (!j.is_array() || j.size() != g.arity())
        throw ParseError("element: expected integer array of length " + std::to_string(g.arity()));
      std::vector<std::int64_t> coords;
      for (const auto& v : j) coords.push_back(v.get<std::int64_t>());
      out = Element(std::move(coords));
      break;
    }
    case GroupKind::kDihedral:
      if (!j.is_object() || !j.contains("r") || !j.contains("flip"))
        throw ParseError("element: expected {r, flip} for dihedral");
      out = Element({j.at("r").get<std::int64_t>(), j.at("flip").get<std::int64_t>()});
      break;
    case GroupKind::kHeisenberg:
      if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("c"))
        throw ParseError("element: expected {a, b, c} for heisenberg");
      out = Element({j.at("a").get<std::int64_t>(), j.at("b").get<std::int64_t>(),
                     j.at("c").get<std::int64_t>()});
      break;
    case GroupKind::kProduct: {
      if (!j.is_array() || j.size() != g.factors().size())
        throw ParseError("element: expected one entry per product factor");
      std::vector<std::int64_t> coords;
      for (std::size_t i = 0; i < g.factors().size(); ++i) {
        const Element sub = element_from_json(j[i], g.factors()[i]);
        coords.insert(coords.end(), sub.coords().begin(), sub.coords().end());
      }
      out = Element(std::move(coords));
      break;
    }
    default:
      throw std::logic_error("unreachable element_from_json kind");
  }
  g.require(out);
  return out;
}

}  // namespace aclab
