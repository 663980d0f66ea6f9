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

#include "aclab/certificate.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace aclab {

namespace {

using Set = std::vector<Element>;  // sorted, unique

Set make_set(std::vector<Element> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

bool set_contains(const Set& s, const Element& e) {
  return std::binary_search(s.begin(), s.end(), e);
}

// A n gA = {x in A : g^-1 x in A}.
Set intersect_translate(const Set& a, const Element& g, const Group& grp) {
  const Element ginv = grp.inv(g);
  Set out;
  for (const Element& x : a) {
    if (set_contains(a, grp.mul(ginv, x))) out.push_back(x);
  }
  return out;
}

Set translate_set(const Set& s, const Element& g1, const Element& g2, const Group& grp) {
  std::vector<Element> out;
  out.reserve(s.size());
  for (const Element& x : s) out.push_back(grp.mul(grp.mul(g1, x), g2));
  return make_set(std::move(out));
}

}  // namespace

SelfDimCertificate SelfDimCertificate::leaf(std::int64_t complexity) {
  if (complexity < 1) throw PreconditionError("certificate: complexity C < 1");
  return SelfDimCertificate(complexity, {}, nullptr);
}

SelfDimCertificate SelfDimCertificate::node(std::int64_t complexity,
                                            std::vector<std::vector<Element>> parts,
                                            SelfDimCertificate child) {
  if (complexity < 1) throw PreconditionError("certificate: complexity C < 1");
  if (child.complexity() != complexity) {
    throw PreconditionError("certificate: child complexity " + std::to_string(child.complexity()) +
                            " != node complexity " + std::to_string(complexity));
  }
  std::vector<std::vector<Element>> clean;
  for (auto& p : parts) {
    Set s = make_set(std::move(p));
    if (!s.empty()) clean.push_back(std::move(s));
  }
  if (static_cast<std::int64_t>(clean.size()) > complexity) {
    throw PreconditionError("certificate: " + std::to_string(clean.size()) + " parts > C = " +
                            std::to_string(complexity));
  }
  return SelfDimCertificate(complexity, std::move(clean),
                            std::make_shared<const SelfDimCertificate>(std::move(child)));
}

int SelfDimCertificate::depth() const { return is_leaf() ? 0 : 1 + child().depth(); }

std::string VerifyResult::to_string() const {
  if (ok) return "ok";
  std::ostringstream out;
  for (const auto& frame : path) {
    out << "part " << frame.part_index + 1 << ", g=" << frame.translate.to_string() << " -> ";
  }
  out << reason;
  return out.str();
}

std::vector<Element> translate_family(const std::vector<Element>& set, const Group& grp) {
  const Set s = make_set(set);
  std::vector<Element> out;
  out.reserve(s.size() * (s.size() - 1));
  for (const Element& a : s) {
    for (const Element& b : s) {
      if (a == b) continue;
      out.push_back(grp.mul(a, grp.inv(b)));
    }
  }
  return make_set(std::move(out));
}

namespace {

bool verify_rec(const Set& t, const SelfDimCertificate& cert, const Group& grp,
                std::vector<VerifyFrame>& stack, VerifyResult* result) {
  if (cert.is_leaf()) {
    if (static_cast<std::int64_t>(t.size()) > cert.complexity()) {
      result->path = stack;
      result->reason = "|T| = " + std::to_string(t.size()) + " > C = " +
                       std::to_string(cert.complexity());
      return false;
    }
    return true;
  }
  // Restrict the template's parts to T and require them to cover it.
  std::vector<Set> restricted;
  restricted.reserve(cert.parts().size());
  for (const auto& part : cert.parts()) {
    Set r;
    for (const Element& x : part) {
      if (set_contains(t, x)) r.push_back(x);
    }
    restricted.push_back(std::move(r));
  }
  for (const Element& x : t) {
    bool covered = false;
    for (const auto& r : restricted) covered = covered || set_contains(r, x);
    if (!covered) {
      result->path = stack;
      result->reason = "parts do not cover element " + x.to_string();
      return false;
    }
  }
  for (std::size_t i = 0; i < restricted.size(); ++i) {
    for (const Element& g : translate_family(restricted[i], grp)) {
      const Set u = intersect_translate(restricted[i], g, grp);
      stack.push_back({static_cast<int>(i), g});
      const bool ok = verify_rec(u, cert.child(), grp, stack, result);
      stack.pop_back();
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace

VerifyResult verify_certificate(const SetPredicate& s, const SelfDimCertificate& cert,
                                const Group& grp) {
  if (s.group() != grp) {
    throw PreconditionError("verify_certificate: set group " + s.group().to_string() +
                            " != " + grp.to_string());
  }
  const Set target = make_set(s.sorted_elements());
  VerifyResult result;
  // Top level: the parts must union to exactly S.
  if (!cert.is_leaf()) {
    for (std::size_t i = 0; i < cert.parts().size(); ++i) {
      for (const Element& x : cert.parts()[i]) {
        if (!set_contains(target, x)) {
          result.ok = false;
          result.path = {{static_cast<int>(i), grp.identity()}};
          result.reason = "part contains element " + x.to_string() + " outside S";
          return result;
        }
      }
    }
  }
  std::vector<VerifyFrame> stack;
  result.ok = verify_rec(target, cert, grp, stack, &result);
  return result;
}

SelfDimCertificate translate_certificate(const SelfDimCertificate& cert, const Element& g1,
                                         const Element& g2, const Group& grp) {
  if (cert.is_leaf()) return cert;
  std::vector<std::vector<Element>> parts;
  parts.reserve(cert.parts().size());
  for (const auto& p : cert.parts()) parts.push_back(translate_set(p, g1, g2, grp));
  return SelfDimCertificate::node(cert.complexity(), std::move(parts),
                                  translate_certificate(cert.child(), g1, g2, grp));
}

SelfDimCertificate restrict_certificate(const SelfDimCertificate& cert,
                                        const SetPredicate& subset) {
  if (cert.is_leaf()) return cert;
  const Set target = make_set(subset.sorted_elements());
  std::vector<std::vector<Element>> parts;
  for (const auto& p : cert.parts()) {
    Set r;
    for (const Element& x : p) {
      if (set_contains(target, x)) r.push_back(x);
    }
    if (!r.empty()) parts.push_back(std::move(r));
  }
  return SelfDimCertificate::node(cert.complexity(), std::move(parts), cert.child());
}

// ---------------------------------------------------------------------------
// Search.
// ---------------------------------------------------------------------------

namespace {

struct SearchContext {
  const Group& grp;
  std::int64_t c;
  // Memo for solve_family, keyed by depth plus the canonically translated
  // family; values hold the certificate for the translated family.
  std::unordered_map<std::string, std::optional<SelfDimCertificate>> memo;
};

std::string family_key(const std::vector<Set>& family, int k) {
  std::ostringstream out;
  out << k << "|";
  for (const Set& s : family) {
    for (const Element& e : s) {
      for (std::int64_t c : e.coords()) out << c << ",";
      out << ";";
    }
    out << "|";
  }
  return out.str();
}

SelfDimCertificate trivial_cert(int k, std::int64_t c) {
  if (k == 0) return SelfDimCertificate::leaf(c);
  return SelfDimCertificate::node(c, {}, trivial_cert(k - 1, c));
}

// Aligns certificates of equal depth and complexity part-index-wise. Distinct
// inputs describe disjoint universes, so unioning parts keeps every branch
// condition intact.
SelfDimCertificate combine_certs(const std::vector<SelfDimCertificate>& certs, int k,
                                 std::int64_t c) {
  if (certs.empty()) return trivial_cert(k, c);
  if (k == 0) return SelfDimCertificate::leaf(c);
  std::vector<std::vector<Element>> parts(static_cast<std::size_t>(c));
  std::vector<SelfDimCertificate> children;
  children.reserve(certs.size());
  for (const auto& cert : certs) {
    for (std::size_t j = 0; j < cert.parts().size(); ++j) {
      parts[j].insert(parts[j].end(), cert.parts()[j].begin(), cert.parts()[j].end());
    }
    children.push_back(cert.child());
  }
  while (!parts.empty() && parts.back().empty()) parts.pop_back();
  return SelfDimCertificate::node(c, std::move(parts), combine_certs(children, k - 1, c));
}

std::optional<SelfDimCertificate> solve_family(const std::vector<Set>& family, int k,
                                               SearchContext& ctx);

// One connected component of a family: finds a single <=C-coloring of the
// component's universe such that every set's color classes pass depth k-1.
class ComponentColoring {
 public:
  ComponentColoring(const std::vector<Set>& sets, Set universe, int k, SearchContext& ctx)
      : sets_(sets), universe_(std::move(universe)), k_(k), ctx_(ctx) {
    color_.assign(universe_.size(), -1);
    member_sets_.resize(universe_.size());
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      for (const Element& e : sets_[s]) {
        const auto it = std::lower_bound(universe_.begin(), universe_.end(), e);
        member_sets_[static_cast<std::size_t>(it - universe_.begin())].push_back(s);
      }
    }
    if (k_ == 1) quotient_counts_.resize(sets_.size() * static_cast<std::size_t>(ctx_.c));
  }

  struct Pushed {
    std::size_t set;
    int color;
    Element q;
  };

  std::optional<SelfDimCertificate> run() {
    if (!assign(0)) return std::nullopt;
    std::vector<std::vector<Element>> parts(static_cast<std::size_t>(ctx_.c));
    for (std::size_t i = 0; i < universe_.size(); ++i) {
      parts[static_cast<std::size_t>(color_[i])].push_back(universe_[i]);
    }
    while (!parts.empty() && parts.back().empty()) parts.pop_back();
    return SelfDimCertificate::node(ctx_.c, std::move(parts), std::move(*child_));
  }

 private:
  bool assign(std::size_t idx) {
    if (idx == universe_.size()) return finish();
    int max_used = -1;
    for (std::size_t i = 0; i < idx; ++i) max_used = std::max(max_used, color_[i]);
    const int limit = std::min<int>(static_cast<int>(ctx_.c) - 1, max_used + 1);
    for (int c = 0; c <= limit; ++c) {
      color_[idx] = c;
      std::vector<Pushed> undo;  // per-frame, so deeper backtracking cannot leak
      if (push_counts(idx, c, &undo)) {
        if (assign(idx + 1)) return true;
      }
      pop_counts(undo);
      color_[idx] = -1;
    }
    return false;
  }

  // With a depth-0 child the branch condition is |A n gA| <= C, and |A n gA|
  // is exactly the multiplicity of g among ordered quotients x y^-1 of the
  // class A, so it can be maintained incrementally.
  bool push_counts(std::size_t idx, int c, std::vector<Pushed>* undo) {
    if (k_ != 1) return true;
    const Element& x = universe_[idx];
    for (std::size_t s : member_sets_[idx]) {
      auto& counts = quotient_counts_[s * static_cast<std::size_t>(ctx_.c) +
                                      static_cast<std::size_t>(c)];
      for (std::size_t j = 0; j < universe_.size(); ++j) {
        if (j == idx || color_[j] != c) continue;
        if (!std::binary_search(sets_[s].begin(), sets_[s].end(), universe_[j])) continue;
        const Element q1 = ctx_.grp.mul(x, ctx_.grp.inv(universe_[j]));
        const Element q2 = ctx_.grp.mul(universe_[j], ctx_.grp.inv(x));
        for (const Element& q : {q1, q2}) {
          const int v = ++counts[q];
          undo->push_back({s, c, q});
          if (v > ctx_.c) return false;
        }
      }
    }
    return true;
  }

  void pop_counts(const std::vector<Pushed>& undo) {
    for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
      auto& counts = quotient_counts_[it->set * static_cast<std::size_t>(ctx_.c) +
                                      static_cast<std::size_t>(it->color)];
      if (--counts[it->q] == 0) counts.erase(it->q);
    }
  }

  bool finish() {
    if (k_ == 1) {
      child_ = SelfDimCertificate::leaf(ctx_.c);
      return true;
    }
    std::vector<Set> next;
    for (const Set& t : sets_) {
      std::vector<Set> classes(static_cast<std::size_t>(ctx_.c));
      for (const Element& e : t) {
        const auto it = std::lower_bound(universe_.begin(), universe_.end(), e);
        classes[static_cast<std::size_t>(color_[static_cast<std::size_t>(it - universe_.begin())])]
            .push_back(e);
      }
      for (Set& a : classes) {
        a = make_set(std::move(a));
        for (const Element& g : translate_family(a, ctx_.grp)) {
          Set u = intersect_translate(a, g, ctx_.grp);
          if (!u.empty()) next.push_back(std::move(u));
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    auto sub = solve_family(next, k_ - 1, ctx_);
    if (!sub) return false;
    child_ = std::move(*sub);
    return true;
  }

  const std::vector<Set>& sets_;
  Set universe_;
  int k_;
  SearchContext& ctx_;
  std::vector<int> color_;
  std::vector<std::vector<std::size_t>> member_sets_;
  std::vector<std::map<Element, int>> quotient_counts_;
  std::optional<SelfDimCertificate> child_;
};

// Finds one certificate of depth k that verifies every set in the family, or
// nullopt. Components that share no elements are solved independently and the
// resulting certificates are merged part-index-wise.
std::optional<SelfDimCertificate> solve_family(const std::vector<Set>& family_in, int k,
                                               SearchContext& ctx) {
  std::vector<Set> family;
  for (const Set& s : family_in) {
    if (!s.empty()) family.push_back(s);
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  if (family.empty()) return trivial_cert(k, ctx.c);
  if (k == 0) {
    for (const Set& t : family) {
      if (static_cast<std::int64_t>(t.size()) > ctx.c) return std::nullopt;
    }
    return SelfDimCertificate::leaf(ctx.c);
  }

  // Canonical translation for memoization: move the least element of the
  // union to the identity.
  Element least = family.front().front();
  for (const Set& s : family) least = std::min(least, s.front());
  const Element g0inv = ctx.grp.inv(least);
  std::vector<Set> canon;
  canon.reserve(family.size());
  for (const Set& s : family) canon.push_back(translate_set(s, g0inv, ctx.grp.identity(), ctx.grp));
  std::sort(canon.begin(), canon.end());
  const std::string key = family_key(canon, k);
  const auto hit = ctx.memo.find(key);
  if (hit != ctx.memo.end()) {
    if (!hit->second) return std::nullopt;
    return translate_certificate(*hit->second, least, ctx.grp.identity(), ctx.grp);
  }

  // Split into connected components over shared elements.
  std::vector<int> comp(canon.size(), -1);
  int ncomp = 0;
  for (std::size_t i = 0; i < canon.size(); ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = ncomp;
    std::vector<std::size_t> stack = {i};
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < canon.size(); ++j) {
        if (comp[j] >= 0) continue;
        bool shares = false;
        for (const Element& e : canon[j]) {
          if (set_contains(canon[cur], e)) {
            shares = true;
            break;
          }
        }
        if (shares) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
      }
    }
    ++ncomp;
  }

  std::vector<SelfDimCertificate> pieces;
  bool solved = true;
  for (int c = 0; c < ncomp && solved; ++c) {
    std::vector<Set> sets;
    std::vector<Element> universe;
    for (std::size_t i = 0; i < canon.size(); ++i) {
      if (comp[i] != c) continue;
      sets.push_back(canon[i]);
      universe.insert(universe.end(), canon[i].begin(), canon[i].end());
    }
    ComponentColoring coloring(sets, make_set(std::move(universe)), k, ctx);
    auto piece = coloring.run();
    if (!piece) {
      solved = false;
    } else {
      pieces.push_back(std::move(*piece));
    }
  }

  std::optional<SelfDimCertificate> result;
  if (solved) result = combine_certs(pieces, k, ctx.c);
  ctx.memo.emplace(key, result);
  if (!result) return std::nullopt;
  return translate_certificate(*result, least, ctx.grp.identity(), ctx.grp);
}

// Restricted growth strings: partitions of {0..n-1} into at most maxc
// unlabeled blocks, in lexicographic order.
bool next_rgs(std::vector<int>& a, int maxc) {
  const std::size_t n = a.size();
  for (std::size_t i = n; i-- > 1;) {
    int max_before = 0;
    for (std::size_t j = 0; j < i; ++j) max_before = std::max(max_before, a[j]);
    if (a[i] < std::min(maxc - 1, max_before + 1)) {
      ++a[i];
      for (std::size_t j = i + 1; j < n; ++j) a[j] = 0;
      return true;
    }
  }
  return false;
}

std::optional<SelfDimCertificate> search_exact_k(const Set& s, int k, SearchContext& ctx) {
  if (k == 0) {
    if (static_cast<std::int64_t>(s.size()) <= ctx.c) return SelfDimCertificate::leaf(ctx.c);
    return std::nullopt;
  }
  std::vector<int> labels(s.size(), 0);
  do {
    int nparts = 0;
    for (int l : labels) nparts = std::max(nparts, l + 1);
    std::vector<Set> parts(static_cast<std::size_t>(nparts));
    for (std::size_t i = 0; i < s.size(); ++i) {
      parts[static_cast<std::size_t>(labels[i])].push_back(s[i]);
    }
    std::vector<SelfDimCertificate> children;
    bool ok = true;
    for (const Set& p : parts) {
      std::vector<Set> fam;
      for (const Element& g : translate_family(p, ctx.grp)) {
        Set u = intersect_translate(p, g, ctx.grp);
        if (!u.empty()) fam.push_back(std::move(u));
      }
      auto child = solve_family(fam, k - 1, ctx);
      if (!child) {
        ok = false;
        break;
      }
      children.push_back(std::move(*child));
    }
    if (ok) {
      std::vector<std::vector<Element>> top(parts.begin(), parts.end());
      return SelfDimCertificate::node(ctx.c, std::move(top),
                                      combine_certs(children, k - 1, ctx.c));
    }
  } while (next_rgs(labels, static_cast<int>(ctx.c)));
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<int, SelfDimCertificate>> selfdim_search(const SetPredicate& s,
                                                                 std::int64_t c, int k_max,
                                                                 const Group& grp) {
  const Set target = make_set(s.sorted_elements());
  if (target.size() > 12) {
    throw PreconditionError("selfdim_search: |S| = " + std::to_string(target.size()) +
                            " > 12 (hard cap)");
  }
  if (c < 1 || c > 3) {
    throw PreconditionError("selfdim_search: C = " + std::to_string(c) + " outside [1, 3]");
  }
  if (k_max < 0 || k_max > 3) {
    throw PreconditionError("selfdim_search: k_max = " + std::to_string(k_max) +
                            " outside [0, 3]");
  }
  SearchContext ctx{grp, c, {}};
  for (int k = 0; k <= k_max; ++k) {
    auto cert = search_exact_k(target, k, ctx);
    if (cert) return std::make_pair(k, std::move(*cert));
  }
  return std::nullopt;
}

nlohmann::json certificate_to_json(const SelfDimCertificate& cert, const Group& grp) {
  if (cert.is_leaf()) return nlohmann::json{{"leaf", cert.complexity()}};
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : cert.parts()) {
    nlohmann::json part = nlohmann::json::array();
    for (const Element& e : p) part.push_back(element_to_json(e, grp));
    parts.push_back(std::move(part));
  }
  return nlohmann::json{{"node",
                         {{"C", cert.complexity()},
                          {"parts", std::move(parts)},
                          {"child", certificate_to_json(cert.child(), grp)}}}};
}

SelfDimCertificate certificate_from_json(const nlohmann::json& j, const Group& grp) {
  if (j.is_object() && j.contains("leaf")) {
    return SelfDimCertificate::leaf(j.at("leaf").get<std::int64_t>());
  }
  if (j.is_object() && j.contains("node")) {
    const auto& n = j.at("node");
    if (!n.contains("C") || !n.contains("parts") || !n.contains("child"))
      throw ParseError("certificate: node needs C, parts, child");
    std::vector<std::vector<Element>> parts;
    for (const auto& part : n.at("parts")) {
      std::vector<Element> p;
      for (const auto& e : part) p.push_back(element_from_json(e, grp));
      parts.push_back(std::move(p));
    }
    return SelfDimCertificate::node(n.at("C").get<std::int64_t>(), std::move(parts),
                                    certificate_from_json(n.at("child"), grp));
  }
  throw ParseError("certificate: expected {\"leaf\": C} or {\"node\": {...}}");
}

}  // namespace aclab
