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

#ifndef ACLAB_CERTIFICATE_HPP_
#define ACLAB_CERTIFICATE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aclab/dist.hpp"
#include "aclab/group.hpp"

namespace aclab {

// A machine-checkable witness that a finite set has self-translate dimension
// <= k of complexity C.
//
//   Leaf{C}                claims |S| <= C (dimension <= 0).
//   Node{C, parts, child}  claims S = S_1 u ... u S_C and, for every i and
//                          every g != id, that S_i n gS_i is witnessed by
//                          `child`.
//
// The child is a single template shared by all (i, g) branches: when it is
// applied to a subset T, its parts are restricted to T. A verified
// certificate therefore exhibits a concrete decomposition for every branch,
// and the claimed dimension is the certificate depth. Every level carries the
// same complexity constant C.
class SelfDimCertificate {
 public:
  static SelfDimCertificate leaf(std::int64_t complexity);
  static SelfDimCertificate node(std::int64_t complexity,
                                 std::vector<std::vector<Element>> parts,
                                 SelfDimCertificate child);

  bool is_leaf() const { return child_ == nullptr; }
  std::int64_t complexity() const { return complexity_; }
  int depth() const;  // the claimed dimension k
  const std::vector<std::vector<Element>>& parts() const { return parts_; }
  const SelfDimCertificate& child() const { return *child_; }

 private:
  SelfDimCertificate(std::int64_t complexity, std::vector<std::vector<Element>> parts,
                     std::shared_ptr<const SelfDimCertificate> child)
      : complexity_(complexity), parts_(std::move(parts)), child_(std::move(child)) {}

  std::int64_t complexity_ = 1;
  std::vector<std::vector<Element>> parts_;              // sorted, deduplicated
  std::shared_ptr<const SelfDimCertificate> child_;      // null for Leaf
};

struct VerifyFrame {
  int part_index = 0;  // 0-based
  Element translate;   // the g whose branch failed
};

struct VerifyResult {
  bool ok = false;
  std::vector<VerifyFrame> path;  // root-to-failure branch
  std::string reason;
  std::string to_string() const;
};

// The finite set of translates g that can give S n gS != {} for finite S:
// exactly the nonidentity ordered quotients a b^-1 with a, b in S.
std::vector<Element> translate_family(const std::vector<Element>& set, const Group& g);

// Checks the recursive conditions for every part and every g in the effective
// translate family. At the top level the parts must union to exactly S;
// deeper levels restrict the template's parts to the branch set.
VerifyResult verify_certificate(const SetPredicate& S, const SelfDimCertificate& cert,
                                const Group& g);

// Transports a certificate along x -> g1 x g2; a verifying certificate for S
// becomes a verifying certificate for g1 S g2.
SelfDimCertificate translate_certificate(const SelfDimCertificate& cert, const Element& g1,
                                         const Element& g2, const Group& g);

// Part-wise restriction of the top level to a subset of S.
SelfDimCertificate restrict_certificate(const SelfDimCertificate& cert, const SetPredicate& subset);

// Least k <= k_max admitting a verifying certificate of complexity C, found
// by exhaustive search over <= C-part partitions with memoization on
// canonically translated subproblems. Hard caps: |S| <= 12, C <= 3,
// k_max <= 3; anything bigger is an error, never a silent truncation.
std::optional<std::pair<int, SelfDimCertificate>> selfdim_search(const SetPredicate& S,
                                                                 std::int64_t C, int k_max,
                                                                 const Group& g);

nlohmann::json certificate_to_json(const SelfDimCertificate& cert, const Group& g);
SelfDimCertificate certificate_from_json(const nlohmann::json& j, const Group& g);

}  // namespace aclab

#endif  // ACLAB_CERTIFICATE_HPP_
