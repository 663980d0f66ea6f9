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

#ifndef ACLAB_RATIONAL_HPP_
#define ACLAB_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aclab {

// All probabilities and certified bounds in this library are exact rationals;
// no floating point ever enters a comparison that a result depends on.
using Int = mpz_class;
using Rat = mpq_class;

// Thrown when a documented precondition fails. The message names the violated
// inequality with its exact values; the CLI maps this to exit code 2.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed input files / spec strings; CLI maps this to exit 2.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// mpq_class does not canonicalize two-argument constructions; every ratio
// built from a numerator/denominator pair must go through here.
inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat rat_from_string(std::string_view s);        // "p/q" or "p"
std::string rat_to_string(const Rat& r);        // canonical, "p/q" or "p"
double rat_to_double(const Rat& r);

Int pow_int(const Int& base, unsigned long e);
Rat pow_rat(const Rat& base, unsigned long e);

// Directed square roots on the grid {N/denom}: sqrt_up is the least N/denom
// with (N/denom)^2 >= x, sqrt_down the greatest with (N/denom)^2 <= x.
// Exact square roots of on-grid rationals come out exact after reduction.
Rat sqrt_up(const Rat& x, const Int& denom);
Rat sqrt_down(const Rat& x, const Int& denom);

// Same for b-th roots.
Rat nth_root_up(const Rat& x, unsigned long b, const Int& denom);
Rat nth_root_down(const Rat& x, unsigned long b, const Int& denom);

// True iff x = (u/v)^b for a rational u/v; if so, *root receives u/v.
bool exact_nth_root(const Rat& x, unsigned long b, Rat* root);

// Upper bound on x^(1/b), exact when x is a perfect b-th power, otherwise
// rounded up with relative error at most 2^-rel_bits.
Rat nth_root_up_rel(const Rat& x, unsigned long b, unsigned rel_bits);

}  // namespace aclab

#endif  // ACLAB_RATIONAL_HPP_
