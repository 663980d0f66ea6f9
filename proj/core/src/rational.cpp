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

#include "aclab/rational.hpp"

#include <cctype>

namespace aclab {

Rat rat_from_string(std::string_view s) {
  if (s.empty()) throw ParseError("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+')) {
      throw ParseError("bad rational literal: '" + std::string(s) + "'");
    }
  }
  Rat r;
  if (r.set_str(std::string(s), 10) != 0) {
    throw ParseError("bad rational literal: '" + std::string(s) + "'");
  }
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double rat_to_double(const Rat& r) { return r.get_d(); }

Int pow_int(const Int& base, unsigned long e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Rat pow_rat(const Rat& base, unsigned long e) {
  Rat out(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
  out.canonicalize();
  return out;
}

namespace {

// Least N with N^b * den(x) >= num(x) * denom^b.
Int root_numerator_up(const Rat& x, unsigned long b, const Int& denom) {
  const Int target = x.get_num() * pow_int(denom, b);
  const Int& q = x.get_den();
  Int t = target / q;  // floor
  Int n;
  mpz_root(n.get_mpz_t(), t.get_mpz_t(), b);
  while (pow_int(n, b) * q < target) ++n;
  while (n > 0 && pow_int(n - 1, b) * q >= target) --n;
  return n;
}

// Greatest N >= 0 with N^b * den(x) <= num(x) * denom^b.
Int root_numerator_down(const Rat& x, unsigned long b, const Int& denom) {
  const Int target = x.get_num() * pow_int(denom, b);
  const Int& q = x.get_den();
  Int t = target / q;
  Int n;
  mpz_root(n.get_mpz_t(), t.get_mpz_t(), b);
  while (pow_int(n + 1, b) * q <= target) ++n;
  while (n > 0 && pow_int(n, b) * q > target) --n;
  return n;
}

void require_nonnegative(const Rat& x, const char* who) {
  if (x < 0) throw PreconditionError(std::string(who) + ": negative argument " + rat_to_string(x));
}

}  // namespace

Rat sqrt_up(const Rat& x, const Int& denom) { return nth_root_up(x, 2, denom); }
Rat sqrt_down(const Rat& x, const Int& denom) { return nth_root_down(x, 2, denom); }

Rat nth_root_up(const Rat& x, unsigned long b, const Int& denom) {
  require_nonnegative(x, "nth_root_up");
  if (b == 0) throw PreconditionError("nth_root_up: b = 0");
  if (b == 1 || x == 0) return x;
  Rat out(root_numerator_up(x, b, denom), denom);
  out.canonicalize();
  return out;
}

Rat nth_root_down(const Rat& x, unsigned long b, const Int& denom) {
  require_nonnegative(x, "nth_root_down");
  if (b == 0) throw PreconditionError("nth_root_down: b = 0");
  if (b == 1 || x == 0) return x;
  Rat out(root_numerator_down(x, b, denom), denom);
  out.canonicalize();
  return out;
}

bool exact_nth_root(const Rat& x, unsigned long b, Rat* root) {
  if (x < 0 || b == 0) return false;
  if (b == 1 || x == 0 || x == 1) {
    *root = x;
    return true;
  }
  Int u, v;
  const int num_exact = mpz_root(u.get_mpz_t(), x.get_num().get_mpz_t(), b);
  if (!num_exact) return false;
  const int den_exact = mpz_root(v.get_mpz_t(), x.get_den().get_mpz_t(), b);
  if (!den_exact) return false;
  Rat r(u, v);
  r.canonicalize();
  *root = r;
  return true;
}

Rat nth_root_up_rel(const Rat& x, unsigned long b, unsigned rel_bits) {
  require_nonnegative(x, "nth_root_up_rel");
  Rat exact;
  if (exact_nth_root(x, b, &exact)) return exact;
  const Rat tol = Rat(1) + Rat(Int(1), pow_int(2, rel_bits));
  Int denom = 1000000;
  for (;;) {
    const Rat up = nth_root_up(x, b, denom);
    const Rat down = nth_root_down(x, b, denom);
    if (down > 0 && up <= down * tol) return up;
    denom *= denom;  // square the precision each retry
  }
}

}  // namespace aclab
