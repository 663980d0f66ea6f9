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

#include <benchmark/benchmark.h>

#include "aclab/bounds.hpp"
#include "aclab/certificate.hpp"
#include "aclab/dist.hpp"
#include "aclab/engine.hpp"
#include "aclab/miner.hpp"
#include "aclab/scenario.hpp"

namespace {

using namespace aclab;

void BM_walk_law_coins(benchmark::State& state) {
  const Group z = Group::free_abelian(1);
  const Dist coin = Dist::uniform(z, {Element({1}), Element({-1})});
  const std::vector<Dist> mus(static_cast<std::size_t>(state.range(0)), coin);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho(walk_law(mus)));
  }
}
BENCHMARK(BM_walk_law_coins)->Arg(16)->Arg(64)->Arg(256);

void BM_walk_law_lazy_plane(benchmark::State& state) {
  const Group z2 = Group::free_abelian(2);
  const Dist lazy = Dist::uniform(z2, {Element({0, 0}), Element({1, 0}), Element({-1, 0}),
                                       Element({0, 1}), Element({0, -1})});
  const std::vector<Dist> mus(static_cast<std::size_t>(state.range(0)), lazy);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho(walk_law(mus)));
  }
}
BENCHMARK(BM_walk_law_lazy_plane)->Arg(16)->Arg(32)->Arg(64);

void BM_certified_pipeline(benchmark::State& state) {
  const Group z2 = Group::free_abelian(2);
  Rng rng(7);
  std::vector<Dist> mus;
  std::vector<Element> vs;
  for (int i = 0; i < 10; ++i) {
    const Element v({rng.uniform(1, 900) * 3 + 1, rng.uniform(1, 900) * 7 + 2});
    vs.push_back(v);
    mus.push_back(Dist::uniform(z2, {v, z2.inv(v)}));
  }
  Element base = z2.identity();
  for (const Element& v : vs) base = z2.mul(base, v);
  const std::vector<Element> set = {base, z2.mul(base, z2.pow(z2.inv(vs[0]), 2)),
                                    z2.mul(base, z2.pow(z2.inv(vs[1]), 2))};
  const SetPredicate s = SetPredicate::explicit_set(z2, set);
  const SelfDimCertificate cert = SelfDimCertificate::node(1, {set}, SelfDimCertificate::leaf(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(certified_rhoS(mus, cert, s).sound);
  }
}
BENCHMARK(BM_certified_pipeline);

void BM_verify_polygon_certificate(benchmark::State& state) {
  const Group z2 = Group::free_abelian(2);
  const auto poly = gen_convex_polygon(11, static_cast<int>(state.range(0)));
  const SetPredicate s = SetPredicate::explicit_set(z2, poly);
  const SelfDimCertificate cert =
      SelfDimCertificate::node(2, {s.sorted_elements()}, SelfDimCertificate::leaf(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_certificate(s, cert, z2).ok);
  }
}
BENCHMARK(BM_verify_polygon_certificate)->Arg(10)->Arg(26)->Arg(50);

void BM_selfdim_search_interval(benchmark::State& state) {
  const Group z = Group::free_abelian(1);
  std::vector<Element> elems;
  for (std::int64_t i = 0; i < state.range(0); ++i) elems.push_back(Element({i}));
  const SetPredicate s = SetPredicate::explicit_set(z, elems);
  for (auto _ : state) {
    benchmark::DoNotOptimize(selfdim_search(s, 2, 3, z).has_value());
  }
}
BENCHMARK(BM_selfdim_search_interval)->Arg(6)->Arg(8)->Arg(10);

void BM_find_grid(benchmark::State& state) {
  const Group z = Group::free_abelian(1);
  std::vector<Element> elems;
  for (std::int64_t i = 0; i < 12; ++i) elems.push_back(Element({i * i}));  // Sidon-ish
  const SetPredicate s = SetPredicate::explicit_set(z, elems);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_grid(s, 2, static_cast<int>(state.range(0)), z).exhausted);
  }
}
BENCHMARK(BM_find_grid)->Arg(2)->Arg(3);

void BM_js_bound_check(benchmark::State& state) {
  const Group z2 = Group::free_abelian(2);
  std::vector<Element> gs;
  for (int i = 0; i < state.range(0); ++i) {
    gs.push_back(i % 2 ? Element({0, 1}) : Element({1, 0}));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(js_bound_check(gs, z2).holds);
  }
}
BENCHMARK(BM_js_bound_check)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
