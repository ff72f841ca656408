// Copyright 2026 The sgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <benchmark/benchmark.h>

#include "sgame/bob_strategies.h"
#include "sgame/escape.h"
#include "sgame/escape_io.h"
#include "sgame/fractals.h"
#include "sgame/linforms.h"
#include "sgame/verify.h"

namespace sgame {
namespace {

void BM_ValidateBobMove(benchmark::State& state) {
  GameParams p;
  p.variant = Variant::kHyperplanePercentage;
  p.beta = Real(1) / 4;
  p.dim = 2;
  p.max_rounds = 1;
  Referee ref(p);
  Ball cur({Real(0), Real(0)}, Real(1));
  Turn alice;
  alice.player = Player::kAlice;
  for (int k = 0; k < state.range(0); ++k)
    alice.slabs.emplace_back(Vec{Real(1), Real(0)}, Real(k) / 10 - Real(1) / 2, Real(1) / 4);
  Ball next({Real("0.2"), Real("0.1")}, Real(1) / 4);
  for (auto _ : state) benchmark::DoNotOptimize(ref.validate_bob_move(cur, alice, next));
}
BENCHMARK(BM_ValidateBobMove)->Arg(1)->Arg(4)->Arg(8);

void BM_EscapeGame(benchmark::State& state) {
  const LacunarySystem sys = system_from_json(nlohmann::json::parse(
      R"({"matrices": {"kind": "power", "base": 3}, "targets": {"kind": "lattice", "shift": [0]}})"));
  const Real beta = Real(1) / 4;
  const Ball first({Real("0.31")}, Real("1e-3"));
  for (auto _ : state) {
    EscapeStrategy alice(sys, {beta, {}, 4096});
    RandomBob bob(first, 1);
    GameParams p;
    p.variant = Variant::kHyperplanePercentage;
    p.beta = beta;
    p.dim = 1;
    p.detect_no_legal_move = false;
    p.stop_radius = ipow(beta, 2L * alice.schedule().r * state.range(0)) * first.radius();
    benchmark::DoNotOptimize(Referee(p).play(alice, bob));
  }
}
BENCHMARK(BM_EscapeGame)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_GradMinor(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<Vec> raw(k, Vec(2 * k));
  for (Vec& v : raw)
    for (Real& x : v) x = g(rng);
  MinorSystem sys(k, k, MinorFamily::kColumns, gram_schmidt_extend(raw, k));
  Vec a(k * k), d(k * k);
  for (Real& x : a) x = g(rng);
  for (Real& x : d) x = g(rng);
  LinearFormsPoint pa(k, k, a), pd(k, k, d);
  const MinorIndex w = minor_indices(k, k).front();
  for (auto _ : state) benchmark::DoNotOptimize(sys.grad_minor(pa, w, pd));
}
BENCHMARK(BM_GradMinor)->Arg(2)->Arg(3);

void BM_EnumerateSolutions(benchmark::State& state) {
  WindowParams w(1, 1, Real(4), Real(1), Real("0.3"));
  Ball b({Real("0.3")}, Real("0.01"));
  const int j = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_solutions(b, w, Phase::kY, j));
}
BENCHMARK(BM_EnumerateSolutions)->Arg(3)->Arg(5);

void BM_BadnessInf(benchmark::State& state) {
  const DMat a = {{0.6180339887498949}};
  for (auto _ : state) benchmark::DoNotOptimize(badness_inf(a, {0.0}, state.range(0)));
}
BENCHMARK(BM_BadnessInf)->Arg(1000)->Arg(100000);

void BM_BoxCount(benchmark::State& state) {
  const auto k = limit_set_sample(builtin_ifs("example34"), static_cast<int>(state.range(0)), {0, 0});
  const auto scales = geometric_scales(0.3, 3e-4, 4);
  for (auto _ : state) benchmark::DoNotOptimize(box_count_dimension(k, scales));
}
BENCHMARK(BM_BoxCount)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sgame

BENCHMARK_MAIN();
