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

#include <gtest/gtest.h>

#include "sgame/bob_strategies.h"
#include "sgame/escape.h"
#include "sgame/escape_io.h"
#include "sgame/verify.h"
#include "support.h"

namespace sgame {
namespace {

using nlohmann::json;
using testing::oracle;
using testing::rat;

LacunarySystem triadic() {
  return system_from_json(json::parse(
      R"({"matrices": {"kind": "power", "base": 3}, "targets": {"kind": "lattice", "shift": [0]}})"));
}

TEST(Lacunary, FibonacciRatioInfimum) {
  const json& o = oracle()["fibonacci_lacunarity"];
  std::vector<long> fib = {2, 3};
  while (fib.size() < 40) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  json list = json::array();
  for (long f : fib) list.push_back(f);
  LacunarySystem s = system_from_json(
      {{"matrices", {{"kind", "explicit"}, {"list", list}}}, {"targets", {{"kind", "lattice"}, {"shift", {0}}}}});
  LacunarityReport r = check_lacunary(s, o["indices"].get<int>());
  EXPECT_TRUE(testing::close(r.q, rat(o["q"]), 1e-30));
  EXPECT_EQ(r.argmin, o["argmin"].get<long>());
}

TEST(Lacunary, RepeatedNormIsRejected) {
  LacunarySystem s = system_from_json(json::parse(
      R"({"matrices": {"kind": "explicit", "list": [3, 3, 9]}, "targets": {"kind": "lattice", "shift": [0]}})"));
  try {
    check_lacunary(s, 3);
    FAIL() << "expected NonLacunary";
  } catch (const NonLacunary& e) {
    EXPECT_EQ(e.index(), 1);
  }
}

TEST(Lacunary, ShrinkingLatticeIsNotDiscrete) {
  LacunarySystem s = system_from_json(json::parse(
      R"({"matrices": {"kind": "power", "base": 3}, "targets": {"kind": "scaled_lattice", "ratio": 2, "shift": [0]}})"));
  EXPECT_THROW(check_uniformly_discrete(s, 40, Ball({Real(0)}, Real(2)), Real("1e-6")), NotDiscrete);
  EXPECT_TRUE(testing::close(check_uniformly_discrete(triadic(), 8, Ball({Real(0)}, Real(2))), Real(1)));
}

TEST(Schedule, ComputeNR) {
  for (const json& row : oracle()["compute_n_r"]) {
    NR nr = compute_n_r(rat(row["beta"]), rat(row["q"]));
    EXPECT_EQ(nr.n, row["n"].get<int>()) << row.dump();
    EXPECT_EQ(nr.r, row["r"].get<int>()) << row.dump();
  }
  EXPECT_THROW(compute_n_r(Real(1) / 4, Real(1)), Error);
}

TEST(Schedule, WindowsAreLeftClosed) {
  for (const json& row : oracle()["window_of"]) {
    WindowSchedule w{rat(row["beta"]), 1, row["r"].get<int>(), Real(row["t1"].get<int>())};
    EXPECT_EQ(w.window_of(Real(row["t"].get<long>())), row["j"].get<int>()) << row.dump();
  }
}

TEST(Schedule, FirstBallGate) {
  for (const json& row : oracle()["first_ball_gate"]) {
    WindowSchedule w{rat(row["beta"]), 1, row["r"].get<int>(), Real(row["t1"].get<int>())};
    EXPECT_TRUE(testing::close(first_ball_gate_bound(w, Real(row["delta"].get<int>())), rat(row["gate"])))
        << row.dump();
  }
  WindowSchedule w{Real(1) / 4, 1, 3, Real(1)};
  EXPECT_TRUE(first_ball_gate(w, Real(1), Real("1e-3")));
  EXPECT_FALSE(first_ball_gate(w, Real(1), Real(1)));
}

TEST(Schedule, TheoreticalC) {
  for (const json& row : oracle()["theoretical_c"]) {
    WindowSchedule w{rat(row["beta"]), 1, row["r"].get<int>(), Real(row["t1"].get<int>())};
    EXPECT_TRUE(testing::close(theoretical_c(w, rat(row["rho1"]), rat(row["delta"])), rat(row["c"])))
        << row.dump();
  }
}

TEST(StageSlabs, PlaneThroughNearestPreimage) {
  LacunarySystem s = triadic();
  IndexData d = index_data(s, 2);
  Ball b({Real("0.45")}, Real("1e-4"));
  auto slabs = stage_slabs(s, {d}, b, Real(1), Real("1e-5"));
  ASSERT_EQ(slabs.size(), 1u);
  EXPECT_TRUE(testing::close(abs(slabs[0].slab.normal()[0]), Real(1)));
  // 9 * 0.45 lies next to the target 4, so the plane passes through 4/9.
  Real plane = slabs[0].slab.offset() * slabs[0].slab.normal()[0];
  EXPECT_TRUE(testing::close(plane, Real(4) / 9));
  // 9 * 0.5 is a quarter or more from every target: nothing to delete.
  EXPECT_TRUE(stage_slabs(s, {d}, Ball({Real("0.5")}, Real("1e-4")), Real(1), Real("1e-5")).empty());
}

TEST(StageSlabs, FollowupKeepsOnlyMetSlabs) {
  StageSlab a{1, {Real(0)}, HyperplaneSlab(Vec{Real(1)}, Real(0), Real("0.01"))};
  StageSlab b{2, {Real(0)}, HyperplaneSlab(Vec{Real(1)}, Real(5), Real("0.01"))};
  auto left = halving_followup({a, b}, Ball({Real("0.1")}, Real("0.2")));
  ASSERT_EQ(left.size(), 1u);
  EXPECT_EQ(left[0].k, 1);
}

TEST(BestApproximations, FibonacciAndPell) {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  auto ba = best_approximations({{phi}}, 100);
  std::vector<long> qs;
  for (auto& b : ba) qs.push_back(b.q[0]);
  EXPECT_EQ(qs, oracle()["best_approximations"]["phi"].get<std::vector<long>>());
  qs.clear();
  for (auto& b : best_approximations({{std::sqrt(2.0)}}, 100)) qs.push_back(b.q[0]);
  EXPECT_EQ(qs, oracle()["best_approximations"]["sqrt2"].get<std::vector<long>>());
}

TEST(BestApproximations, GreedyLacunarySubsequence) {
  auto idx = lacunary_subsequence({1, 2, 3, 5, 8, 13}, 2);
  std::vector<std::size_t> want = oracle()["lacunary_subsequence"].get<std::vector<std::size_t>>();
  EXPECT_EQ(idx, want);
}

TEST(SystemJson, RejectsUnknownKeysAndBadShapes) {
  EXPECT_THROW(system_from_json(json::parse(
                   R"({"matrices": {"kind": "power", "base": 3}, "targets": {"kind": "lattice", "shift": [0]}, "beta": 1})")),
               Error);
  EXPECT_THROW(system_from_json(json::parse(R"({"matrices": {"kind": "power", "base": 3}})")), Error);
}

struct EscapeRun {
  GameTranscript t;
  std::unique_ptr<EscapeStrategy> alice;
};

EscapeRun play(BobStrategy& bob, int stages) {
  EscapeRun run;
  run.alice = std::make_unique<EscapeStrategy>(triadic(), EscapeConfig{Real(1) / 4, {}, 4096});
  GameParams p;
  p.variant = Variant::kHyperplanePercentage;
  p.beta = Real(1) / 4;
  p.dim = 1;
  p.detect_no_legal_move = false;
  p.max_rounds = 400;
  p.stop_radius = ipow(Real(1) / 4, 2L * stages) * Real("1e-3");
  run.t = Referee(p).play(*run.alice, bob);
  return run;
}

// Property: every index of every completed window stays c - t_k rho away
// from the integers at the final center.
void expect_sound(const EscapeRun& r, int min_stages) {
  ASSERT_EQ(r.t.outcome, Outcome::kStopped) << r.t.diagnostic;
  ASSERT_GE(static_cast<int>(r.alice->certificates().size()), min_stages);
  const Ball& f = r.t.current_ball();
  LacunarySystem s = triadic();
  for (const StageCertificate& c : r.alice->certificates())
    for (long k : c.ks)
      EXPECT_GE(escape_distance(f.center(), s, k), r.alice->c() - index_data(s, k).t * f.radius())
          << "k = " << k;
}

TEST(EscapeProperty, RandomBobSeeds) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    RandomBob bob(Ball({Real("0.3")}, Real("1e-3")), seed);
    expect_sound(play(bob, 6), 6);
  }
}

TEST(EscapeProperty, AdversarialBobs) {
  SlabHuggerBob hugger(Ball({Real("0.3")}, Real("1e-3")), 3);
  expect_sound(play(hugger, 6), 6);
  TargetSeekingBob seeker(Ball({Real("0.3334")}, Real("1e-3")), {Real(1) / 3});
  expect_sound(play(seeker, 6), 6);
}

TEST(EscapeProperty, ConstantMatchesFormula) {
  RandomBob bob(Ball({Real("0.3")}, Real("1e-3")), 1);
  EscapeRun r = play(bob, 2);
  ASSERT_TRUE(r.alice->gated());
  EXPECT_EQ(r.alice->c(), theoretical_c(r.alice->schedule(), Real("1e-3"), Real(1)));
}

TEST(Escape, LargeFirstBallWaitsForGate) {
  RandomBob bob(Ball({Real("0.3")}, Real("0.2")), 2);
  EscapeRun r = play(bob, 6);
  ASSERT_EQ(r.t.outcome, Outcome::kStopped) << r.t.diagnostic;
  EXPECT_TRUE(r.alice->gated());
  EXPECT_LT(r.alice->rho1(), first_ball_gate_bound(r.alice->schedule(), r.alice->delta()));
}

}  // namespace
}  // namespace sgame
