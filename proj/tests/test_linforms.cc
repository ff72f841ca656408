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
#include "sgame/linforms.h"
#include "sgame/verify.h"
#include "support.h"

namespace sgame {
namespace {

using nlohmann::json;
using testing::close;
using testing::oracle;
using testing::rat;

TEST(Windows, BoundsMatchOracle) {
  for (const json& o : oracle()["windows"]) {
    WindowParams w(o["m"].get<int>(), o["n"].get<int>(), rat(o["r"]), Real(1), Real(1));
    EXPECT_TRUE(close(w.delta(), rat(o["delta"]), 1e-35));
    EXPECT_TRUE(close(w.delta_t(), rat(o["delta_t"]), 1e-35));
    EXPECT_TRUE(close(w.observation_constant(), rat(o["observation_constant"]), 1e-35));
    for (int i = 0; i < 4; ++i) {
      EXPECT_TRUE(close(w.x_bound(i), rat(o["x_bound"][i]), 1e-35));
      EXPECT_TRUE(close(w.ax_bound(i), rat(o["ax_bound"][i]), 1e-35));
      EXPECT_TRUE(close(w.y_bound(i), rat(o["y_bound"][i]), 1e-35));
      EXPECT_TRUE(close(w.by_bound(i), rat(o["by_bound"][i]), 1e-35));
      EXPECT_TRUE(close(w.k_threshold(i), rat(o["k_threshold"][i]), 1e-35));
      EXPECT_TRUE(close(w.h_threshold(i), rat(o["h_threshold"][i]), 1e-35));
    }
  }
}

TEST(Windows, OneByOneConstants) {
  WindowParams w(1, 1, Real(4), Real(1), Real(1));
  EXPECT_EQ(w.k_threshold(0), Real(1) / 4);
  EXPECT_EQ(w.h_threshold(0), Real(1) / 16);
  EXPECT_EQ(w.k_threshold(1), Real(1) / 64);
  EXPECT_EQ(w.observation_constant(), ipow(Real(4), -10));
}

TEST(Lists, BaseCaseAndZeroMatrix) {
  WindowParams w(1, 1, Real(4), Real(1), Real(1));
  LinearFormsPoint zero(1, 1, {Real(0)});
  EXPECT_FALSE(satisfies_list(zero, w, 1, 0, {1, 0}));  // |x| >= 1 > delta R^{M lambda}
  EXPECT_TRUE(satisfies_list(zero, w, 2, 0, {1, 0}));
  EXPECT_THROW(satisfies_list(zero, w, 5, 0, {1, 0}), Error);
  EXPECT_THROW(satisfies_list(zero, w, 1, 0, {1}), Error);
}

TEST(Certificates, BaseIndexAlwaysCertifies) {
  WindowParams w(1, 1, Real(4), Real(1), Real(1));
  for (const char* c : {"0", "0.5", "0.123"}) {
    auto cert = certify_no_solution(Ball({Real(c)}, Real("0.3")), w, Phase::kX, 0);
    EXPECT_TRUE(cert.ok()) << c;
    EXPECT_EQ(cert.enumerated, 0);
  }
}

TEST(Certificates, ZeroMatrixHasWitnessOnceWindowOpens) {
  WindowParams w(1, 1, Real(4), Real(1), Real(1));
  int i = 0;
  while (!(w.x_bound(i) > 1)) ++i;
  auto cert = certify_no_solution(Ball({Real(0)}, Real("1e-9")), w, Phase::kX, i);
  ASSERT_FALSE(cert.ok());
  ASSERT_TRUE(cert.witness.has_value());
  EXPECT_EQ((*cert.witness)[1], 0);
  LinearFormsPoint zero(1, 1, {Real(0)});
  EXPECT_TRUE(satisfies_list(zero, w, 1, i, *cert.witness));
  EXPECT_TRUE(satisfies_list(zero, w, 2, i, *cert.witness));
}

TEST(Certificates, BudgetIsEnforced) {
  WindowParams w(1, 1, Real(4), Real(1), Real(1));
  EXPECT_THROW(certify_no_solution(Ball({Real(0)}, Real("1e-9")), w, Phase::kX, 12, -1, {100}),
               EnumerationTooLarge);
}

TEST(EnumerateS, MatchesOracle) {
  for (const json& o : oracle()["enumerate_s"]) {
    WindowParams w(1, 1, Real(o["r"].get<int>()), Real(1), Real(1));
    auto got = enumerate_S(Ball({rat(o["center"])}, rat(o["radius"])), w, o["j"].get<int>());
    std::sort(got.begin(), got.end());
    auto want = o["solutions"].get<std::vector<IntVec>>();
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << o.dump();
  }
}

// Property: a point of the ball never satisfies lists 3 and 4 with a Y the
// enumeration missed.
TEST(EnumerateProperty, CompleteOnSampledPoints) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  WindowParams w(1, 2, Real(3), Real(1), Real(1));
  const int j = 4;
  const long box = static_cast<long>(to_double(w.y_bound(j)));
  for (int trial = 0; trial < 10; ++trial) {
    // Centers near rationals with small denominators, so solutions exist.
    Vec c = {Real(trial % 3) / 2 + Real(u(rng)) / 1000, Real(trial % 4) / 3};
    Ball b(c, Real("0.01"));
    auto sols = enumerate_solutions(b, w, Phase::kY, j);
    for (int s = 0; s < 40; ++s) {
      Vec p = {Real(trial % 3) / 2, Real(trial % 4) / 3};
      if (s > 0) p = c, p[0] += b.radius() * u(rng) * 0.7, p[1] += b.radius() * u(rng) * 0.7;
      LinearFormsPoint a(1, 2, p);
      for (long y = -box; y <= box; ++y) {
        IntVec v{y, -std::lround(to_double(a(0, 0)) * y), -std::lround(to_double(a(0, 1)) * y)};
        if (satisfies_list(a, w, 3, j, v) && satisfies_list(a, w, 4, j, v)) {
          EXPECT_NE(std::find(sols.begin(), sols.end(), v), sols.end());
        }
      }
    }
  }
}

TEST(ConstantsSchedule, MatchesOracle) {
  for (const json& o : oracle()["schedules"]) {
    auto s = ConstantsSchedule::compute(o["order"].get<int>(), rat(o["beta"]), rat(o["sigma"]));
    EXPECT_TRUE(close(s.eps1, rat(o["eps1"]), 1e-35));
    EXPECT_TRUE(close(s.eps2, rat(o["eps2"]), 1e-35));
    for (std::size_t v = 0; v < s.nu.size(); ++v) EXPECT_TRUE(close(s.nu[v], rat(o["nu"][v]), 1e-35));
    for (std::size_t v = 0; v < s.mu.size(); ++v) EXPECT_TRUE(close(s.mu[v], rat(o["mu"][v]), 1e-35));
  }
  auto one = ConstantsSchedule::compute(1, Real(1) / 4, Real(1));
  EXPECT_EQ(one.eps1, Real(1) / 2);
  EXPECT_EQ(one.eps2, Real(1) / 4);
  EXPECT_EQ(one.nu[1], Real(1) / 8192);
}

TEST(ConstantsSchedule, StrictlyDecreasing) {
  for (int order = 1; order <= 4; ++order)
    for (const char* sigma : {"0.5", "1", "3"})
      EXPECT_TRUE(ConstantsSchedule::compute(order, Real(1) / 4, Real(sigma)).strictly_decreasing());
  EXPECT_THROW(ConstantsSchedule::compute(0, Real(1) / 4, Real(1)), Error);
}

TEST(BallGrid, LatticeInsideBall) {
  Ball b({Real(0), Real(0)}, Real(1));
  auto pts = ball_grid(b, {2, 1000});
  EXPECT_EQ(pts.size(), 13u);  // |z| <= 2 in Z^2, scaled by 1/2
  for (const Vec& p : pts) EXPECT_LE(norm(p), Real(1) + tolerance());
  auto sampled = ball_grid(Ball(Vec(6, Real(0)), Real(1)), {8, 500});
  EXPECT_EQ(sampled.size(), 500u);
}

std::vector<Vec> basis(std::mt19937_64& rng, int count, int dim) {
  std::normal_distribution<double> g;
  std::vector<Vec> raw(count, Vec(dim));
  for (Vec& v : raw)
    for (Real& x : v) x = g(rng);
  return gram_schmidt_extend(raw, count);
}

TEST(FiniteGame, OneByOneAwayFromLineTakesDummy) {
  // D(a) = 0.6 a + 0.8 vanishes at a = -4/3, far from the interval.
  MinorSystem sys(1, 1, MinorFamily::kColumns, {{Real("0.6"), Real("0.8")}});
  auto sched = ConstantsSchedule::compute(1, Real(1) / 4, Real(2));
  CenterKeepingBob bob(Ball({Real(1)}, Real("0.5")));
  auto run = finite_minor_game(sys, sched, Ball({Real(1)}, Real("0.5")), sched.nu[1], Real(1) / 4, bob);
  ASSERT_EQ(run.levels.size(), 1u);
  EXPECT_EQ(run.levels[0].choice, CaseChoice::kDummy);
  EXPECT_TRUE(run.postconditions_ok);
}

TEST(FiniteGame, OneByOneThroughZeroDeletes) {
  MinorSystem sys(1, 1, MinorFamily::kColumns, {{Real("0.6"), Real("0.8")}});
  auto sched = ConstantsSchedule::compute(1, Real(1) / 4, Real(2));
  const Real root = Real(-4) / 3;
  RandomBob bob(Ball({root}, Real("0.5")), 3);
  auto run = finite_minor_game(sys, sched, Ball({root}, Real("0.5")), sched.nu[1], Real(1) / 4, bob,
                               {}, true);
  EXPECT_EQ(run.levels[0].choice, CaseChoice::kDelete);
  EXPECT_TRUE(run.postconditions_ok);
}

// Property: the postcondition holds on every grid sample for random 2 x 2
// starts against a random Bob.
TEST(FiniteGameProperty, PostconditionsTwoByTwo) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int trial = 0; trial < 3; ++trial) {
    Vec c(4);
    for (Real& x : c) x = u(rng);
    Ball start(c, Real("0.5"));
    MinorSystem sys(2, 2, trial % 2 ? MinorFamily::kRows : MinorFamily::kColumns, basis(rng, 2, 4));
    auto sched = ConstantsSchedule::compute(2, Real(1) / 4, norm(c) + start.radius());
    RandomBob bob(start, trial + 1);
    auto run = finite_minor_game(sys, sched, start, sched.nu[2], Real(1) / 4, bob, {4, 20000}, true);
    EXPECT_TRUE(run.postconditions_ok);
    for (const LevelReport& l : run.levels) EXPECT_GT(l.worst_margin, 0);
  }
}

TEST(FiniteGame, CompressedScheduleKeepsOrder) {
  MinorSystem sys(1, 1, MinorFamily::kColumns, {{Real("0.6"), Real("0.8")}});
  auto sched = ConstantsSchedule::compute(1, Real(1) / 4, Real(2));
  FiniteMinorGame g(sys, sched, Ball({Real(0)}, Real(1)), Real("0.1"));
  EXPECT_TRUE(g.compressed());
  EXPECT_GT(g.thresholds()[0], g.thresholds()[1]);
}

Bad0Run random_bad0(int m, int n, const Real& r, std::uint64_t seed, int i_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  Vec c(m * n);
  for (Real& x : c) x = u(rng);
  RandomBob bob(Ball(c, Real("0.3")), seed);
  return play_bad0(m, n, {Real(1) / 4, r, {}, {}}, bob, i_max);
}

TEST(Bad0, OneByOneRunIsCertifiedAndCrossChecked) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Bad0Run run = random_bad0(1, 1, Real(4), seed, 4);
    ASSERT_EQ(run.transcript.outcome, Outcome::kStopped) << run.transcript.diagnostic;
    EXPECT_TRUE(run.witness_free());
    EXPECT_TRUE(Referee(run.transcript.params).revalidate(run.transcript).empty());
    LinearFormsPoint a(1, 1, run.transcript.current_ball().center());
    auto x = crosscheck_observation51(a, *run.strategy->window(), 4, run.strategy->certificates());
    EXPECT_TRUE(x.pass) << x.message;
  }
}

TEST(Bad0, PhasesAlternate) {
  Bad0Run run = random_bad0(1, 1, Real(4), 9, 3);
  const auto& ev = run.strategy->events();
  ASSERT_GE(ev.size(), 7u);
  for (std::size_t k = 0; k < ev.size(); ++k) {
    EXPECT_EQ(ev[k].phase, k % 2 ? Phase::kY : Phase::kX);
    EXPECT_EQ(ev[k].index, static_cast<int>(k / 2));
  }
}

TEST(Bad0, TinyRSurfacesDiagnostics) {
  bool flagged = false;
  for (std::uint64_t seed = 1; seed <= 3 && !flagged; ++seed) {
    Bad0Run run = random_bad0(1, 1, Real("1.2"), seed, 6);
    flagged = !run.strategy->diagnostics().empty();
  }
  EXPECT_TRUE(flagged);
}

TEST(Bad0, SpanOfSBoundedByN) {
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    Bad0Run run = random_bad0(1, 2, Real(4), seed, 2);
    for (const PhaseEvent& e : run.strategy->events()) EXPECT_LE(e.span_dim, 2);
    EXPECT_EQ(run.strategy->max_span_dim_excess(), 0);
  }
}

}  // namespace
}  // namespace sgame
