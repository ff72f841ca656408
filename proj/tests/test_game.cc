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

#include "referee_fuzz.h"
#include "sgame/bob_strategies.h"
#include "sgame/game.h"
#include "sgame/transcript_io.h"
#include "support.h"

namespace sgame {
namespace {

GameParams plane_params(Variant v) {
  GameParams p;
  p.variant = v;
  p.beta = Real(1) / 4;
  p.dim = 2;
  p.max_rounds = 1;
  return p;
}

TEST(SplitRounds, MatchesOracleTable) {
  for (const auto& row : testing::oracle()["split_rounds"]) {
    auto r = [](const std::string& s) {
      auto k = s.find('/');
      return Rational(std::stoll(s.substr(0, k)), std::stoll(s.substr(k + 1)));
    };
    EXPECT_EQ(split_rounds(r(row["p"]), r(row["p2"])), row["m"].get<int>()) << row.dump();
  }
}

TEST(Params, Validation) {
  GameParams p = plane_params(Variant::kHyperplaneAbsolute);
  EXPECT_NO_THROW(p.validate());
  p.beta = Real("0.4");
  EXPECT_THROW(p.validate(), Error);
  GameParams s;
  s.variant = Variant::kSchmidt;
  s.alpha = Real("0.5");
  s.beta = Real("1.5");
  EXPECT_THROW(s.validate(), Error);
}

TEST(Referee, AliceThicknessIsClamped) {
  Referee ref(plane_params(Variant::kHyperplaneAbsolute));
  Ball b({Real(0), Real(0)}, Real(2));
  HyperplaneSlab h(Vec{Real(1), Real(0)}, Real(0), Real(100));
  AliceVerdict v = ref.validate_alice_move(b, std::vector<HyperplaneSlab>{h});
  ASSERT_TRUE(v.verdict.legal);
  EXPECT_EQ(std::get<std::vector<HyperplaneSlab>>(v.move)[0].epsilon(), Real(1) / 2);
  EXPECT_FALSE(ref.validate_alice_move(b, std::vector<HyperplaneSlab>{h, h}).verdict.legal);
}

TEST(Referee, SingleThinSlabLeavesALegalMove) {
  Referee ref(plane_params(Variant::kHyperplaneAbsolute));
  Turn alice;
  alice.player = Player::kAlice;
  alice.slabs = {HyperplaneSlab(Vec{Real(1), Real(0)}, Real(0), Real(1) / 4)};
  EXPECT_TRUE(ref.find_legal_bob_move(Ball({Real(0), Real(0)}, Real(1)), alice).has_value());
}

TEST(Referee, CoveringSlabsLeaveNoMove) {
  GameParams p = plane_params(Variant::kHyperplaneAbsolute);
  p.beta = Real("0.33");
  Referee ref(p);
  Turn alice;
  alice.player = Player::kAlice;
  alice.slabs = {HyperplaneSlab(Vec{Real(1), Real(0)}, Real(0), Real("0.33"))};
  auto b = ref.find_legal_bob_move(Ball({Real(0), Real(0)}, Real(1)), alice);
  ASSERT_TRUE(b.has_value());
  // Percentage game that must dodge every one of many parallel slabs.
  GameParams q = plane_params(Variant::kHyperplanePercentage);
  q.beta = Real("0.33");
  q.p = Rational(99, 100);
  Referee all(q);
  Turn many;
  many.player = Player::kAlice;
  for (int k = -3; k <= 3; ++k)
    many.slabs.emplace_back(Vec{Real(1), Real(0)}, Real(k) / 3, Real("0.33"));
  EXPECT_FALSE(all.find_legal_bob_move(Ball({Real(0), Real(0)}, Real(1)), many).has_value());
}

TEST(Referee, RandomBobRadiusRecursion) {
  GameParams p = plane_params(Variant::kHyperplaneAbsolute);
  p.max_rounds = 40;
  p.detect_no_legal_move = false;
  PassiveAlice alice;
  RandomBob bob(Ball({Real(0), Real(0)}, Real(1)), 5);
  GameTranscript t = Referee(p).play(alice, bob);
  ASSERT_EQ(t.outcome, Outcome::kStopped) << t.diagnostic;
  EXPECT_EQ(t.bob_moves(), 40);
  EXPECT_LE(t.current_ball().radius(), ipow(Real(1) / 4, 39) * (1 + tolerance()));
  EXPECT_TRUE(Referee(p).revalidate(t).empty());
}

TEST(Transcript, JsonRoundTripRevalidates) {
  GameParams p = plane_params(Variant::kHyperplanePercentage);
  p.max_rounds = 20;
  p.detect_no_legal_move = false;
  PassiveAlice alice;
  SlabHuggerBob bob(Ball({Real("0.1"), Real("0.2")}, Real(1)), 9);
  GameTranscript t = Referee(p).play(alice, bob);
  GameTranscript back = transcript_from_json(transcript_to_json(t));
  EXPECT_EQ(transcript_to_json(back), transcript_to_json(t));
  EXPECT_TRUE(Referee(back.params).revalidate(back).empty());
}

TEST(Transcript, RejectsUnknownFields) {
  nlohmann::json j = transcript_to_json(GameTranscript{});
  j["extra"] = 1;
  EXPECT_THROW(transcript_from_json(j), Error);
}

// Fuzz: planted violations are caught, clean transcripts pass, and the
// referee agrees with an independent checker move by move.
TEST(RefereeProperty, FuzzedTranscriptsAgreeWithPlainChecker) {
  std::mt19937_64 rng(2024);
  int checked = 0, illegal = 0;
  for (int i = 0; i < 300; ++i) {
    testing::FuzzCase fc = testing::make_fuzz_case(rng);
    bool ambiguous = false;
    auto plain = testing::plain_first_violation(fc, ambiguous);
    if (ambiguous) continue;
    ++checked;
    auto issues = Referee(fc.transcript.params).revalidate(fc.transcript);
    EXPECT_EQ(!issues.empty(), plain.has_value()) << i;
    illegal += plain.has_value();
  }
  EXPECT_GT(checked, 250);
  EXPECT_GT(illegal, 100);
}

TEST(RefereeProperty, PlantedViolationsAreNamed) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    testing::FuzzCase fc = testing::make_fuzz_case(rng, 1);
    bool ambiguous = false;
    auto plain = testing::plain_first_violation(fc, ambiguous);
    if (ambiguous) continue;
    const GameTranscript& t = fc.transcript;
    Verdict v = Referee(t.params).validate_bob_move(*t.turns[0].ball, t.turns[1], *t.turns[2].ball);
    EXPECT_EQ(v.legal, !plain.has_value());
    if (plain) {
      EXPECT_EQ(v.reason, *plain);
    }
    if (fc.planted[0] == testing::Planted::kNesting) {
      EXPECT_EQ(v.reason, "containment");
    }
    if (fc.planted[0] == testing::Planted::kRadius) {
      EXPECT_FALSE(v.legal);
    }
  }
}

}  // namespace
}  // namespace sgame
