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

#ifndef SGAME_TESTS_REFEREE_FUZZ_H_
#define SGAME_TESTS_REFEREE_FUZZ_H_

// Random hyperplane-game transcripts in the plane, some with planted rule
// violations, plus a plain double-precision checker that shares no code with
// the referee.

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sgame/game.h"

namespace sgame::testing {

struct PlainSlab {
  double nx, ny, off, eps;
};

struct PlainBall {
  double x, y, r;
};

enum class Planted { kNone, kNesting, kRadius, kAvoidance };

struct FuzzCase {
  GameTranscript transcript;  // every verdict recorded as legal, outcome Stopped
  std::vector<Planted> planted;  // per Bob move after the first
  bool ambiguous = false;        // some check fell within the margin; skip it
};

// Returns the violated rule, or nullopt when the move is legal. `ambiguous`
// is set when a decision is closer than `margin` to its boundary.
inline std::optional<std::string> plain_check(const PlainBall& prev, const std::vector<PlainSlab>& slabs,
                                              const PlainBall& b, bool absolute, double beta,
                                              bool& ambiguous, double margin = 1e-9) {
  auto near = [&](double a, double c) { return std::fabs(a - c) <= margin * std::max(1.0, std::fabs(c)); };
  const double d = std::hypot(b.x - prev.x, b.y - prev.y);
  if (near(d + b.r, prev.r) || near(b.r, beta * prev.r)) ambiguous = true;
  if (d + b.r > prev.r) return "containment";
  if (b.r < beta * prev.r) return "radius";
  int avoided = 0;
  for (const PlainSlab& s : slabs) {
    const double gap = std::fabs(s.nx * b.x + s.ny * b.y - s.off);
    const double need = beta * prev.r + b.r;  // the referee sets eps = beta * rho
    if (near(gap, need)) ambiguous = true;
    avoided += gap > need;
  }
  const int n = static_cast<int>(slabs.size());
  const bool ok = absolute ? avoided == n : 2 * avoided >= n;
  if (!ok) return "avoidance";
  return std::nullopt;
}

inline FuzzCase make_fuzz_case(std::mt19937_64& rng, int rounds = 6) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double beta = 0.25;
  const bool absolute = u(rng) < 0.5;
  FuzzCase fc;
  GameTranscript& t = fc.transcript;
  t.params.variant = absolute ? Variant::kHyperplaneAbsolute : Variant::kHyperplanePercentage;
  t.params.beta = Real(1) / 4;
  t.params.p = Rational(1, 2);
  t.params.dim = 2;
  t.params.max_rounds = rounds;

  PlainBall cur{u(rng) * 4 - 2, u(rng) * 4 - 2, 0.5 + u(rng)};
  auto to_ball = [](const PlainBall& p) { return Ball({Real(p.x), Real(p.y)}, Real(p.r)); };
  Turn first;
  first.player = Player::kBob;
  first.ball = to_ball(cur);
  t.turns.push_back(first);

  // Half of the transcripts carry one planted violation in a random round.
  const int plant_round = u(rng) < 0.5 ? -1 : static_cast<int>(rng() % rounds);
  for (int round = 0; round < rounds; ++round) {
    const int count = absolute ? 1 : 1 + static_cast<int>(rng() % 4);
    std::vector<PlainSlab> slabs;
    Turn alice;
    alice.player = Player::kAlice;
    for (int k = 0; k < count; ++k) {
      const double th = u(rng) * 6.283185307179586;
      PlainSlab s{std::cos(th), std::sin(th), 0, beta * cur.r};
      s.off = s.nx * cur.x + s.ny * cur.y + (u(rng) * 2 - 1) * cur.r;
      slabs.push_back(s);
      alice.slabs.push_back(HyperplaneSlab::from_raw(Vec{Real(s.nx), Real(s.ny)}, Real(s.off), Real(cur.r) / 4));
    }
    alice.verdict.submitted = count;
    t.turns.push_back(alice);

    // A legal-looking answer by rejection sampling, then an optional mutation.
    PlainBall next{cur.x, cur.y, beta * cur.r * (1 + 0.5 * u(rng))};
    for (int tries = 0; tries < 200; ++tries) {
      const double a = u(rng) * 6.283185307179586, rad = (cur.r - next.r) * std::sqrt(u(rng));
      PlainBall c{cur.x + rad * std::cos(a), cur.y + rad * std::sin(a), next.r};
      bool amb = false;
      if (!plain_check(cur, slabs, c, absolute, beta, amb)) {
        next = c;
        break;
      }
    }
    Planted plant = Planted::kNone;
    const double pick = round == plant_round ? u(rng) : 1.0;
    if (pick < 1.0 / 3) {
      plant = Planted::kNesting;
      const double a = u(rng) * 6.283185307179586;
      const double rad = cur.r - next.r + cur.r * (0.01 + 0.5 * u(rng));
      next.x = cur.x + rad * std::cos(a);
      next.y = cur.y + rad * std::sin(a);
    } else if (pick < 2.0 / 3) {
      plant = Planted::kRadius;
      next.r = beta * cur.r * (0.5 + 0.45 * u(rng));
    } else if (pick < 1.0) {
      plant = Planted::kAvoidance;
      const PlainSlab& s = slabs[rng() % slabs.size()];
      const double proj = s.nx * next.x + s.ny * next.y - s.off;
      next.x -= proj * s.nx;
      next.y -= proj * s.ny;
    }
    fc.planted.push_back(plant);
    Turn bob;
    bob.player = Player::kBob;
    bob.ball = to_ball(next);
    bob.verdict.submitted = count;
    int avoided = 0;
    for (const PlainSlab& s : slabs)
      avoided += std::fabs(s.nx * next.x + s.ny * next.y - s.off) > beta * cur.r + next.r;
    bob.verdict.avoided = avoided;
    t.turns.push_back(bob);
    cur = next;
  }
  t.outcome = Outcome::kStopped;
  t.final_ball = t.turns.back().ball;
  return fc;
}

// Replays the case with the plain checker: the first violated rule, if any.
inline std::optional<std::string> plain_first_violation(const FuzzCase& fc, bool& ambiguous) {
  const GameTranscript& t = fc.transcript;
  const bool absolute = t.params.variant == Variant::kHyperplaneAbsolute;
  auto plain = [](const Ball& b) {
    return PlainBall{to_double(b.center()[0]), to_double(b.center()[1]), to_double(b.radius())};
  };
  PlainBall cur = plain(*t.turns[0].ball);
  for (std::size_t i = 1; i + 1 < t.turns.size(); i += 2) {
    std::vector<PlainSlab> slabs;
    for (const HyperplaneSlab& h : t.turns[i].slabs)
      slabs.push_back({to_double(h.normal()[0]), to_double(h.normal()[1]), to_double(h.offset()),
                       to_double(h.epsilon())});
    PlainBall next = plain(*t.turns[i + 1].ball);
    if (auto v = plain_check(cur, slabs, next, absolute, 0.25, ambiguous)) return v;
    cur = next;
  }
  return std::nullopt;
}

}  // namespace sgame::testing

#endif  // SGAME_TESTS_REFEREE_FUZZ_H_
