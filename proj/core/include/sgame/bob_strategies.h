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

#ifndef SGAME_BOB_STRATEGIES_H_
#define SGAME_BOB_STRATEGIES_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sgame/game.h"

namespace sgame {

// Legal Bob balls of radius beta*rho: slab-hugging positions first, then
// lattice points of pitch beta*rho/4 in order of max-norm distance from the
// center. At most `limit` balls.
std::vector<Ball> legal_bob_candidates(const Referee& ref, const GameTranscript& t,
                                       std::size_t limit);

// Keeps the center and shrinks by beta (or answers Alice's ball concentrically).
class CenterKeepingBob : public BobStrategy {
 public:
  explicit CenterKeepingBob(Ball first) : first_(std::move(first)) {}
  Ball first_ball(const GameParams&) override { return first_; }
  Ball move(const GameParams& params, const GameTranscript& so_far) override;
  std::string name() const override { return "center-keeping"; }

 private:
  Ball first_;
};

// Uniform random legal ball of the minimal radius, by rejection sampling in
// the admissible region with a deterministic fallback.
class RandomBob : public BobStrategy {
 public:
  RandomBob(Ball first, std::uint64_t seed) : first_(std::move(first)), rng_(seed) {}
  Ball first_ball(const GameParams&) override { return first_; }
  Ball move(const GameParams& params, const GameTranscript& so_far) override;
  std::string name() const override { return "random"; }

 private:
  Ball first_;
  std::mt19937_64 rng_;
};

// Stays as close as legality allows to the slabs Alice just deleted, which
// keeps the eventual point near the boundary of every protected region.
class SlabHuggerBob : public BobStrategy {
 public:
  SlabHuggerBob(Ball first, std::uint64_t seed) : first_(std::move(first)), rng_(seed) {}
  Ball first_ball(const GameParams&) override { return first_; }
  Ball move(const GameParams& params, const GameTranscript& so_far) override;
  std::string name() const override { return "slab-hugger"; }

 private:
  Ball first_;
  std::mt19937_64 rng_;
};

// Steers toward a fixed target point (for example a known bad point).
class TargetSeekingBob : public BobStrategy {
 public:
  TargetSeekingBob(Ball first, Vec target) : first_(std::move(first)), target_(std::move(target)) {}
  Ball first_ball(const GameParams&) override { return first_; }
  Ball move(const GameParams& params, const GameTranscript& so_far) override;
  std::string name() const override { return "target-seeking"; }

 private:
  Ball first_;
  Vec target_;
};

// Replays the Bob balls of a recorded transcript.
class ReplayBob : public BobStrategy {
 public:
  explicit ReplayBob(const GameTranscript& t);
  Ball first_ball(const GameParams&) override;
  Ball move(const GameParams&, const GameTranscript&) override;
  std::string name() const override { return "replay"; }

 private:
  std::vector<Ball> balls_;
  std::size_t next_ = 0;
};

// Replays the Alice moves of a recorded transcript.
class ReplayAlice : public AliceStrategy {
 public:
  explicit ReplayAlice(const GameTranscript& t);
  AliceMove move(const GameParams&, const GameTranscript&) override;
  std::string name() const override { return "replay"; }

 private:
  std::vector<AliceMove> moves_;
  std::size_t next_ = 0;
};

// Alice who only ever plays the far-away dummy slab (or a concentric ball).
class PassiveAlice : public AliceStrategy {
 public:
  AliceMove move(const GameParams& params, const GameTranscript& so_far) override;
  std::string name() const override { return "passive"; }
};

}  // namespace sgame

#endif  // SGAME_BOB_STRATEGIES_H_
