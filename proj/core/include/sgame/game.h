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

#ifndef SGAME_GAME_H_
#define SGAME_GAME_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "sgame/geometry.h"
#include "sgame/real.h"

namespace sgame {

using Rational = boost::rational<std::int64_t>;

enum class Variant { kSchmidt, kHyperplaneAbsolute, kHyperplanePercentage };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);

struct GameParams {
  Variant variant = Variant::kHyperplaneAbsolute;
  Real alpha = 0;  // schmidt only
  Real beta = 0;
  Rational p{1, 2};  // percentage only
  int dim = 1;
  // Number of Bob balls after which the game stops (B_1 counts). 0 = unbounded.
  int max_rounds = 0;
  // Stop once Bob's ball radius drops below this. 0 = unused.
  Real stop_radius = 0;
  // When false the referee skips the no-legal-move search (cheaper play).
  bool detect_no_legal_move = true;

  bool is_hyperplane() const { return variant != Variant::kSchmidt; }
  // Throws InvalidParams.
  void validate() const;
};

enum class Player { kAlice, kBob };

struct Verdict {
  bool legal = true;
  std::string reason;  // first violated condition when illegal
  int submitted = 0;   // slabs in the preceding Alice move (hyperplane variants)
  int avoided = 0;     // slabs the ball avoids
};

struct Turn {
  Player player = Player::kBob;
  std::optional<Ball> ball;           // Bob, or Alice in the schmidt variant
  std::vector<HyperplaneSlab> slabs;  // Alice in hyperplane variants
  Verdict verdict;
};

using AliceMove = std::variant<Ball, std::vector<HyperplaneSlab>>;

enum class Outcome { kInProgress, kAliceWinsNoLegalMove, kStopped, kIllegalMove, kResigned };

std::string outcome_name(Outcome o);
Outcome parse_outcome(const std::string& s);

struct GameTranscript {
  GameParams params;
  std::vector<Turn> turns;
  Outcome outcome = Outcome::kInProgress;
  std::optional<Player> offender;  // IllegalMove / Resigned
  int offending_turn = -1;
  std::string diagnostic;
  std::optional<Ball> final_ball;

  // Bob's most recent ball. Throws if Bob has not moved.
  const Ball& current_ball() const;
  // Alice's most recent move, if the last turn is hers.
  const Turn* pending_alice() const;
  int bob_moves() const;
  std::vector<Ball> bob_balls() const;
};

class AliceStrategy {
 public:
  virtual ~AliceStrategy() = default;
  virtual AliceMove move(const GameParams& params, const GameTranscript& so_far) = 0;
  virtual std::string name() const = 0;
};

class BobStrategy {
 public:
  virtual ~BobStrategy() = default;
  virtual Ball first_ball(const GameParams& params) = 0;
  virtual Ball move(const GameParams& params, const GameTranscript& so_far) = 0;
  virtual std::string name() const = 0;
};

// Thrown by a strategy that cannot continue; recorded as a Resigned outcome.
class Resignation : public Error {
 public:
  explicit Resignation(const std::string& why) : Error("Resigned", why) {}
  Resignation(std::string code, const std::string& why) : Error(std::move(code), why) {}
};

struct AliceVerdict {
  Verdict verdict;
  AliceMove move;  // with epsilons clamped in hyperplane variants
};

// The referee holds no state beyond the parameters.
class Referee {
 public:
  explicit Referee(GameParams params);

  const GameParams& params() const { return params_; }

  // `previous` is Bob's current ball; `alice` is Alice's move answered by b.
  Verdict validate_bob_move(const Ball& previous, const Turn& alice, const Ball& b) const;
  Verdict validate_bob_move(const GameTranscript& t, const Ball& b) const;
  AliceVerdict validate_alice_move(const Ball& current, const AliceMove& m) const;
  AliceVerdict validate_alice_move(const GameTranscript& t, const AliceMove& m) const;

  // Lattice search of pitch beta*rho/4 for a legal Bob ball of radius beta*rho.
  std::optional<Ball> find_legal_bob_move(const Ball& current, const Turn& alice) const;
  bool has_legal_bob_move(const GameTranscript& t) const;

  GameTranscript play(AliceStrategy& alice, BobStrategy& bob) const;

  // Re-runs every check; returns a list of discrepancies (empty when clean).
  std::vector<std::string> revalidate(const GameTranscript& t) const;

 private:
  bool stop_reached(const GameTranscript& t) const;

  GameParams params_;
};

// Minimal m with (1 - p2)^m <= 1 - p, exact rational arithmetic.
int split_rounds(const Rational& p, const Rational& p2);

// Slab far enough from `b` that no ball inside b meets it after the referee
// sets its thickness to beta*rho.
HyperplaneSlab dummy_slab(const Ball& b, const Real& beta);

// Drives an Alice strategy for the (beta, p) game in the (beta', p') game
// with beta = beta'^m: each inner move is spread over m outer turns, each
// resubmitting the planes the current ball does not yet avoid.
class SplitRoundsAlice : public AliceStrategy {
 public:
  SplitRoundsAlice(AliceStrategy& inner, GameParams inner_params, int m);
  AliceMove move(const GameParams& params, const GameTranscript& so_far) override;
  std::string name() const override { return "split-rounds(" + inner_.name() + ")"; }

  // The coarse game as the inner strategy saw it, Bob balls at block starts.
  const GameTranscript& inner_transcript() const { return inner_t_; }

 private:
  AliceStrategy& inner_;
  int m_;
  int step_ = 0;
  GameTranscript inner_t_;
  std::vector<HyperplaneSlab> planes_;
};

}  // namespace sgame

#endif  // SGAME_GAME_H_
