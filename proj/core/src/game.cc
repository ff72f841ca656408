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

#include "sgame/game.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include <boost/multiprecision/cpp_int.hpp>

namespace sgame {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::kSchmidt: return "schmidt";
    case Variant::kHyperplaneAbsolute: return "hyperplane_absolute";
    case Variant::kHyperplanePercentage: return "hyperplane_percentage";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  if (s == "schmidt") return Variant::kSchmidt;
  if (s == "hyperplane_absolute") return Variant::kHyperplaneAbsolute;
  if (s == "hyperplane_percentage") return Variant::kHyperplanePercentage;
  throw Error("InvalidParams", "unknown game variant '" + s + "'");
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kInProgress: return "InProgress";
    case Outcome::kAliceWinsNoLegalMove: return "AliceWins_NoLegalMove";
    case Outcome::kStopped: return "Stopped";
    case Outcome::kIllegalMove: return "IllegalMove";
    case Outcome::kResigned: return "Resigned";
  }
  return "?";
}

Outcome parse_outcome(const std::string& s) {
  for (Outcome o : {Outcome::kInProgress, Outcome::kAliceWinsNoLegalMove, Outcome::kStopped,
                    Outcome::kIllegalMove, Outcome::kResigned})
    if (outcome_name(o) == s) return o;
  throw Error("ParseError", "unknown outcome '" + s + "'");
}

void GameParams::validate() const {
  auto fail = [](const std::string& why) { throw Error("InvalidParams", why); };
  if (dim < 1) fail("dimension must be positive");
  if (!(beta > 0 && beta < 1)) fail("beta must lie in (0, 1)");
  if (variant == Variant::kSchmidt) {
    if (!(alpha > 0 && alpha < 1)) fail("alpha must lie in (0, 1)");
  } else if (!(beta * 3 < 1)) {
    fail("hyperplane variants require beta < 1/3");
  }
  if (variant == Variant::kHyperplanePercentage && !(p > 0 && p < 1)) fail("p must lie in (0, 1)");
  if (max_rounds < 0) fail("max_rounds must be nonnegative");
  if (stop_radius < 0) fail("stop_radius must be nonnegative");
  if (max_rounds == 0 && stop_radius == 0) fail("a stop condition is required");
}

const Ball& GameTranscript::current_ball() const {
  for (auto it = turns.rbegin(); it != turns.rend(); ++it)
    if (it->player == Player::kBob && it->verdict.legal) return *it->ball;
  throw Error("InvalidTranscript", "Bob has not moved yet");
}

const Turn* GameTranscript::pending_alice() const {
  if (turns.empty() || turns.back().player != Player::kAlice) return nullptr;
  return &turns.back();
}

int GameTranscript::bob_moves() const {
  int n = 0;
  for (const Turn& t : turns) n += t.player == Player::kBob && t.verdict.legal;
  return n;
}

std::vector<Ball> GameTranscript::bob_balls() const {
  std::vector<Ball> out;
  for (const Turn& t : turns)
    if (t.player == Player::kBob && t.verdict.legal) out.push_back(*t.ball);
  return out;
}

Referee::Referee(GameParams params) : params_(std::move(params)) { params_.validate(); }

namespace {

Verdict illegal(std::string why) {
  Verdict v;
  v.legal = false;
  v.reason = std::move(why);
  return v;
}

bool radius_equals(const Real& r, const Real& want) {
  return abs(r - want) <= tolerance() * want;
}

}  // namespace

Verdict Referee::validate_bob_move(const Ball& previous, const Turn& alice, const Ball& b) const {
  if (b.dim() != static_cast<std::size_t>(params_.dim)) return illegal("dimension");
  if (params_.variant == Variant::kSchmidt) {
    if (!alice.ball) return illegal("ordering");
    const Ball& a = *alice.ball;
    if (!ball_contains(a, b)) return illegal("containment");
    if (!radius_equals(b.radius(), params_.beta * a.radius())) return illegal("radius");
    return {};
  }
  if (!ball_contains(previous, b)) return illegal("containment");
  if (b.radius() < params_.beta * previous.radius() * (1 - tolerance())) return illegal("radius");
  Verdict v;
  v.submitted = static_cast<int>(alice.slabs.size());
  for (const HyperplaneSlab& h : alice.slabs) v.avoided += ball_avoids_slab(b, h);
  bool enough;
  if (params_.variant == Variant::kHyperplaneAbsolute) {
    enough = v.avoided == v.submitted;
  } else {
    enough = static_cast<std::int64_t>(v.avoided) * params_.p.denominator() >=
             params_.p.numerator() * static_cast<std::int64_t>(v.submitted);
  }
  if (!enough) {
    v.legal = false;
    v.reason = "avoidance";
  }
  return v;
}

Verdict Referee::validate_bob_move(const GameTranscript& t, const Ball& b) const {
  const Turn* alice = t.pending_alice();
  if (alice == nullptr) return illegal("ordering");
  return validate_bob_move(t.current_ball(), *alice, b);
}

AliceVerdict Referee::validate_alice_move(const Ball& current, const AliceMove& m) const {
  if (params_.variant == Variant::kSchmidt) {
    const Ball* a = std::get_if<Ball>(&m);
    if (a == nullptr) return {illegal("move type"), m};
    if (a->dim() != current.dim()) return {illegal("dimension"), m};
    if (!ball_contains(current, *a)) return {illegal("containment"), m};
    if (!radius_equals(a->radius(), params_.alpha * current.radius())) return {illegal("radius"), m};
    return {{}, m};
  }
  const auto* slabs = std::get_if<std::vector<HyperplaneSlab>>(&m);
  if (slabs == nullptr) return {illegal("move type"), m};
  if (slabs->empty()) return {illegal("empty move"), m};
  if (params_.variant == Variant::kHyperplaneAbsolute && slabs->size() != 1)
    return {illegal("absolute game allows one slab"), m};
  std::vector<HyperplaneSlab> clamped;
  const Real eps = params_.beta * current.radius();
  for (const HyperplaneSlab& h : *slabs) {
    if (h.dim() != current.dim()) return {illegal("dimension"), m};
    clamped.push_back(h.with_epsilon(eps));
  }
  Verdict v;
  v.submitted = static_cast<int>(clamped.size());
  return {v, std::move(clamped)};
}

AliceVerdict Referee::validate_alice_move(const GameTranscript& t, const AliceMove& m) const {
  if (t.turns.empty() || t.turns.back().player != Player::kBob) return {illegal("ordering"), m};
  return validate_alice_move(t.current_ball(), m);
}

namespace {

// Slabs in units of the current radius, relative to the current center.
struct ScaledSlab {
  std::vector<double> normal;
  double signed_dist;
  double eps;
};

void shell_points(int d, int s, const std::function<bool(const std::vector<int>&)>& visit) {
  // All integer points with max-norm exactly s; visit returns true to stop.
  std::vector<int> z(d, -s);
  while (true) {
    bool on_shell = false;
    for (int x : z) on_shell |= (x == s || x == -s);
    if (on_shell || s == 0) {
      if (visit(z)) return;
    }
    int i = 0;
    while (i < d && z[i] == s) z[i++] = -s;
    if (i == d) return;
    ++z[i];
  }
}

}  // namespace

std::optional<Ball> Referee::find_legal_bob_move(const Ball& current, const Turn& alice) const {
  if (params_.variant == Variant::kSchmidt) {
    if (!alice.ball) return std::nullopt;
    return Ball(alice.ball->center(), params_.beta * alice.ball->radius());
  }
  const int d = params_.dim;
  const Real& rho = current.radius();
  const double beta = to_double(params_.beta);
  const Real radius = params_.beta * rho;

  std::vector<ScaledSlab> scaled;
  for (const HyperplaneSlab& h : alice.slabs) {
    ScaledSlab s;
    for (const Real& x : h.normal()) s.normal.push_back(to_double(x));
    s.signed_dist = to_double((dot(h.normal(), current.center()) - h.offset()) / rho);
    s.eps = to_double(h.epsilon() / rho);
    scaled.push_back(std::move(s));
  }
  const std::int64_t total = static_cast<std::int64_t>(scaled.size());
  auto enough = [&](std::int64_t avoided) {
    if (params_.variant == Variant::kHyperplaneAbsolute) return avoided == total;
    return avoided * params_.p.denominator() >= params_.p.numerator() * total;
  };
  auto try_offset = [&](const std::vector<double>& off) -> std::optional<Ball> {
    double n2 = 0;
    for (double x : off) n2 += x * x;
    if (std::sqrt(n2) > 1 - beta - 1e-12) return std::nullopt;
    std::int64_t avoided = 0;
    for (const ScaledSlab& s : scaled) {
      double proj = s.signed_dist;
      for (int i = 0; i < d; ++i) proj += s.normal[i] * off[i];
      avoided += std::abs(proj) > s.eps + beta + 1e-9;
    }
    if (!enough(avoided)) return std::nullopt;
    Vec c = current.center();
    for (int i = 0; i < d; ++i) c[i] += Real(off[i]) * rho;
    Ball b(std::move(c), radius);
    if (!validate_bob_move(current, alice, b).legal) return std::nullopt;
    return b;
  };

  // Balls hugging one side of a slab are cheap candidates and are usually legal.
  for (const ScaledSlab& s : scaled)
    for (int side : {1, -1}) {
      double target = side * (s.eps + beta) * (1 + 1e-6) + side * 1e-8;
      double shift = target - s.signed_dist;
      std::vector<double> off(d);
      for (int i = 0; i < d; ++i) off[i] = s.normal[i] * shift;
      if (auto b = try_offset(off)) return b;
    }

  const double pitch = beta / 4;
  const int reach = static_cast<int>(std::floor((1 - beta) / pitch));
  // Past this many candidates the search reports a legal move rather than
  // declaring Alice the winner on an incomplete scan.
  constexpr std::int64_t kBudget = 4'000'000;
  std::int64_t visited = 0;
  std::optional<Ball> found;
  bool exhausted = false;
  for (int s = 0; s <= reach && !found && !exhausted; ++s) {
    shell_points(d, s, [&](const std::vector<int>& z) {
      if (++visited > kBudget) {
        exhausted = true;
        return true;
      }
      std::vector<double> off(d);
      for (int i = 0; i < d; ++i) off[i] = z[i] * pitch;
      found = try_offset(off);
      return found.has_value();
    });
  }
  if (!found && exhausted) return Ball(current.center(), radius);
  return found;
}

bool Referee::has_legal_bob_move(const GameTranscript& t) const {
  const Turn* alice = t.pending_alice();
  if (alice == nullptr) return true;
  return find_legal_bob_move(t.current_ball(), *alice).has_value();
}

bool Referee::stop_reached(const GameTranscript& t) const {
  if (params_.max_rounds > 0 && t.bob_moves() >= params_.max_rounds) return true;
  if (params_.stop_radius > 0 && t.current_ball().radius() < params_.stop_radius) return true;
  return false;
}

GameTranscript Referee::play(AliceStrategy& alice, BobStrategy& bob) const {
  GameTranscript t;
  t.params = params_;
  auto resign = [&](Player who, const Error& e) {
    t.outcome = Outcome::kResigned;
    t.offender = who;
    t.offending_turn = static_cast<int>(t.turns.size());
    t.diagnostic = e.code() + ": " + e.what();
  };
  auto finish = [&]() {
    if (t.bob_moves() > 0) t.final_ball = t.current_ball();
    return t;
  };

  try {
    Ball b1 = bob.first_ball(params_);
    Turn turn;
    turn.player = Player::kBob;
    turn.ball = b1;
    if (b1.dim() != static_cast<std::size_t>(params_.dim)) turn.verdict = illegal("dimension");
    t.turns.push_back(turn);
    if (!turn.verdict.legal) {
      t.outcome = Outcome::kIllegalMove;
      t.offender = Player::kBob;
      t.offending_turn = 0;
      return finish();
    }
  } catch (const Error& e) {
    resign(Player::kBob, e);
    return finish();
  }

  while (true) {
    if (stop_reached(t)) {
      t.outcome = Outcome::kStopped;
      return finish();
    }
    Turn at;
    at.player = Player::kAlice;
    try {
      AliceVerdict av = validate_alice_move(t, alice.move(params_, t));
      at.verdict = av.verdict;
      if (auto* b = std::get_if<Ball>(&av.move)) at.ball = *b;
      if (auto* s = std::get_if<std::vector<HyperplaneSlab>>(&av.move)) at.slabs = *s;
    } catch (const Error& e) {
      resign(Player::kAlice, e);
      return finish();
    }
    t.turns.push_back(at);
    if (!at.verdict.legal) {
      t.outcome = Outcome::kIllegalMove;
      t.offender = Player::kAlice;
      t.offending_turn = static_cast<int>(t.turns.size()) - 1;
      return finish();
    }
    if (params_.is_hyperplane() && params_.detect_no_legal_move && !has_legal_bob_move(t)) {
      t.outcome = Outcome::kAliceWinsNoLegalMove;
      return finish();
    }
    Turn bt;
    bt.player = Player::kBob;
    try {
      Ball nb = bob.move(params_, t);
      bt.verdict = validate_bob_move(t, nb);
      bt.ball = std::move(nb);
    } catch (const Error& e) {
      resign(Player::kBob, e);
      return finish();
    }
    t.turns.push_back(bt);
    if (!bt.verdict.legal) {
      t.outcome = Outcome::kIllegalMove;
      t.offender = Player::kBob;
      t.offending_turn = static_cast<int>(t.turns.size()) - 1;
      return finish();
    }
  }
}

std::vector<std::string> Referee::revalidate(const GameTranscript& t) const {
  std::vector<std::string> issues;
  auto note = [&](std::size_t i, const std::string& what) {
    issues.push_back("turn " + std::to_string(i) + ": " + what);
  };
  std::optional<Ball> current;
  const Turn* alice = nullptr;
  std::optional<std::size_t> first_illegal;
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    const Turn& turn = t.turns[i];
    const Player expected = i % 2 == 0 ? Player::kBob : Player::kAlice;
    if (turn.player != expected) {
      note(i, "out of order");
      return issues;
    }
    if (first_illegal) {
      note(i, "move recorded after an illegal move");
      continue;
    }
    Verdict v;
    if (turn.player == Player::kBob) {
      if (!turn.ball) {
        note(i, "Bob turn without a ball");
        return issues;
      }
      if (i == 0) {
        if (turn.ball->dim() != static_cast<std::size_t>(params_.dim)) v = illegal("dimension");
      } else {
        v = validate_bob_move(*current, *alice, *turn.ball);
      }
      if (v.legal) current = turn.ball;
    } else {
      AliceMove m = turn.ball ? AliceMove(*turn.ball) : AliceMove(turn.slabs);
      AliceVerdict av = validate_alice_move(*current, m);
      v = av.verdict;
      if (const auto* s = std::get_if<std::vector<HyperplaneSlab>>(&av.move)) {
        for (std::size_t k = 0; k < s->size() && k < turn.slabs.size(); ++k)
          if (abs((*s)[k].epsilon() - turn.slabs[k].epsilon()) > tolerance() * current->radius())
            note(i, "slab thickness was not set by the referee");
      }
      alice = &turn;
    }
    if (v.legal != turn.verdict.legal) note(i, "recorded verdict disagrees (" + v.reason + ")");
    if (v.legal && turn.player == Player::kBob && i > 0 && params_.is_hyperplane() &&
        v.avoided != turn.verdict.avoided)
      note(i, "recorded avoidance count disagrees");
    if (!v.legal) first_illegal = i;
  }

  const std::size_t n = t.turns.size();
  switch (t.outcome) {
    case Outcome::kIllegalMove:
      if (!first_illegal || *first_illegal != n - 1) note(n, "IllegalMove outcome without a final illegal move");
      else if (t.offender != t.turns.back().player) note(n, "wrong offender");
      break;
    case Outcome::kStopped: {
      if (first_illegal) note(*first_illegal, "illegal move in a stopped game");
      if (n == 0 || t.turns.back().player != Player::kBob) {
        note(n, "stopped game must end with Bob");
        break;
      }
      GameTranscript probe;
      probe.params = params_;
      probe.turns = t.turns;
      if (!stop_reached(probe)) note(n, "stopped before the stop condition");
      break;
    }
    case Outcome::kAliceWinsNoLegalMove:
      if (first_illegal) note(*first_illegal, "illegal move before Alice's win");
      if (n == 0 || t.turns.back().player != Player::kAlice) note(n, "no-legal-move win must follow Alice");
      else if (has_legal_bob_move(t)) note(n, "Bob had a legal move");
      break;
    case Outcome::kResigned:
    case Outcome::kInProgress:
      if (first_illegal) note(*first_illegal, "illegal move accepted");
      break;
  }
  if (current && t.final_ball &&
      (distance(current->center(), t.final_ball->center()) > tolerance() * current->radius() ||
       !radius_equals(t.final_ball->radius(), current->radius())))
    note(n, "final ball is not Bob's last legal ball");
  return issues;
}

int split_rounds(const Rational& p, const Rational& p2) {
  using boost::multiprecision::cpp_rational;
  if (!(p > 0 && p < 1 && p2 > 0 && p2 < 1)) throw Error("InvalidParams", "p and p' must lie in (0, 1)");
  const cpp_rational q(cpp_rational(1) - cpp_rational(p2.numerator(), p2.denominator()));
  const cpp_rational bound(cpp_rational(1) - cpp_rational(p.numerator(), p.denominator()));
  cpp_rational acc = q;
  int m = 1;
  while (acc > bound) {
    acc *= q;
    ++m;
  }
  return m;
}

HyperplaneSlab dummy_slab(const Ball& b, const Real& beta) {
  Vec n(b.dim());
  n[0] = 1;
  return {n, b.center()[0] + 2 * (1 + beta) * b.radius(), beta * b.radius()};
}

SplitRoundsAlice::SplitRoundsAlice(AliceStrategy& inner, GameParams inner_params, int m)
    : inner_(inner), m_(m) {
  if (m_ < 1) throw Error("InvalidParams", "split factor must be positive");
  inner_t_.params = std::move(inner_params);
}

AliceMove SplitRoundsAlice::move(const GameParams& params, const GameTranscript& so_far) {
  const Ball& b = so_far.current_ball();
  Referee inner_ref(inner_t_.params);
  if (step_ % m_ == 0) {
    Turn bt;
    bt.player = Player::kBob;
    bt.ball = b;
    if (!inner_t_.turns.empty()) bt.verdict = inner_ref.validate_bob_move(inner_t_, b);
    inner_t_.turns.push_back(bt);
    AliceVerdict av = inner_ref.validate_alice_move(inner_t_, inner_.move(inner_t_.params, inner_t_));
    Turn at;
    at.player = Player::kAlice;
    at.verdict = av.verdict;
    if (auto* s = std::get_if<std::vector<HyperplaneSlab>>(&av.move)) at.slabs = *s;
    inner_t_.turns.push_back(at);
    planes_ = at.slabs;
  }
  ++step_;
  std::vector<HyperplaneSlab> remaining;
  for (const HyperplaneSlab& h : planes_)
    if (!ball_avoids_slab(b, h)) remaining.push_back(h.with_epsilon(params.beta * b.radius()));
  if (remaining.empty()) remaining.push_back(dummy_slab(b, params.beta));
  return remaining;
}

}  // namespace sgame
