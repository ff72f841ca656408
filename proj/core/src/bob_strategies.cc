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

#include "sgame/bob_strategies.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sgame {
namespace {

const Turn& alice_turn(const GameTranscript& t) {
  const Turn* a = t.pending_alice();
  if (a == nullptr) throw Resignation("Bob asked to move out of turn");
  return *a;
}

// Uniform point in the unit ball of R^d.
std::vector<double> unit_ball_sample(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0, 1);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> x(d);
  double n = 0;
  for (double& c : x) {
    c = g(rng);
    n += c * c;
  }
  n = std::sqrt(n);
  double r = std::pow(u(rng), 1.0 / d);
  for (double& c : x) c *= n > 0 ? r / n : 0;
  return x;
}

Ball offset_ball(const Ball& b, const std::vector<double>& off_in_radii, const Real& radius) {
  Vec c = b.center();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += Real(off_in_radii[i]) * b.radius();
  return {std::move(c), radius};
}

// Smallest gap between the ball and the boundary of a slab it avoids.
Real min_gap(const Ball& b, const std::vector<HyperplaneSlab>& slabs) {
  Real best = -1;
  for (const HyperplaneSlab& h : slabs) {
    if (!ball_avoids_slab(b, h)) continue;
    Real gap = dist_point_hyperplane(b.center(), h) - h.epsilon() - b.radius();
    if (best < 0 || gap < best) best = gap;
  }
  return best;
}

}  // namespace

std::vector<Ball> legal_bob_candidates(const Referee& ref, const GameTranscript& t,
                                       std::size_t limit) {
  const GameParams& p = ref.params();
  const Turn& alice = alice_turn(t);
  const Ball& cur = t.current_ball();
  std::vector<Ball> out;
  if (p.variant == Variant::kSchmidt) {
    out.emplace_back(alice.ball->center(), p.beta * alice.ball->radius());
    return out;
  }
  const Real radius = p.beta * cur.radius();
  const double beta = to_double(p.beta);
  auto consider = [&](const std::vector<double>& off) {
    double n2 = 0;
    for (double x : off) n2 += x * x;
    if (std::sqrt(n2) > 1 - beta - 1e-12) return;
    Ball b = offset_ball(cur, off, radius);
    if (ref.validate_bob_move(cur, alice, b).legal) out.push_back(std::move(b));
  };
  for (const HyperplaneSlab& h : alice.slabs) {
    double sd = to_double((dot(h.normal(), cur.center()) - h.offset()) / cur.radius());
    double e = to_double(h.epsilon() / cur.radius());
    for (int side : {1, -1}) {
      double shift = side * ((e + beta) * (1 + 1e-6) + 1e-8) - sd;
      std::vector<double> off(p.dim);
      for (int i = 0; i < p.dim; ++i) off[i] = to_double(h.normal()[i]) * shift;
      consider(off);
      if (out.size() >= limit) return out;
    }
  }
  const double pitch = beta / 4;
  const int reach = static_cast<int>(std::floor((1 - beta) / pitch));
  if (p.dim > 3) return out;  // lattice scan is only affordable in low dimension
  std::vector<int> z(p.dim, -reach);
  std::vector<std::pair<int, std::vector<int>>> pts;
  while (true) {
    int m = 0;
    for (int x : z) m = std::max(m, std::abs(x));
    pts.emplace_back(m, z);
    int i = 0;
    while (i < p.dim && z[i] == reach) z[i++] = -reach;
    if (i == p.dim) break;
    ++z[i];
  }
  std::stable_sort(pts.begin(), pts.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [m, pt] : pts) {
    std::vector<double> off(p.dim);
    for (int i = 0; i < p.dim; ++i) off[i] = pt[i] * pitch;
    consider(off);
    if (out.size() >= limit) break;
  }
  return out;
}

Ball CenterKeepingBob::move(const GameParams& params, const GameTranscript& so_far) {
  const Turn& a = alice_turn(so_far);
  if (params.variant == Variant::kSchmidt) return {a.ball->center(), params.beta * a.ball->radius()};
  const Ball& cur = so_far.current_ball();
  return {cur.center(), params.beta * cur.radius()};
}

Ball RandomBob::move(const GameParams& params, const GameTranscript& so_far) {
  Referee ref(params);
  const Turn& a = alice_turn(so_far);
  const Ball& cur = so_far.current_ball();
  if (params.variant == Variant::kSchmidt) {
    const Ball& ab = *a.ball;
    auto off = unit_ball_sample(params.dim, rng_);
    for (double& x : off) x *= 1 - to_double(params.beta);
    return offset_ball(ab, off, params.beta * ab.radius());
  }
  const Real radius = params.beta * cur.radius();
  const double slack = 1 - to_double(params.beta) - 1e-9;
  for (int attempt = 0; attempt < 256; ++attempt) {
    auto off = unit_ball_sample(params.dim, rng_);
    for (double& x : off) x *= slack;
    Ball b = offset_ball(cur, off, radius);
    if (ref.validate_bob_move(cur, a, b).legal) return b;
  }
  auto cands = legal_bob_candidates(ref, so_far, 64);
  if (cands.empty()) throw Resignation("NoLegalMoveFound", "random Bob found no legal ball");
  std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
  return cands[pick(rng_)];
}

Ball SlabHuggerBob::move(const GameParams& params, const GameTranscript& so_far) {
  Referee ref(params);
  const Turn& a = alice_turn(so_far);
  if (params.variant == Variant::kSchmidt) {
    // No slabs to hug: go to the rim of Alice's ball.
    const Ball& ab = *a.ball;
    auto dir = unit_ball_sample(params.dim, rng_);
    double n = 0;
    for (double x : dir) n += x * x;
    n = std::sqrt(n);
    for (double& x : dir) x *= n > 0 ? (1 - to_double(params.beta)) * (1 - 1e-9) / n : 0;
    return offset_ball(ab, dir, params.beta * ab.radius());
  }
  auto cands = legal_bob_candidates(ref, so_far, 4 * a.slabs.size() + 8);
  if (cands.empty()) throw Resignation("NoLegalMoveFound", "slab hugger found no legal ball");
  // Among the tightest candidates pick one at random, so seeds diversify play.
  std::vector<Real> gaps;
  Real best = -1;
  for (const Ball& b : cands) {
    gaps.push_back(min_gap(b, a.slabs));
    if (gaps.back() >= 0 && (best < 0 || gaps.back() < best)) best = gaps.back();
  }
  std::vector<std::size_t> tight;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (gaps[i] >= 0 && gaps[i] <= best * 2 + tolerance() * cands[i].radius()) tight.push_back(i);
  if (tight.empty()) return cands.front();
  std::uniform_int_distribution<std::size_t> pick(0, tight.size() - 1);
  return cands[tight[pick(rng_)]];
}

Ball TargetSeekingBob::move(const GameParams& params, const GameTranscript& so_far) {
  Referee ref(params);
  const Turn& a = alice_turn(so_far);
  const Ball& cur = so_far.current_ball();
  const Ball& outer = params.variant == Variant::kSchmidt ? *a.ball : cur;
  const Real radius =
      params.variant == Variant::kSchmidt ? params.beta * a.ball->radius() : params.beta * cur.radius();
  // Straight toward the target, clipped to the admissible region.
  Vec dir = sub(target_, outer.center());
  Real dn = norm(dir);
  Real reach = outer.radius() - radius;
  Vec c = dn <= reach ? target_ : axpy(outer.center(), reach * (1 - tolerance()) / dn, dir);
  Ball direct(c, radius);
  if (params.variant == Variant::kSchmidt) return direct;
  if (ref.validate_bob_move(cur, a, direct).legal) return direct;
  auto cands = legal_bob_candidates(ref, so_far, 256);
  if (cands.empty()) throw Resignation("NoLegalMoveFound", "target seeker found no legal ball");
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (distance(cands[i].center(), target_) < distance(cands[best].center(), target_)) best = i;
  return cands[best];
}

ReplayBob::ReplayBob(const GameTranscript& t) {
  for (const Turn& turn : t.turns)
    if (turn.player == Player::kBob && turn.ball) balls_.push_back(*turn.ball);
}

Ball ReplayBob::first_ball(const GameParams&) {
  next_ = 0;
  if (balls_.empty()) throw Resignation("ReplayExhausted", "no recorded Bob balls");
  return balls_[next_++];
}

Ball ReplayBob::move(const GameParams&, const GameTranscript&) {
  if (next_ >= balls_.size()) throw Resignation("ReplayExhausted", "recorded Bob moves exhausted");
  return balls_[next_++];
}

ReplayAlice::ReplayAlice(const GameTranscript& t) {
  for (const Turn& turn : t.turns) {
    if (turn.player != Player::kAlice) continue;
    if (turn.ball) moves_.emplace_back(*turn.ball);
    else moves_.emplace_back(turn.slabs);
  }
}

AliceMove ReplayAlice::move(const GameParams&, const GameTranscript&) {
  if (next_ >= moves_.size()) throw Resignation("ReplayExhausted", "recorded Alice moves exhausted");
  return moves_[next_++];
}

AliceMove PassiveAlice::move(const GameParams& params, const GameTranscript& so_far) {
  const Ball& b = so_far.current_ball();
  if (params.variant == Variant::kSchmidt) return Ball(b.center(), params.alpha * b.radius());
  return std::vector<HyperplaneSlab>{dummy_slab(b, params.beta)};
}

}  // namespace sgame
