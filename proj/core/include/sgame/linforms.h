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

#ifndef SGAME_LINFORMS_H_
#define SGAME_LINFORMS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sgame/game.h"
#include "sgame/geometry.h"

namespace sgame {

using IntVec = std::vector<long>;

// The X side (rows, lists 1 and 2) or the Y side (columns, lists 3 and 4).
enum class Phase { kX, kY };
std::string phase_name(Phase p);

struct WindowParams {
  int m = 1;
  int n = 1;
  Real r;        // R > 1
  Real sigma;    // bound on |A| over the first ball
  Real rho;      // radius of the first ball

  WindowParams(int m, int n, Real r, Real sigma, Real rho);

  int h() const { return m * n; }
  int l() const { return m + n; }
  Real lambda() const;   // N / L
  Real delta() const;    // R^{-N L^2}
  Real delta_t() const;  // R^{-M L^2}

  // List 1 / 2 bounds for X-phase i, lists 3 / 4 for Y-phase j.
  Real x_bound(int i) const;   // delta R^{M(lambda+i)}
  Real ax_bound(int i) const;  // delta R^{-N(lambda+i)-M}
  Real y_bound(int j) const;   // delta^T R^{N(1+j)}
  Real by_bound(int j) const;  // delta^T R^{-M(1+j)-N}
  Real norm_bound(Phase p, int idx) const { return p == Phase::kX ? x_bound(idx) : y_bound(idx); }
  Real value_bound(Phase p, int idx) const { return p == Phase::kX ? ax_bound(idx) : by_bound(idx); }

  Real k_threshold(int i) const;  // R^{-L(lambda+i)}
  Real h_threshold(int j) const;  // R^{-L(1+j)}

  // delta^L R^{-ML}: the constant in ||x||^N ||A(X)||^M > c.
  Real observation_constant() const;
};

// A(X) = (A_u . X)_u for X in Z^L (first N coordinates x, then M more).
Vec forms_a(const LinearFormsPoint& a, const IntVec& x);
// B(Y) = (B_v . Y)_v for Y in Z^L (first M coordinates y, then N more).
Vec forms_b(const LinearFormsPoint& a, const IntVec& y);

// which in {1, 2, 3, 4}; index is i for lists 1-2 and j for lists 3-4.
bool satisfies_list(const LinearFormsPoint& a, const WindowParams& w, int which, int index,
                    const IntVec& v);

struct EnumerationBudget {
  long max_vectors = 20'000'000;
};

class EnumerationTooLarge : public Error {
 public:
  explicit EnumerationTooLarge(const std::string& what) : Error("EnumerationTooLarge", what) {}
};

// All integer L-vectors V satisfying the norm list (1 or 3) for which some A in
// `ball` may satisfy the value list (2 or 4). The test is exact up to tau: the
// image of the ball under A -> A(X) is the ball of radius rho |x| about the
// center's value, so inclusion errs on the side of reporting a solution.
std::vector<IntVec> enumerate_solutions(const Ball& ball, const WindowParams& w, Phase phase,
                                        int index, const EnumerationBudget& budget = {});

// The set S used for subspace extraction: Y-side solutions at j = i.
inline std::vector<IntVec> enumerate_S(const Ball& ball, const WindowParams& w, int i,
                                       const EnumerationBudget& budget = {}) {
  return enumerate_solutions(ball, w, Phase::kY, i, budget);
}

struct NoSolutionCertificate {
  Phase phase = Phase::kX;
  int index = 0;
  int ball_id = -1;       // Bob move (0-based) of the certified ball
  Real norm_bound;        // enumeration bound used
  Real value_bound;
  Real margin;            // min over enumerated vectors of (value - slack - bound)
  long enumerated = 0;
  std::optional<IntVec> witness;  // set when certification failed
  bool complete = true;           // false when the enumeration budget ran out

  bool ok() const { return complete && !witness.has_value(); }
};

NoSolutionCertificate certify_no_solution(const Ball& ball, const WindowParams& w, Phase phase,
                                          int index, int ball_id = -1,
                                          const EnumerationBudget& budget = {});

// Constants of the finite minor game for matrices of order k (N for the
// column family, M for the row family) in a game with parameter beta.
struct ConstantsSchedule {
  int order = 1;
  Real beta;
  Real sigma;
  Real eps1;
  Real eps2;
  std::vector<Real> nu;  // nu[0..order]
  std::vector<Real> mu;  // mu[0..order-1]

  static ConstantsSchedule compute(int order, const Real& beta, const Real& sigma);
  bool strictly_decreasing() const;
};

enum class CaseChoice { kNone, kDummy, kDelete, kAmbiguous };
std::string case_name(CaseChoice c);

struct LevelReport {
  int v = 0;
  CaseChoice choice = CaseChoice::kNone;
  Real grid_min_ratio;
  MinorIndex omega;
  std::optional<HyperplaneSlab> slab;
  int decided_at = -1;   // Bob move index of B_{v-1}
  int checked_at = -1;   // Bob move index of B_v
  bool postcondition_ok = true;
  Real worst_margin;     // min over grid of M_v - nu_v rho_B S_{v-1}
  long samples = 0;
  bool claim_ok = true;  // sampled sup M_{v-1}(B_{v-1}) <= v M_{v-1}(A)
};

struct GridOptions {
  int divisor = 8;          // pitch = radius / divisor
  long max_points = 60000;  // beyond this a seeded sample of this size is used
};

// Deterministic sample of a ball: the lattice of pitch radius/divisor inside
// it, or a fixed quasi-random sample when the lattice is too large.
std::vector<Vec> ball_grid(const Ball& b, const GridOptions& g);

// Alice's side of the finite minor game as an incremental state machine.
// Each call to next() sees Bob's current ball and returns the slab to delete
// (Case 2) or nothing (dummy move).
class FiniteMinorGame {
 public:
  FiniteMinorGame(MinorSystem sys, ConstantsSchedule sched, Ball start, Real mu_target,
                  GridOptions grid = {});

  std::optional<HyperplaneSlab> next(const Ball& current, int bob_move);
  // Runs any postcondition check due on the final ball of a game.
  void finish(const Ball& final_ball, int bob_move);

  bool done() const { return next_level_ > order() && pending_check_ == 0; }
  bool compressed() const { return compressed_; }
  int order() const { return sys_.order(); }
  const MinorSystem& system() const { return sys_; }
  const ConstantsSchedule& schedule() const { return sched_; }
  const std::vector<Real>& thresholds() const { return thr_; }
  const std::vector<LevelReport>& levels() const { return levels_; }
  const Real& rho_b() const { return rho_b_; }
  bool postconditions_ok() const;

 private:
  void decide(int v, const Ball& b, int bob_move);
  void check(int v, const Ball& b, int bob_move);

  MinorSystem sys_;
  ConstantsSchedule sched_;
  Real rho_b_;
  GridOptions grid_;
  std::vector<Real> thr_;  // thr_[v] = mu_v rho_B (radius below which B_v is reached)
  bool compressed_ = false;
  int next_level_ = 1;
  int pending_check_ = 0;
  std::vector<LevelReport> levels_;
};

// Plays the finite game in isolation in the hyperplane absolute game on R^H.
struct FiniteGameRun {
  GameTranscript transcript;
  std::vector<LevelReport> levels;
  bool postconditions_ok = false;
};

class StrategyPostconditionFailed : public Error {
 public:
  explicit StrategyPostconditionFailed(const std::string& what)
      : Error("StrategyPostconditionFailed", what) {}
};

// With `strict`, a level whose postcondition fails on the grid throws
// StrategyPostconditionFailed instead of being reported.
FiniteGameRun finite_minor_game(const MinorSystem& sys, const ConstantsSchedule& sched,
                                const Ball& start, const Real& mu_target, const Real& beta,
                                BobStrategy& bob, GridOptions grid = {}, bool strict = false);

// |D| > N sqrt(N) R^{-L(1+i)} max |D_uv| at every grid sample (the inequality
// the finite game must make fail). Returns the minimum slack.
Real blocking_margin(const MinorSystem& sys, const Ball& b, const Real& threshold,
                     const GridOptions& g);

struct Bad0Config {
  Real beta;
  Real r;
  EnumerationBudget budget;
  GridOptions grid;
};

struct PhaseEvent {
  Phase phase = Phase::kX;
  int index = 0;
  int bob_move = 0;
  Real radius;
  NoSolutionCertificate certificate;
  long s_size = 0;
  int span_dim = 0;
  std::string diagnostic;
  std::shared_ptr<FiniteMinorGame> game;  // null when no game was needed
  std::optional<Real> blocking;           // checked on the next event's ball
};

// Alice's strategy for Bad_0(M, N) in the hyperplane absolute game on R^H.
class Bad0Strategy : public AliceStrategy {
 public:
  Bad0Strategy(int m, int n, Bad0Config cfg);

  AliceMove move(const GameParams& params, const GameTranscript& so_far) override;
  std::string name() const override { return "bad0"; }

  // Processes events on the final ball of a stopped game (certification only).
  void observe_final(const GameTranscript& t);

  const std::optional<WindowParams>& window() const { return w_; }
  const std::vector<PhaseEvent>& events() const { return events_; }
  std::vector<NoSolutionCertificate> certificates() const;
  const std::vector<std::string>& diagnostics() const { return diag_; }
  // Part-two gates on R, evaluated once the first ball is known.
  const std::vector<std::string>& gate_failures() const { return gates_; }
  int max_span_dim_excess() const { return span_excess_; }

 private:
  void init(const Ball& first);
  void process_events(const Ball& b, int bob_move, bool play);
  void handle(Phase phase, int index, const Ball& b, int bob_move, bool play);

  int m_, n_;
  Bad0Config cfg_;
  std::optional<WindowParams> w_;
  std::optional<ConstantsSchedule> sched_cols_, sched_rows_;
  int next_k_ = 0;  // next X-phase index
  int next_h_ = 0;  // next Y-phase index
  std::shared_ptr<FiniteMinorGame> game_;
  std::vector<PhaseEvent> events_;
  std::vector<std::string> diag_;
  std::vector<std::string> gates_;
  int span_excess_ = 0;
};

struct Bad0Run {
  GameTranscript transcript;
  std::shared_ptr<Bad0Strategy> strategy;
  int i_max = 0;
  bool witness_free() const;
};

// Plays the hyperplane absolute game on R^H until Bob's radius drops below
// the k threshold of phase i_max, then certifies the final ball.
Bad0Run play_bad0(int m, int n, const Bad0Config& cfg, BobStrategy& bob, int i_max);

// Doubles R from r_start until `games` seeded random-Bob runs through phase
// i_max produce no certificate witness. Throws when max_doublings is reached.
Real choose_default_r(int m, int n, const Real& beta, std::uint64_t seed, int games = 10,
                      int i_max = 4, const Real& r_start = 2, int max_doublings = 16);

nlohmann::json certificate_to_json(const NoSolutionCertificate& c);
nlohmann::json schedule_to_json(const ConstantsSchedule& s);
nlohmann::json level_to_json(const LevelReport& l);

}  // namespace sgame

#endif  // SGAME_LINFORMS_H_
