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

#ifndef SGAME_ESCAPE_H_
#define SGAME_ESCAPE_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgame/game.h"
#include "sgame/linalg.h"

namespace sgame {

// A sequence of M x N matrices M_k acting on R^N, with target sets Z_k in R^M.
struct LacunarySystem {
  int m = 1;  // rows: dimension of the target space
  int n = 1;  // columns: dimension of the playing field
  long first_index = 1;
  long last_index = -1;  // -1: unbounded
  std::function<Mat(long k)> matrix;
  // Every point of Z_k within `radius` of `center` (closed ball).
  std::function<std::vector<Vec>(long k, const Vec& center, const Real& radius)> targets_near;
  // Optional lower bound used in place of the measured ratio infimum.
  std::optional<Real> lacunarity_floor;
  // Optional declared separation; otherwise measured.
  std::optional<Real> separation;
  std::string description;
};

LacunarySystem power_system(const Mat& base, long first_index, Vec shift);
// Z_k = ratio^{-k} (Z^M + shift); not uniformly discrete when ratio > 1.
LacunarySystem scaled_lattice_system(const Mat& base, long first_index, Real ratio, Vec shift);

// Points of shift + scale * Z^d within the closed ball.
std::vector<Vec> lattice_points_near(const Vec& shift, const Real& scale, const Vec& center,
                                     const Real& radius);

class NonLacunary : public Error {
 public:
  NonLacunary(long k, const Real& ratio);
  long index() const { return k_; }

 private:
  long k_;
};

class NotDiscrete : public Error {
 public:
  NotDiscrete(long k, Vec a, Vec b, const Real& dist);
  long index() const { return k_; }
  const std::pair<Vec, Vec>& witness() const { return pair_; }

 private:
  long k_;
  std::pair<Vec, Vec> pair_;
};

class MultipleTargets : public Error {
 public:
  explicit MultipleTargets(long k);
  long index() const { return k_; }

 private:
  long k_;
};

struct LacunarityReport {
  Real q;                   // min ratio t_{k+1}/t_k over the prefix
  long argmin = 0;          // k attaining it
  std::vector<Real> norms;  // t_k for the checked prefix
};

// Checks K consecutive norms from first_index. Throws NonLacunary(k) at the
// first k with t_{k+1}/t_k <= threshold (threshold >= 1).
LacunarityReport check_lacunary(const LacunarySystem& s, int K, const Real& threshold = 1);

// Minimum pairwise distance among Z_k points inside `probe`, over K indices.
// Throws NotDiscrete when it is <= threshold.
Real check_uniformly_discrete(const LacunarySystem& s, int K, const Ball& probe,
                              const Real& threshold = 0);

struct NR {
  int n;
  int r;
  bool operator==(const NR&) const = default;
};
// Minimal n with beta^{-r} <= Q^n, r = floor(log2 n) + 1.
NR compute_n_r(const Real& beta, const Real& q);

struct WindowSchedule {
  Real beta;
  int n = 0;
  int r = 0;
  Real t1;

  // Unique j >= 1 with beta^{-r(j-1)} t1 <= t < beta^{-rj} t1.
  int window_of(const Real& t) const;
  Real lower(int j) const;  // beta^{-r(j-1)} t1
  Real upper(int j) const;  // beta^{-rj} t1
};

// Largest admissible first radius: beta^r * delta / (4 t1).
Real first_ball_gate_bound(const WindowSchedule& w, const Real& delta);
bool first_ball_gate(const WindowSchedule& w, const Real& delta, const Real& rho1);

// c = min(beta^{r+1} rho1 t1, delta / 4).
Real theoretical_c(const WindowSchedule& w, const Real& rho1, const Real& delta);

// Per-index data cached by the strategy.
struct IndexData {
  long k;
  Real t;       // operator norm
  Vec v;        // top right singular vector
  Mat matrix;
};
IndexData index_data(const LacunarySystem& s, long k);

struct StageSlab {
  long k;
  Vec target;            // y_k
  HyperplaneSlab slab;   // thickness zeta
};

// Slabs covering B_j ∩ M_k^{-1}(Z_k^{(c)}) for every k in the given list.
// Throws MultipleTargets when a k admits two candidate targets.
std::vector<StageSlab> stage_slabs(const LacunarySystem& s, const std::vector<IndexData>& ks,
                                   const Ball& bj, const Real& delta, const Real& zeta);

// Slabs still met by `b` (tested at their own thickness).
std::vector<StageSlab> halving_followup(const std::vector<StageSlab>& pending, const Ball& b);

struct StageCertificate {
  int stage = 0;
  std::vector<long> ks;
  Real window_lo, window_hi;
  Real c;
  int completed_at_bob_move = 0;  // 1-based count of Bob balls
};

struct EscapeConfig {
  Real beta;
  std::optional<Real> delta;  // else measured on a probe ball
  int max_index_scan = 4096;  // safety cap on k when filling a window
};

// Alice's strategy for the escaping set in the hyperplane (beta, 1/2) game.
class EscapeStrategy : public AliceStrategy {
 public:
  EscapeStrategy(LacunarySystem system, EscapeConfig cfg);

  AliceMove move(const GameParams& params, const GameTranscript& so_far) override;
  std::string name() const override { return "escape"; }

  const WindowSchedule& schedule() const { return sched_; }
  const Real& delta() const { return delta_; }
  const Real& q_used() const { return q_; }
  bool gated() const { return gated_; }
  const Real& rho1() const { return rho1_; }
  Real c() const { return theoretical_c(sched_, rho1_, delta_); }
  const std::vector<StageCertificate>& certificates() const { return certs_; }
  const std::vector<std::string>& log() const { return log_; }
  // Indices of window j (filled lazily).
  std::vector<IndexData> window_indices(int j);
  const IndexData& data(long k);

 private:
  void begin_stage(int j, const Ball& b, int bob_move);
  void finish_stage(int bob_move);

  LacunarySystem sys_;
  EscapeConfig cfg_;
  WindowSchedule sched_;
  Real q_;
  Real delta_;
  std::map<long, IndexData> cache_;

  bool gated_ = false;
  Real rho1_ = 0;
  int stage_ = 0;
  bool stage_open_ = false;
  std::vector<StageSlab> pending_;
  std::vector<long> stage_ks_;
  std::vector<StageCertificate> certs_;
  std::vector<std::string> log_;
};

// Brute-force best approximations: successive strict minima of dist(Aq, Z^M)
// over 0 < |q| <= q_bound, q taken up to sign (first nonzero entry positive),
// in order of Euclidean norm then lexicographically.
struct BestApproximation {
  std::vector<long> q;
  double error;
};
std::vector<BestApproximation> best_approximations(const std::vector<std::vector<double>>& a,
                                                   long q_bound);

// Greedy: keep values[0], then each value >= q_min * last kept.
std::vector<std::size_t> lacunary_subsequence(const std::vector<double>& values, double q_min);

}  // namespace sgame

#endif  // SGAME_ESCAPE_H_
