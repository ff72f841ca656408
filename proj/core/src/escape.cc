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

#include "sgame/escape.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace sgame {

namespace {

Mat mat_power(const Mat& base, long k) {
  if (k < 0) throw Error("InvalidSystem", "negative matrix power");
  Mat result = Mat::identity(base.rows());
  Mat b = base;
  while (k > 0) {
    if (k & 1) result = result * b;
    k >>= 1;
    if (k > 0) b = b * b;
  }
  return result;
}

}  // namespace

std::vector<Vec> lattice_points_near(const Vec& shift, const Real& scale, const Vec& center,
                                     const Real& radius) {
  const std::size_t d = center.size();
  if (shift.size() != d) throw Error("DimensionMismatch", "lattice shift has the wrong dimension");
  std::vector<long> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = ceil((center[i] - radius) / scale - shift[i]).convert_to<long>();
    hi[i] = floor((center[i] + radius) / scale - shift[i]).convert_to<long>();
    if (hi[i] < lo[i]) return {};
  }
  std::vector<Vec> out;
  std::vector<long> z = lo;
  while (true) {
    Vec p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = scale * (Real(z[i]) + shift[i]);
    if (distance(p, center) <= radius) out.push_back(std::move(p));
    std::size_t i = 0;
    while (i < d && z[i] == hi[i]) z[i] = lo[i], ++i;
    if (i == d) break;
    ++z[i];
  }
  return out;
}

LacunarySystem power_system(const Mat& base, long first_index, Vec shift) {
  if (base.rows() != base.cols()) throw Error("InvalidSystem", "power base must be square");
  LacunarySystem s;
  s.m = static_cast<int>(base.rows());
  s.n = static_cast<int>(base.cols());
  s.first_index = first_index;
  s.matrix = [base](long k) { return mat_power(base, k); };
  s.targets_near = [shift](long, const Vec& c, const Real& r) {
    return lattice_points_near(shift, Real(1), c, r);
  };
  s.separation = Real(1);
  s.description = "power";
  return s;
}

LacunarySystem scaled_lattice_system(const Mat& base, long first_index, Real ratio, Vec shift) {
  LacunarySystem s = power_system(base, first_index, shift);
  s.targets_near = [shift, ratio](long k, const Vec& c, const Real& r) {
    return lattice_points_near(shift, ipow(ratio, -k), c, r);
  };
  s.separation.reset();
  s.description = "scaled-lattice";
  return s;
}

NonLacunary::NonLacunary(long k, const Real& ratio)
    : Error("NonLacunary", "norm ratio at index " + std::to_string(k) + " is " + to_string(ratio)),
      k_(k) {}

NotDiscrete::NotDiscrete(long k, Vec a, Vec b, const Real& dist)
    : Error("NotDiscrete",
            "targets at index " + std::to_string(k) + " are " + to_string(dist) + " apart"),
      k_(k),
      pair_(std::move(a), std::move(b)) {}

MultipleTargets::MultipleTargets(long k)
    : Error("MultipleTargets", "two candidate targets at index " + std::to_string(k)), k_(k) {}

LacunarityReport check_lacunary(const LacunarySystem& s, int K, const Real& threshold) {
  if (K < 2) throw Error("InvalidArgument", "lacunarity check needs K >= 2");
  LacunarityReport rep;
  for (int i = 0; i < K; ++i) {
    Mat m = s.matrix(s.first_index + i);
    rep.norms.push_back(top_singular_pair(m, tolerance()).value);
  }
  for (int i = 0; i + 1 < K; ++i) {
    const long k = s.first_index + i;
    if (rep.norms[i] <= 0) throw NonLacunary(k, Real(0));
    Real ratio = rep.norms[i + 1] / rep.norms[i];
    if (ratio <= threshold) throw NonLacunary(k, ratio);
    if (i == 0 || ratio < rep.q) {
      rep.q = ratio;
      rep.argmin = k;
    }
  }
  return rep;
}

Real check_uniformly_discrete(const LacunarySystem& s, int K, const Ball& probe,
                              const Real& threshold) {
  // Enumeration is contiguous, so near neighbours fall inside the cap.
  constexpr std::size_t kCap = 4096;
  std::optional<Real> best;
  for (int i = 0; i < K; ++i) {
    const long k = s.first_index + i;
    std::vector<Vec> pts = s.targets_near(k, probe.center(), probe.radius());
    if (pts.size() > kCap) pts.resize(kCap);
    // Sweep in order of the first coordinate; a pair whose first coordinates
    // already differ by more than the best distance cannot improve it.
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        const Real gap = pts[b][0] - pts[a][0];
        if (best && gap > *best && gap > threshold) break;
        Real d = distance(pts[a], pts[b]);
        if (d <= threshold) throw NotDiscrete(k, pts[a], pts[b], d);
        if (!best || d < *best) best = d;
      }
  }
  if (!best) throw Error("InsufficientProbe", "probe ball holds fewer than two targets");
  return *best;
}

NR compute_n_r(const Real& beta, const Real& q) {
  if (!(beta > 0 && beta < 1)) throw Error("InvalidArgument", "beta must lie in (0, 1)");
  if (!(q > 1)) throw Error("InvalidArgument", "Q must exceed 1");
  const Real inv = 1 / beta;
  for (int n = 1; n < 1 << 20; ++n) {
    int r = std::bit_width(static_cast<unsigned>(n));
    if (ipow(inv, r) <= ipow(q, n) * (1 + tolerance())) return {n, r};
  }
  throw Error("InvalidArgument", "no admissible n below 2^20");
}

Real WindowSchedule::lower(int j) const { return ipow(beta, -static_cast<long>(r) * (j - 1)) * t1; }
Real WindowSchedule::upper(int j) const { return ipow(beta, -static_cast<long>(r) * j) * t1; }

int WindowSchedule::window_of(const Real& t) const {
  if (t < t1) throw Error("InvalidArgument", "t lies below t1");
  Real est = log(t / t1) / (r * log(1 / beta));
  int j = 1 + static_cast<int>(floor(est).convert_to<long>());
  if (j < 1) j = 1;
  while (j > 1 && t < lower(j)) --j;
  while (t >= upper(j)) ++j;
  return j;
}

Real first_ball_gate_bound(const WindowSchedule& w, const Real& delta) {
  return ipow(w.beta, w.r) * delta / (4 * w.t1);
}

bool first_ball_gate(const WindowSchedule& w, const Real& delta, const Real& rho1) {
  return rho1 < first_ball_gate_bound(w, delta);
}

Real theoretical_c(const WindowSchedule& w, const Real& rho1, const Real& delta) {
  Real a = ipow(w.beta, w.r + 1) * rho1 * w.t1;
  Real b = delta / 4;
  return a < b ? a : b;
}

IndexData index_data(const LacunarySystem& s, long k) {
  Mat m = s.matrix(k);
  if (m.rows() != static_cast<std::size_t>(s.m) || m.cols() != static_cast<std::size_t>(s.n))
    throw Error("InvalidSystem", "matrix at index " + std::to_string(k) + " has the wrong shape");
  SingularPair sp = top_singular_pair(m, tolerance());
  return {k, sp.value, std::move(sp.right), std::move(m)};
}

std::vector<StageSlab> stage_slabs(const LacunarySystem& s, const std::vector<IndexData>& ks,
                                   const Ball& bj, const Real& delta, const Real& zeta) {
  std::vector<StageSlab> out;
  for (const IndexData& d : ks) {
    Vec image = d.matrix.apply(bj.center());
    std::vector<Vec> cands = s.targets_near(d.k, image, d.t * bj.radius() + delta / 4);
    if (cands.size() > 1) throw MultipleTargets(d.k);
    if (cands.empty()) continue;  // every point of B_j is already delta/4 away
    // Plane {x : (M v).(M x - y) = 0}: its normal M^T M v is parallel to v.
    Vec mv = d.matrix.apply(d.v);
    Vec w = d.matrix.transpose().apply(mv);
    out.push_back({d.k, cands[0], HyperplaneSlab::from_raw(w, dot(mv, cands[0]), zeta)});
  }
  return out;
}

std::vector<StageSlab> halving_followup(const std::vector<StageSlab>& pending, const Ball& b) {
  std::vector<StageSlab> out;
  for (const StageSlab& s : pending)
    if (!ball_avoids_slab(b, s.slab)) out.push_back(s);
  return out;
}

EscapeStrategy::EscapeStrategy(LacunarySystem system, EscapeConfig cfg)
    : sys_(std::move(system)), cfg_(std::move(cfg)) {
  int prefix = 32;
  if (sys_.last_index >= 0)
    prefix = static_cast<int>(std::min<long>(prefix, sys_.last_index - sys_.first_index + 1));
  LacunarityReport rep = check_lacunary(sys_, prefix);
  q_ = rep.q;
  if (sys_.lacunarity_floor) {
    if (*sys_.lacunarity_floor > rep.q)
      throw Error("InvalidSystem", "declared lacunarity floor exceeds the measured ratio");
    q_ = *sys_.lacunarity_floor;
  }
  if (cfg_.delta) {
    delta_ = *cfg_.delta;
  } else if (sys_.separation) {
    delta_ = *sys_.separation;
  } else {
    delta_ = check_uniformly_discrete(sys_, 32, Ball(Vec(sys_.m), Real(2)), tolerance());
  }
  NR nr = compute_n_r(cfg_.beta, q_);
  sched_.beta = cfg_.beta;
  sched_.n = nr.n;
  sched_.r = nr.r;
  sched_.t1 = rep.norms.front();
}

const IndexData& EscapeStrategy::data(long k) {
  auto it = cache_.find(k);
  if (it == cache_.end()) it = cache_.emplace(k, index_data(sys_, k)).first;
  return it->second;
}

std::vector<IndexData> EscapeStrategy::window_indices(int j) {
  const Real lo = sched_.lower(j), hi = sched_.upper(j);
  std::vector<IndexData> out;
  Real prev = 0;
  for (long k = sys_.first_index; k < sys_.first_index + cfg_.max_index_scan; ++k) {
    if (sys_.last_index >= 0 && k > sys_.last_index) return out;  // finite system
    const IndexData& d = data(k);
    if (k > sys_.first_index && d.t < prev * q_ * (1 - tolerance())) throw NonLacunary(k - 1, d.t / prev);
    prev = d.t;
    if (d.t < lo) continue;
    if (d.t >= hi) return out;
    out.push_back(d);
    if (static_cast<int>(out.size()) > sched_.n)
      throw Error("WindowOverflow", "window " + std::to_string(j) + " holds more than n indices");
  }
  throw Error("IndexScanExhausted", "window " + std::to_string(j) + " not closed within the scan cap");
}

void EscapeStrategy::begin_stage(int j, const Ball& b, int bob_move) {
  stage_ = j;
  std::vector<IndexData> ks = window_indices(j);
  stage_ks_.clear();
  for (const IndexData& d : ks) stage_ks_.push_back(d.k);
  const Real zeta = ipow(sched_.beta, sched_.r) * b.radius();
  pending_ = halving_followup(stage_slabs(sys_, ks, b, delta_, zeta), b);
  stage_open_ = true;
  log_.push_back("stage " + std::to_string(j) + " at Bob move " + std::to_string(bob_move) + ": " +
                 std::to_string(ks.size()) + " indices, " + std::to_string(pending_.size()) +
                 " slabs");
  if (pending_.empty()) finish_stage(bob_move);
}

void EscapeStrategy::finish_stage(int bob_move) {
  StageCertificate c;
  c.stage = stage_;
  c.ks = stage_ks_;
  c.window_lo = sched_.lower(stage_);
  c.window_hi = sched_.upper(stage_);
  c.c = this->c();
  c.completed_at_bob_move = bob_move;
  certs_.push_back(std::move(c));
  stage_open_ = false;
  pending_.clear();
}

AliceMove EscapeStrategy::move(const GameParams& params, const GameTranscript& so_far) {
  if (params.variant != Variant::kHyperplanePercentage || params.p > Rational(1, 2))
    throw Resignation("UnsupportedGame", "escape strategy plays the hyperplane (beta, 1/2) game");
  if (abs(params.beta - sched_.beta) > tolerance() * sched_.beta)
    throw Resignation("UnsupportedGame", "game beta differs from the strategy beta");
  const Ball& b = so_far.current_ball();
  const int bob_move = so_far.bob_moves();

  if (!gated_) {
    if (first_ball_gate(sched_, delta_, b.radius())) {
      gated_ = true;
      rho1_ = b.radius();
      begin_stage(1, b, bob_move);
    } else {
      log_.push_back("dummy move at Bob move " + std::to_string(bob_move) + ": radius above gate");
    }
  } else if (b.radius() <= ipow(sched_.beta, static_cast<long>(sched_.r) * stage_) * rho1_) {
    if (stage_open_) {
      pending_ = halving_followup(pending_, b);
      if (!pending_.empty())
        throw Resignation("StrategyInvariantViolated",
                          "stage " + std::to_string(stage_) + " ended with surviving slabs");
      finish_stage(bob_move);
    }
    begin_stage(stage_ + 1, b, bob_move);
  } else if (stage_open_) {
    pending_ = halving_followup(pending_, b);
    if (pending_.empty()) finish_stage(bob_move);
  }

  if (stage_open_ && !pending_.empty()) {
    std::vector<HyperplaneSlab> slabs;
    for (const StageSlab& s : pending_) slabs.push_back(s.slab);
    return slabs;
  }
  return std::vector<HyperplaneSlab>{dummy_slab(b, params.beta)};
}

std::vector<BestApproximation> best_approximations(const std::vector<std::vector<double>>& a,
                                                   long q_bound) {
  if (a.empty() || a[0].empty()) throw Error("DimensionMismatch", "empty matrix");
  const std::size_t m = a.size(), n = a[0].size();
  double box = 1;
  for (std::size_t i = 0; i < n; ++i) box *= 2.0 * q_bound + 1;
  if (box > 5e7) throw Error("BudgetExceeded", "best-approximation search box too large");
  std::vector<std::pair<long, std::vector<long>>> qs;
  std::vector<long> q(n, -q_bound);
  while (true) {
    long n2 = 0;
    for (long x : q) n2 += x * x;
    long first = 0;
    for (long x : q)
      if (x != 0) {
        first = x;
        break;
      }
    if (first > 0 && n2 <= q_bound * q_bound) qs.emplace_back(n2, q);
    std::size_t i = 0;
    while (i < n && q[i] == q_bound) q[i++] = -q_bound;
    if (i == n) break;
    ++q[i];
  }
  std::stable_sort(qs.begin(), qs.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first < y.first : x.second < y.second;
  });
  std::vector<BestApproximation> out;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [n2, qq] : qs) {
    double e2 = 0;
    for (std::size_t r = 0; r < m; ++r) {
      double s = 0;
      for (std::size_t c = 0; c < n; ++c) s += a[r][c] * static_cast<double>(qq[c]);
      double d = s - std::nearbyint(s);
      e2 += d * d;
    }
    double e = std::sqrt(e2);
    if (e < best) {
      best = e;
      out.push_back({qq, e});
      if (e == 0) break;
    }
  }
  return out;
}

std::vector<std::size_t> lacunary_subsequence(const std::vector<double>& values, double q_min) {
  std::vector<std::size_t> out;
  if (values.empty()) return out;
  out.push_back(0);
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] >= q_min * values[out.back()]) out.push_back(i);
  return out;
}

}  // namespace sgame
