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

#include "sgame/linforms.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sgame/bob_strategies.h"
#include "sgame/transcript_io.h"

namespace sgame {

using nlohmann::json;

std::string phase_name(Phase p) { return p == Phase::kX ? "X" : "Y"; }

std::string case_name(CaseChoice c) {
  switch (c) {
    case CaseChoice::kNone: return "none";
    case CaseChoice::kDummy: return "dummy";
    case CaseChoice::kDelete: return "delete";
    case CaseChoice::kAmbiguous: return "ambiguous";
  }
  return "none";
}

namespace {

Real rpow(const Real& base, const Real& e) { return boost::multiprecision::pow(base, e); }

long to_long(const Real& x) { return x.convert_to<long>(); }

std::string intvec_string(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

WindowParams::WindowParams(int m_, int n_, Real r_, Real sigma_, Real rho_)
    : m(m_), n(n_), r(std::move(r_)), sigma(std::move(sigma_)), rho(std::move(rho_)) {
  if (m < 1 || n < 1) throw Error("InvalidParams", "M and N must be positive");
  if (r <= 1) throw Error("InvalidParams", "R must exceed 1");
}

Real WindowParams::lambda() const { return Real(n) / l(); }
Real WindowParams::delta() const { return ipow(r, -static_cast<long>(n) * l() * l()); }
Real WindowParams::delta_t() const { return ipow(r, -static_cast<long>(m) * l() * l()); }

Real WindowParams::x_bound(int i) const { return delta() * rpow(r, m * (lambda() + i)); }
Real WindowParams::ax_bound(int i) const { return delta() * rpow(r, -n * (lambda() + i) - m); }
Real WindowParams::y_bound(int j) const { return delta_t() * ipow(r, static_cast<long>(n) * (1 + j)); }
Real WindowParams::by_bound(int j) const {
  return delta_t() * ipow(r, -static_cast<long>(m) * (1 + j) - n);
}

// L lambda = N, so the k thresholds have integer exponents.
Real WindowParams::k_threshold(int i) const { return ipow(r, -(n + static_cast<long>(l()) * i)); }
Real WindowParams::h_threshold(int j) const { return ipow(r, -static_cast<long>(l()) * (1 + j)); }

Real WindowParams::observation_constant() const {
  return ipow(delta(), l()) * ipow(r, -static_cast<long>(m) * l());
}

Vec forms_a(const LinearFormsPoint& a, const IntVec& x) {
  if (static_cast<int>(x.size()) != a.l()) throw Error("DimensionMismatch", "X must lie in Z^L");
  Vec out(a.m());
  for (int u = 0; u < a.m(); ++u) {
    Real s = x[a.n() + u];
    for (int c = 0; c < a.n(); ++c) s += a(u, c) * x[c];
    out[u] = s;
  }
  return out;
}

Vec forms_b(const LinearFormsPoint& a, const IntVec& y) {
  if (static_cast<int>(y.size()) != a.l()) throw Error("DimensionMismatch", "Y must lie in Z^L");
  Vec out(a.n());
  for (int v = 0; v < a.n(); ++v) {
    Real s = y[a.m() + v];
    for (int r = 0; r < a.m(); ++r) s += a(r, v) * y[r];
    out[v] = s;
  }
  return out;
}

namespace {

Real int_norm(const IntVec& v, std::size_t from, std::size_t count) {
  Real s = 0;
  for (std::size_t i = from; i < from + count; ++i) s += Real(v[i]) * v[i];
  return sqrt(s);
}

}  // namespace

bool satisfies_list(const LinearFormsPoint& a, const WindowParams& w, int which, int index,
                    const IntVec& v) {
  if (static_cast<int>(v.size()) != w.l()) throw Error("DimensionMismatch", "vector must lie in Z^L");
  switch (which) {
    case 1: {
      Real x = int_norm(v, 0, w.n);
      return x > 0 && x < w.x_bound(index);
    }
    case 2: return norm(forms_a(a, v)) < w.ax_bound(index);
    case 3: {
      Real y = int_norm(v, 0, w.m);
      return y > 0 && y < w.y_bound(index);
    }
    case 4: return norm(forms_b(a, v)) < w.by_bound(index);
    default: throw Error("InvalidParams", "list index must be 1..4");
  }
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct ScanResult {
  std::vector<IntVec> solutions;
  Real margin;
  long enumerated = 0;
};

// Walks every integer head vector with 0 < |head| < norm bound and every tail
// within reach, calling the value test on each.
ScanResult scan(const Ball& ball, const WindowParams& w, Phase phase, int index,
                const EnumerationBudget& budget, bool stop_at_first) {
  if (static_cast<int>(ball.dim()) != w.h())
    throw Error("DimensionMismatch", "ball must live in R^H");
  const LinearFormsPoint center = LinearFormsPoint::from_point(w.m, w.n, ball.center());
  const bool xs = phase == Phase::kX;
  const int head = xs ? w.n : w.m;
  const int tail = xs ? w.m : w.n;
  const Real nb = w.norm_bound(phase, index);
  const Real vb = w.value_bound(phase, index);
  const Real& tau = tolerance();

  ScanResult out;
  out.margin = std::numeric_limits<double>::infinity();
  const long box = to_long(floor(nb));
  if (box < 1) return out;
  double cells = std::pow(2.0 * box + 1, head);
  if (cells > static_cast<double>(budget.max_vectors))
    throw EnumerationTooLarge("phase " + phase_name(phase) + " index " + std::to_string(index) +
                              " needs " + std::to_string(cells) + " head vectors");

  IntVec h(head, -box);
  IntVec full(w.l());
  for (;;) {
    Real hn = int_norm(h, 0, head);
    if (hn > 0 && hn < nb) {
      ++out.enumerated;
      // Value of the forms at the center, tail excluded.
      Vec c(tail);
      for (int t = 0; t < tail; ++t) {
        Real s = 0;
        for (int k = 0; k < head; ++k)
          s += (xs ? center(t, k) : center(k, t)) * h[k];
        c[t] = s;
      }
      const Real slack = ball.radius() * hn;
      const Real reach = vb + slack + tau;
      // Nearest tail gives the margin; the full range gives the solutions.
      {
        Real s = 0;
        for (int t = 0; t < tail; ++t) {
          Real d = c[t] - round(c[t]);
          s += d * d;
        }
        out.margin = std::min(out.margin, Real(sqrt(s) - slack - vb));
      }
      std::vector<long> lo(tail), hi(tail);
      bool empty = false;
      for (int t = 0; t < tail; ++t) {
        lo[t] = to_long(ceil(-c[t] - reach));
        hi[t] = to_long(floor(-c[t] + reach));
        if (lo[t] > hi[t]) empty = true;
      }
      if (!empty) {
        IntVec z(lo.begin(), lo.end());
        for (;;) {
          Real s = 0;
          for (int t = 0; t < tail; ++t) {
            Real d = c[t] + z[t];
            s += d * d;
          }
          if (sqrt(s) - slack < vb * (1 + tau) + tau) {
            std::copy(h.begin(), h.end(), full.begin());
            std::copy(z.begin(), z.end(), full.begin() + head);
            out.solutions.push_back(full);
            if (stop_at_first) return out;
          }
          int t = 0;
          while (t < tail && z[t] == hi[t]) z[t] = lo[t], ++t;
          if (t == tail) break;
          ++z[t];
        }
      }
    }
    int k = 0;
    while (k < head && h[k] == box) h[k] = -box, ++k;
    if (k == head) break;
    ++h[k];
  }
  return out;
}

}  // namespace

std::vector<IntVec> enumerate_solutions(const Ball& ball, const WindowParams& w, Phase phase,
                                        int index, const EnumerationBudget& budget) {
  return scan(ball, w, phase, index, budget, false).solutions;
}

NoSolutionCertificate certify_no_solution(const Ball& ball, const WindowParams& w, Phase phase,
                                          int index, int ball_id,
                                          const EnumerationBudget& budget) {
  NoSolutionCertificate cert;
  cert.phase = phase;
  cert.index = index;
  cert.ball_id = ball_id;
  cert.norm_bound = w.norm_bound(phase, index);
  cert.value_bound = w.value_bound(phase, index);
  ScanResult r = scan(ball, w, phase, index, budget, true);
  cert.margin = r.margin;
  cert.enumerated = r.enumerated;
  if (!r.solutions.empty()) cert.witness = r.solutions.front();
  return cert;
}

// ---------------------------------------------------------------------------
// Constants

namespace {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

ConstantsSchedule ConstantsSchedule::compute(int order, const Real& beta, const Real& sigma) {
  if (order < 1) throw Error("InvalidParams", "order must be positive");
  if (sigma <= 0) throw Error("InvalidParams", "sigma must be positive");
  ConstantsSchedule s;
  s.order = order;
  s.beta = beta;
  s.sigma = sigma;
  // The largest minor of order v-1 is at least M_{v-1} / binom(order, v-1).
  long c = 1;
  for (int v = 1; v <= order; ++v) c = std::max(c, binom(order, v - 1));
  const Real root = sqrt(Real(order));
  s.eps1 = 1 / (2 * root * c);
  s.eps2 = 1 / (2 * c * (1 + root * sigma));
  const Real b2e2 = beta * beta * s.eps2;
  s.nu.assign(order + 1, Real(0));
  s.mu.assign(order, Real(0));
  s.nu[0] = 1;
  for (int v = 1; v <= order; ++v) {
    s.mu[v - 1] = b2e2 * s.nu[v - 1] / (v * v);
    s.nu[v] = std::min(Real(b2e2 * s.mu[v - 1] / (2 * v)), Real(s.eps1 / (v * sigma)));
  }
  return s;
}

bool ConstantsSchedule::strictly_decreasing() const {
  for (int v = 1; v <= order; ++v) {
    if (!(nu[v - 1] > mu[v - 1] && mu[v - 1] > nu[v])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Grid sampling

std::vector<Vec> ball_grid(const Ball& b, const GridOptions& g) {
  if (g.divisor < 1) throw Error("InvalidParams", "grid divisor must be positive");
  const int d = static_cast<int>(b.dim());
  const int k = g.divisor;
  const Real pitch = b.radius() / k;
  std::vector<Vec> pts;
  const double cube = std::pow(2.0 * k + 1, d);
  if (cube <= 4.0 * static_cast<double>(g.max_points)) {
    std::vector<int> z(d, -k);
    for (;;) {
      long sq = 0;
      for (int x : z) sq += static_cast<long>(x) * x;
      if (sq <= static_cast<long>(k) * k) {
        Vec p = b.center();
        for (int i = 0; i < d; ++i) p[i] += pitch * z[i];
        pts.push_back(std::move(p));
      }
      int i = 0;
      while (i < d && z[i] == k) z[i] = -k, ++i;
      if (i == d) break;
      ++z[i];
    }
    return pts;
  }
  // Center, the 2d axis extremes, then a fixed-seed sample of the ball.
  pts.push_back(b.center());
  for (int i = 0; i < d; ++i)
    for (int s : {-1, 1}) {
      Vec p = b.center();
      p[i] += s * b.radius();
      pts.push_back(std::move(p));
    }
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(d);
  while (static_cast<long>(pts.size()) < g.max_points) {
    double sq = 0;
    for (double& xi : x) xi = u(rng), sq += xi * xi;
    if (sq > 1) continue;
    Vec p = b.center();
    for (int i = 0; i < d; ++i) p[i] += b.radius() * x[i];
    pts.push_back(std::move(p));
  }
  return pts;
}

// ---------------------------------------------------------------------------
// Finite minor game

FiniteMinorGame::FiniteMinorGame(MinorSystem sys, ConstantsSchedule sched, Ball start,
                                 Real mu_target, GridOptions grid)
    : sys_(std::move(sys)), sched_(std::move(sched)), rho_b_(start.radius()), grid_(grid) {
  const int k = sys_.order();
  if (sched_.order != k) throw Error("InvalidParams", "schedule order differs from the basis size");
  if (!(mu_target > 0)) throw Error("InvalidParams", "mu target must be positive");
  if (static_cast<int>(start.dim()) != sys_.m() * sys_.n())
    throw Error("DimensionMismatch", "starting ball must live in R^H");
  std::vector<Real> mu(sched_.mu.begin(), sched_.mu.end());
  mu.push_back(mu_target);
  if (mu_target >= sched_.mu[k - 1]) {
    // The available window is too short for the schedule: scale the
    // intermediate thresholds so they stay above the target, capping each
    // one at "already reached".
    compressed_ = true;
    const Real s = mu_target / sched_.nu[k];
    for (int v = 0; v < k; ++v) mu[v] = std::min(Real(sched_.mu[v] * s), Real(2));
  }
  thr_.resize(k + 1);
  for (int v = 0; v <= k; ++v) thr_[v] = mu[v] * rho_b_;
  levels_.resize(k);
  for (int v = 1; v <= k; ++v) levels_[v - 1].v = v;
}

bool FiniteMinorGame::postconditions_ok() const {
  for (const LevelReport& l : levels_)
    if (!l.postcondition_ok || l.checked_at < 0) return false;
  return true;
}

void FiniteMinorGame::decide(int v, const Ball& b, int bob_move) {
  LevelReport& rep = levels_[v - 1];
  rep.decided_at = bob_move;
  const int m = sys_.m(), n = sys_.n();
  const std::vector<Vec> pts = ball_grid(b, grid_);
  Real best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  Real lo_prev = std::numeric_limits<double>::infinity(), hi_prev = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Real> mv = sys_.mv_all(LinearFormsPoint(m, n, pts[i]));
    const Real& prev = mv[v - 1];
    lo_prev = std::min(lo_prev, prev);
    hi_prev = std::max(hi_prev, prev);
    Real ratio = prev > 0 ? Real(mv[v] / prev) : Real(std::numeric_limits<double>::infinity());
    if (ratio < best) best = ratio, arg = i;
  }
  rep.grid_min_ratio = best;
  rep.samples = static_cast<long>(pts.size());
  rep.claim_ok = v == 1 || hi_prev <= v * lo_prev;

  const Real& eps1 = sched_.eps1;
  const Real band = tolerance() * eps1;
  if (best > eps1 + band) {
    rep.choice = CaseChoice::kDummy;
    return;
  }
  rep.choice = best < eps1 - band ? CaseChoice::kDelete : CaseChoice::kAmbiguous;

  const LinearFormsPoint a(m, n, pts[arg]);
  Real gbest = -1;
  Vec g;
  for (const MinorIndex& w : minor_indices(sys_.order(), v)) {
    Vec gw = sys_.grad_vector(a, w);
    Real gn = norm(gw);
    if (gn > gbest) gbest = gn, g = std::move(gw), rep.omega = w;
  }
  if (!(gbest > 0)) return;  // flat minor: nothing to delete
  const Real d = sys_.minor(a, rep.omega);
  rep.slab = HyperplaneSlab::from_raw(g, dot(g, pts[arg]) - d, sched_.beta * b.radius());
}

void FiniteMinorGame::check(int v, const Ball& b, int bob_move) {
  LevelReport& rep = levels_[v - 1];
  rep.checked_at = bob_move;
  const Real bound = sched_.nu[v] * rho_b_ * sys_.sup_mv_bound(b, v - 1);
  Real worst = std::numeric_limits<double>::infinity();
  for (const Vec& p : ball_grid(b, grid_)) {
    Real margin = sys_.mv(LinearFormsPoint(sys_.m(), sys_.n(), p), v) - bound;
    worst = std::min(worst, margin);
  }
  rep.worst_margin = worst;
  rep.postcondition_ok = worst > 0;
}

std::optional<HyperplaneSlab> FiniteMinorGame::next(const Ball& current, int bob_move) {
  const Real& rho = current.radius();
  for (;;) {
    if (pending_check_ > 0) {
      if (!(rho < thr_[pending_check_])) return std::nullopt;
      check(pending_check_, current, bob_move);
      pending_check_ = 0;
    }
    if (next_level_ > order() || !(rho < thr_[next_level_ - 1])) return std::nullopt;
    const int v = next_level_++;
    decide(v, current, bob_move);
    pending_check_ = v;
    // A deleted slab takes this turn; its level is checked on a later ball.
    if (levels_[v - 1].slab) return levels_[v - 1].slab;
  }
}

void FiniteMinorGame::finish(const Ball& final_ball, int bob_move) {
  if (pending_check_ > 0 && final_ball.radius() < thr_[pending_check_]) {
    check(pending_check_, final_ball, bob_move);
    pending_check_ = 0;
  }
}

namespace {

class FiniteAlice : public AliceStrategy {
 public:
  explicit FiniteAlice(FiniteMinorGame& g) : g_(g) {}
  AliceMove move(const GameParams& params, const GameTranscript& t) override {
    const Ball& b = t.current_ball();
    if (auto s = g_.next(b, t.bob_moves() - 1)) return std::vector<HyperplaneSlab>{*s};
    return std::vector<HyperplaneSlab>{dummy_slab(b, params.beta)};
  }
  std::string name() const override { return "finite-minor"; }

 private:
  FiniteMinorGame& g_;
};

}  // namespace

FiniteGameRun finite_minor_game(const MinorSystem& sys, const ConstantsSchedule& sched,
                                const Ball& start, const Real& mu_target, const Real& beta,
                                BobStrategy& bob, GridOptions grid, bool strict) {
  FiniteMinorGame game(sys, sched, start, mu_target, grid);
  GameParams p;
  p.variant = Variant::kHyperplaneAbsolute;
  p.beta = beta;
  p.dim = sys.m() * sys.n();
  p.stop_radius = game.thresholds().back();
  p.detect_no_legal_move = false;
  FiniteAlice alice(game);
  FiniteGameRun run;
  run.transcript = Referee(p).play(alice, bob);
  if (run.transcript.bob_moves() > 0)
    game.finish(run.transcript.current_ball(), run.transcript.bob_moves() - 1);
  run.levels = game.levels();
  run.postconditions_ok = run.transcript.outcome == Outcome::kStopped && game.postconditions_ok();
  if (strict)
    for (const LevelReport& l : run.levels)
      if (l.checked_at >= 0 && !l.postcondition_ok)
        throw StrategyPostconditionFailed("level " + std::to_string(l.v) + " margin " +
                                          to_string(l.worst_margin) + " at Bob move " +
                                          std::to_string(l.checked_at));
  return run;
}

Real blocking_margin(const MinorSystem& sys, const Ball& b, const Real& threshold,
                     const GridOptions& g) {
  const int k = sys.order();
  const Real factor = k * sqrt(Real(k)) * threshold;
  Real worst = std::numeric_limits<double>::infinity();
  for (const Vec& p : ball_grid(b, g)) {
    MinorTable t = minor_table(sys, LinearFormsPoint(sys.m(), sys.n(), p));
    Real sub = 0;
    for (const Real& d : t.values[k - 1]) sub = std::max(sub, Real(abs(d)));
    worst = std::min(worst, Real(abs(t.values[k][0]) - factor * sub));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Bad_0 strategy

Bad0Strategy::Bad0Strategy(int m, int n, Bad0Config cfg) : m_(m), n_(n), cfg_(std::move(cfg)) {
  if (m_ < 1 || n_ < 1) throw Error("InvalidParams", "M and N must be positive");
  if (!(cfg_.r > 1)) throw Error("InvalidParams", "R must exceed 1");
  if (!(cfg_.beta > 0 && cfg_.beta < Real(1) / 3))
    throw Error("InvalidParams", "beta must lie in (0, 1/3)");
}

void Bad0Strategy::init(const Ball& first) {
  if (static_cast<int>(first.dim()) != m_ * n_)
    throw Error("DimensionMismatch", "first ball must live in R^H");
  const Real sigma = norm(first.center()) + first.radius();
  w_.emplace(m_, n_, cfg_.r, sigma, first.radius());
  sched_cols_ = ConstantsSchedule::compute(n_, cfg_.beta, sigma);
  sched_rows_ = ConstantsSchedule::compute(m_, cfg_.beta, sigma);
  auto gate = [&](const Real& lhs, const Real& rhs, const std::string& what) {
    if (!(lhs <= rhs)) gates_.push_back(what + ": " + to_string(lhs) + " > " + to_string(rhs));
  };
  const Real rm = ipow(cfg_.r, -m_), rn = ipow(cfg_.r, -n_);
  gate(rm, cfg_.beta * sched_cols_->nu[n_] / (n_ * sqrt(Real(n_))), "R^-M <= beta nu_N / (N sqrt N)");
  gate(rn, cfg_.beta * sched_rows_->nu[m_] / (m_ * sqrt(Real(m_))), "R^-N <= beta nu_M / (M sqrt M)");
  gate(rm, first.radius(), "R^-M <= rho_0");
  gate(rn, first.radius(), "R^-N <= rho_0");
}

void Bad0Strategy::process_events(const Ball& b, int bob_move, bool play) {
  for (;;) {
    const bool x_next = next_k_ == next_h_;
    const Real thr = x_next ? w_->k_threshold(next_k_) : w_->h_threshold(next_h_);
    if (!(b.radius() < thr)) return;
    if (x_next) handle(Phase::kX, next_k_++, b, bob_move, play);
    else handle(Phase::kY, next_h_++, b, bob_move, play);
  }
}

void Bad0Strategy::handle(Phase phase, int index, const Ball& b, int bob_move, bool play) {
  const WindowParams& w = *w_;
  if (game_) {
    game_->finish(b, bob_move);
    if (!game_->done())
      diag_.push_back("finite game abandoned unfinished at Bob move " + std::to_string(bob_move));
    const Real thr = phase == Phase::kX ? w.k_threshold(index) : w.h_threshold(index);
    Real margin = blocking_margin(game_->system(), b, thr, cfg_.grid);
    events_.back().blocking = margin;
    if (!(margin > 0))
      diag_.push_back("blocking inequality fails on the ball entering phase " + phase_name(phase) +
                      " " + std::to_string(index));
    game_.reset();
  }

  PhaseEvent ev;
  ev.phase = phase;
  ev.index = index;
  ev.bob_move = bob_move;
  ev.radius = b.radius();
  const std::string tag = phase_name(phase) + " " + std::to_string(index);
  try {
    ev.certificate = certify_no_solution(b, w, phase, index, bob_move, cfg_.budget);
    if (ev.certificate.witness)
      diag_.push_back("certificate witness at " + tag + ": " + intvec_string(*ev.certificate.witness));
  } catch (const EnumerationTooLarge& e) {
    ev.certificate.phase = phase;
    ev.certificate.index = index;
    ev.certificate.ball_id = bob_move;
    ev.certificate.complete = false;
    diag_.push_back(std::string("EnumerationTooLarge at ") + tag + ": " + e.what());
  }

  if (play) {
    // Prepare the dual side: Y vectors for j = i after k_i, X vectors for
    // i = j + 1 after h_j.
    const Phase dual = phase == Phase::kX ? Phase::kY : Phase::kX;
    const int dual_index = phase == Phase::kX ? index : index + 1;
    const int order = phase == Phase::kX ? n_ : m_;
    try {
      std::vector<IntVec> s = enumerate_solutions(b, w, dual, dual_index, cfg_.budget);
      ev.s_size = static_cast<long>(s.size());
      if (s.empty()) {
        ev.diagnostic = "empty S";
      } else {
        std::vector<Vec> vs;
        for (const IntVec& v : s) vs.emplace_back(v.begin(), v.end());
        ev.span_dim = span_dimension(vs);
        if (ev.span_dim > order) {
          span_excess_ = std::max(span_excess_, ev.span_dim - order);
          ev.diagnostic = DimensionExceeded(ev.span_dim, order).what();
          diag_.push_back("DimensionExceeded at " + tag + ": span " + std::to_string(ev.span_dim) +
                          " > " + std::to_string(order));
        } else {
          MinorSystem sys(m_, n_, phase == Phase::kX ? MinorFamily::kColumns : MinorFamily::kRows,
                          gram_schmidt_extend(vs, order, w.l()));
          const Real end = phase == Phase::kX ? w.h_threshold(index) : w.k_threshold(index + 1);
          game_ = std::make_shared<FiniteMinorGame>(
              std::move(sys), phase == Phase::kX ? *sched_cols_ : *sched_rows_, b,
              end / b.radius(), cfg_.grid);
          ev.game = game_;
        }
      }
    } catch (const EnumerationTooLarge& e) {
      ev.diagnostic = e.what();
      diag_.push_back(std::string("EnumerationTooLarge preparing ") + tag + ": " + e.what());
    }
  }
  events_.push_back(std::move(ev));
}

AliceMove Bad0Strategy::move(const GameParams& params, const GameTranscript& so_far) {
  if (params.variant != Variant::kHyperplaneAbsolute)
    throw Error("InvalidParams", "Bad_0 strategy plays the hyperplane absolute game");
  if (params.dim != m_ * n_) throw Error("DimensionMismatch", "game dimension must be M N");
  const Ball& b = so_far.current_ball();
  const int bm = so_far.bob_moves() - 1;
  if (!w_) init(so_far.bob_balls().front());
  process_events(b, bm, true);
  if (game_ && !game_->done())
    if (auto s = game_->next(b, bm)) return std::vector<HyperplaneSlab>{*s};
  return std::vector<HyperplaneSlab>{dummy_slab(b, cfg_.beta)};
}

void Bad0Strategy::observe_final(const GameTranscript& t) {
  if (t.bob_moves() == 0) return;
  const Ball& b = t.final_ball ? *t.final_ball : t.current_ball();
  if (!w_) init(t.bob_balls().front());
  process_events(b, t.bob_moves() - 1, false);
  if (game_) game_->finish(b, t.bob_moves() - 1);
}

std::vector<NoSolutionCertificate> Bad0Strategy::certificates() const {
  std::vector<NoSolutionCertificate> out;
  for (const PhaseEvent& e : events_)
    if (e.certificate.complete) out.push_back(e.certificate);
  return out;
}

bool Bad0Run::witness_free() const {
  for (const PhaseEvent& e : strategy->events())
    if (!e.certificate.ok()) return false;
  return true;
}

Bad0Run play_bad0(int m, int n, const Bad0Config& cfg, BobStrategy& bob, int i_max) {
  Bad0Run run;
  run.i_max = i_max;
  run.strategy = std::make_shared<Bad0Strategy>(m, n, cfg);
  GameParams p;
  p.variant = Variant::kHyperplaneAbsolute;
  p.beta = cfg.beta;
  p.dim = m * n;
  p.stop_radius = WindowParams(m, n, cfg.r, Real(1), Real(1)).k_threshold(i_max);
  p.detect_no_legal_move = false;
  run.transcript = Referee(p).play(*run.strategy, bob);
  run.strategy->observe_final(run.transcript);
  return run;
}

Real choose_default_r(int m, int n, const Real& beta, std::uint64_t seed, int games, int i_max,
                      const Real& r_start, int max_doublings) {
  Real r = r_start;
  for (int d = 0; d <= max_doublings; ++d, r *= 2) {
    bool clean = true;
    for (int g = 0; g < games && clean; ++g) {
      std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (g + 1));
      std::uniform_real_distribution<double> u(0.0, 1.0);
      Vec c(m * n);
      for (Real& x : c) x = u(rng);
      RandomBob bob(Ball(c, Real(3) / 10), rng());
      Bad0Config cfg{beta, r, {}, {}};
      clean = play_bad0(m, n, cfg, bob, i_max).witness_free();
    }
    if (clean) return r;
  }
  throw Error("NoDefaultR", "no witness-free R found after " + std::to_string(max_doublings) +
                                " doublings");
}

// ---------------------------------------------------------------------------

json certificate_to_json(const NoSolutionCertificate& c) {
  json j = {{"phase", phase_name(c.phase)},
            {"index", c.index},
            {"ball_id", c.ball_id},
            {"norm_bound", real_to_json(c.norm_bound)},
            {"value_bound", real_to_json(c.value_bound)},
            {"margin", c.enumerated > 0 ? real_to_json(c.margin) : json(nullptr)},
            {"enumerated", c.enumerated},
            {"complete", c.complete},
            {"ok", c.ok()}};
  if (c.witness) j["witness"] = *c.witness;
  return j;
}

json schedule_to_json(const ConstantsSchedule& s) {
  json nu = json::array(), mu = json::array();
  for (const Real& x : s.nu) nu.push_back(real_to_json(x));
  for (const Real& x : s.mu) mu.push_back(real_to_json(x));
  return {{"order", s.order},          {"beta", real_to_json(s.beta)},
          {"sigma", real_to_json(s.sigma)}, {"eps1", real_to_json(s.eps1)},
          {"eps2", real_to_json(s.eps2)},   {"nu", nu},
          {"mu", mu}};
}

json level_to_json(const LevelReport& l) {
  json j = {{"v", l.v},
            {"case", case_name(l.choice)},
            {"decided_at", l.decided_at},
            {"checked_at", l.checked_at},
            {"samples", l.samples},
            {"postcondition_ok", l.postcondition_ok},
            {"claim_ok", l.claim_ok}};
  if (l.decided_at >= 0) j["grid_min_ratio"] = real_to_json(l.grid_min_ratio);
  if (l.checked_at >= 0) j["worst_margin"] = real_to_json(l.worst_margin);
  if (l.slab) {
    j["omega"] = {{"rows", l.omega.rows}, {"cols", l.omega.cols}};
    j["slab"] = slab_to_json(*l.slab);
  }
  return j;
}

}  // namespace sgame
