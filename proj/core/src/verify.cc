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

#include "sgame/verify.h"

#include <cmath>
#include <sstream>

#include "sgame/transcript_io.h"

namespace sgame {

using nlohmann::json;

DMat to_dmat(const LinearFormsPoint& a) {
  DMat d(a.m(), std::vector<double>(a.n()));
  for (int u = 0; u < a.m(); ++u)
    for (int v = 0; v < a.n(); ++v) d[u][v] = to_double(a(u, v));
  return d;
}

namespace {

struct Scan {
  double inf = INFINITY;
  std::vector<long> argmin;
  long enumerated = 0;
  std::vector<WindowMinimum> windows;
};

// Visits q in Z^N with 0 < |q|, lo <= |q| and |q| <= limit (< when strict),
// in lexicographic order.
Scan scan_q(const DMat& a, const std::vector<double>& x, double lo, double limit, bool strict,
            long budget) {
  const int m = static_cast<int>(a.size());
  if (m == 0) throw Error("InvalidParams", "matrix must have at least one row");
  const int n = static_cast<int>(a.front().size());
  if (n == 0) throw Error("InvalidParams", "matrix must have at least one column");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw Error("InvalidParams", "ragged matrix");
  if (static_cast<int>(x.size()) != m) throw Error("DimensionMismatch", "x must have M entries");
  const long box = static_cast<long>(std::floor(limit));
  Scan out;
  if (box < 1) return out;
  if (std::pow(2.0 * box + 1, n) > static_cast<double>(budget))
    throw Error("BudgetExceeded", "search box exceeds the enumeration budget");
  const double expo = static_cast<double>(n) / m;
  const double lim2 = limit * limit;
  const double lo2 = lo * lo;
  std::vector<long> q(n, -box);
  for (;;) {
    double sq = 0;
    for (long c : q) sq += static_cast<double>(c) * c;
    if (sq > 0 && sq >= lo2 && (strict ? sq < lim2 : sq <= lim2)) {
      ++out.enumerated;
      double d2 = 0;
      for (int u = 0; u < m; ++u) {
        double s = -x[u];
        for (int v = 0; v < n; ++v) s += a[u][v] * q[v];
        double f = s - std::round(s);
        d2 += f * f;
      }
      const double qn = std::sqrt(sq);
      const double val = std::pow(qn, expo) * std::sqrt(d2);
      if (val < out.inf) out.inf = val, out.argmin = q;
      const int w = static_cast<int>(std::floor(std::log2(qn) + 1e-12));
      if (static_cast<int>(out.windows.size()) <= w) {
        const std::size_t old = out.windows.size();
        out.windows.resize(w + 1);
        for (std::size_t i = old; i < out.windows.size(); ++i) {
          out.windows[i].lo = 1L << i;
          out.windows[i].hi = 1L << (i + 1);
          out.windows[i].value = INFINITY;
        }
      }
      if (val < out.windows[w].value) out.windows[w].value = val, out.windows[w].q = q;
    }
    int k = 0;
    while (k < n && q[k] == box) q[k] = -box, ++k;
    if (k == n) break;
    ++q[k];
  }
  return out;
}

}  // namespace

BadnessReport badness_inf(const DMat& a, const std::vector<double>& x, long q_max, long budget) {
  if (q_max < 1) throw Error("InvalidParams", "Q_max must be at least 1");
  Scan s = scan_q(a, x, 0, static_cast<double>(q_max), false, budget);
  BadnessReport r;
  r.a = a;
  r.x = x;
  r.q_max = q_max;
  r.inf = s.inf;
  r.argmin = s.argmin;
  r.enumerated = s.enumerated;
  r.windows = std::move(s.windows);
  return r;
}

json badness_to_json(const BadnessReport& r) {
  json w = json::array();
  for (const WindowMinimum& m : r.windows)
    if (!m.q.empty()) w.push_back({{"lo", m.lo}, {"hi", m.hi}, {"value", m.value}, {"q", m.q}});
  return {{"a", r.a},   {"x", r.x},           {"q_max", r.q_max},
          {"inf", r.inf}, {"argmin", r.argmin}, {"enumerated", r.enumerated},
          {"windows", w}};
}

std::string windows_csv(const BadnessReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "lo,hi,value,q\n";
  for (const WindowMinimum& m : r.windows) {
    if (m.q.empty()) continue;
    os << m.lo << "," << m.hi << "," << m.value << ",";
    for (std::size_t i = 0; i < m.q.size(); ++i) os << (i ? " " : "") << m.q[i];
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

void push_digit(ContinuedFraction& cf, const BigInt& a) {
  const std::size_t n = cf.digits.size();
  cf.digits.push_back(a);
  // p_{-1} = 1, p_{-2} = 0, q_{-1} = 0, q_{-2} = 1.
  const BigInt p1 = n >= 1 ? cf.p[n - 1] : BigInt(1);
  const BigInt p2 = n >= 2 ? cf.p[n - 2] : BigInt(n == 1 ? 1 : 0);
  const BigInt q1 = n >= 1 ? cf.q[n - 1] : BigInt(0);
  const BigInt q2 = n >= 2 ? cf.q[n - 2] : BigInt(n == 1 ? 0 : 1);
  cf.p.push_back(a * p1 + p2);
  cf.q.push_back(a * q1 + q2);
}

BigInt floor_big(const Real& x) {
  Real f = floor(x);
  // Exact conversion through the decimal string of an integral value.
  std::string s = f.str(0, std::ios_base::fixed);
  auto dot = s.find('.');
  if (dot != std::string::npos) s.resize(dot);
  return BigInt(s);
}

}  // namespace

ContinuedFraction continued_fraction(const Real& alpha, int depth) {
  if (depth < 1) throw Error("InvalidParams", "depth must be at least 1");
  ContinuedFraction cf;
  const Real eps = ldexp(Real(1), -precision_bits()) * std::max(Real(1), Real(abs(alpha)));
  Real x = alpha;
  for (int n = 0; n <= depth; ++n) {
    const BigInt a = floor_big(x);
    push_digit(cf, a);
    const Real f = x - Real(a.str());
    // The remainder after n+1 digits is known to about q_n^2 eps.
    const Real qn(cf.q.back().str());
    const Real err = qn * qn * eps;
    if (f <= err * 1024) {
      cf.terminated = true;
      break;
    }
    if (n < depth && err * (1 << 20) > 1)
      throw PrecisionExhausted("continued fraction needs more than " +
                               std::to_string(precision_bits()) + " bits beyond digit " +
                               std::to_string(n));
    x = 1 / f;
  }
  return cf;
}

ContinuedFraction continued_fraction(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error("InvalidParams", "zero denominator");
  ContinuedFraction cf;
  BigInt a = num, b = den;
  if (b < 0) a = -a, b = -b;
  while (b != 0) {
    BigInt q = a / b, r = a % b;
    if (r < 0) q -= 1, r += b;  // floor division
    push_digit(cf, q);
    a = b;
    b = r;
  }
  cf.terminated = true;
  return cf;
}

// ---------------------------------------------------------------------------

Real escape_distance(const Vec& x, const LacunarySystem& s, long k) {
  Vec y = s.matrix(k).apply(x);
  Real r = 1;
  for (int it = 0; it < 200; ++it, r *= 2) {
    std::vector<Vec> pts = s.targets_near(k, y, r);
    if (pts.empty()) continue;
    Real best = distance(y, pts.front());
    for (const Vec& p : pts) best = std::min(best, distance(y, p));
    return best;
  }
  throw Error("EmptyTargets", "no target found near M_k x for k = " + std::to_string(k));
}

EscapeInf escape_inf(const Vec& x, const LacunarySystem& s, int k_count) {
  if (k_count < 1) throw Error("InvalidParams", "K must be positive");
  EscapeInf e;
  e.value = std::numeric_limits<double>::infinity();
  for (long k = s.first_index; k < s.first_index + k_count; ++k) {
    if (s.last_index >= 0 && k > s.last_index) break;
    Real d = escape_distance(x, s, k);
    e.per_index.emplace_back(k, d);
    if (d < e.value) e.value = d, e.argmin = k;
  }
  return e;
}

// ---------------------------------------------------------------------------

CrosscheckReport crosscheck_observation51(const LinearFormsPoint& a, const WindowParams& w,
                                          int i_max,
                                          const std::vector<NoSolutionCertificate>& certs) {
  CrosscheckReport r;
  r.q_cov = w.x_bound(i_max);
  const Real c = w.observation_constant();
  r.bound = w.m == 1 ? c : Real(pow(c, Real(1) / w.m));
  for (int i = 0; i <= i_max; ++i) {
    bool found = false;
    for (const NoSolutionCertificate& ct : certs)
      if (ct.phase == Phase::kX && ct.index == i && ct.ok()) found = true;
    if (!found) r.missing.push_back(i);
  }
  const DMat d = to_dmat(a);
  const std::vector<double> zero(w.m, 0.0);
  Scan s = scan_q(d, zero, 0, to_double(r.q_cov), true, 2'000'000'000L);
  r.enumerated = s.enumerated;
  r.inf = s.inf;
  r.argmin = s.argmin;
  // Rounding the entries to double moves A q by at most |q| |A| 2^-52.
  double anorm = 0;
  for (const auto& row : d)
    for (double v : row) anorm += v * v;
  const double qc = to_double(r.q_cov);
  r.slack = std::pow(qc, 1.0 + static_cast<double>(w.n) / w.m) * (std::sqrt(anorm) + 1) * 0x1p-52;

  const double bound = to_double(r.bound);
  std::ostringstream msg;
  if (!r.missing.empty()) {
    const int i = r.missing.front();
    msg << "no clean X certificate for i = " << i;
    // Smallest badness in the shell that index was responsible for.
    const double lo = i > 0 ? to_double(w.x_bound(i - 1)) : 0.0;
    Scan sh = scan_q(d, zero, lo, to_double(w.x_bound(i)), true, 2'000'000'000L);
    if (!sh.argmin.empty()) {
      r.violating_q = sh.argmin;
      msg << "; shell minimum " << sh.inf << " at the reported q";
    }
  } else if (r.inf < bound - r.slack) {
    r.violating_q = r.argmin;
    msg << "badness " << r.inf << " below bound " << bound;
  } else {
    msg << "ok";
  }
  r.message = msg.str();
  r.pass = r.missing.empty() && !(r.inf < bound - r.slack);
  return r;
}

json crosscheck_to_json(const CrosscheckReport& r) {
  json j = {{"pass", r.pass},
            {"bound", real_to_json(r.bound)},
            {"slack", r.slack},
            {"q_cov", real_to_json(r.q_cov)},
            {"inf", std::isinf(r.inf) ? json(nullptr) : json(r.inf)},
            {"argmin", r.argmin},
            {"enumerated", r.enumerated},
            {"missing", r.missing},
            {"message", r.message}};
  if (r.violating_q) j["violating_q"] = *r.violating_q;
  return j;
}

}  // namespace sgame
