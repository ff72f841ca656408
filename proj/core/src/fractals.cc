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

#include "sgame/fractals.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "sgame/real.h"

namespace sgame {

using nlohmann::json;

namespace {

double dist2(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

}  // namespace

Similarity Similarity::make(double ratio, double deg, Point translation) {
  if (!(ratio > 0 && ratio < 1)) throw Error("InvalidIfs", "similarity ratio must lie in (0, 1)");
  Similarity s;
  s.ratio = ratio;
  const int d = static_cast<int>(translation.size());
  s.translation = std::move(translation);
  const double t = deg * std::numbers::pi / 180;
  if (d == 1) {
    double c = std::cos(t);
    if (std::abs(std::abs(c) - 1) > 1e-12)
      throw Error("InvalidIfs", "1-D rotation must be 0 or 180 degrees");
    s.rotation = {{c > 0 ? 1.0 : -1.0}};
  } else if (d == 2) {
    s.rotation = {{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}};
  } else {
    if (deg != 0) throw Error("InvalidIfs", "rotations are supported in 1 and 2 dimensions only");
    s.rotation.assign(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i) s.rotation[i][i] = 1;
  }
  return s;
}

Point Similarity::apply(const Point& x) const {
  const int d = dim();
  Point y(translation);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) y[i] += ratio * rotation[i][j] * x[j];
  return y;
}

Point fixed_point(const Similarity& u) {
  // (I - r Rot) p = t by Gaussian elimination with partial pivoting.
  const int d = u.dim();
  std::vector<std::vector<double>> a(d, std::vector<double>(d + 1));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a[i][j] = (i == j) - u.ratio * u.rotation[i][j];
    a[i][d] = u.translation[i];
  }
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (int r = 0; r < d; ++r) {
      if (r == c) continue;
      double f = a[r][c] / a[c][c];
      for (int j = c; j <= d; ++j) a[r][j] -= f * a[c][j];
    }
  }
  Point p(d);
  for (int i = 0; i < d; ++i) p[i] = a[i][d] / a[i][i];
  return p;
}

bool Box::contains(const Point& p, double slack) const {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < lo[i] - slack || p[i] > hi[i] + slack) return false;
  return true;
}

bool Box::interior(const Point& p) const {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!(p[i] > lo[i] && p[i] < hi[i])) return false;
  return true;
}

double Ifs::max_ratio() const {
  double r = 0;
  for (const Similarity& s : maps) r = std::max(r, s.ratio);
  return r;
}

double Ifs::similarity_dimension() const {
  if (maps.empty()) throw Error("InvalidIfs", "empty IFS");
  auto moran = [&](double s) {
    double t = 0;
    for (const Similarity& u : maps) t += std::pow(u.ratio, s);
    return t - 1;
  };
  // moran is decreasing in s; find an upper bracket.
  double lo = 0, hi = 1;
  while (moran(hi) > 0) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    double mid = (lo + hi) / 2;
    (moran(mid) > 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

Ifs builtin_ifs(const std::string& name) {
  Ifs f;
  f.name = name;
  if (name == "example34") {
    f.maps = {Similarity::make(0.2, 0, {0, 0}), Similarity::make(0.2, 0, {0.4, 0.8}),
              Similarity::make(0.2, 0, {0.8, 0})};
    f.open_set = {{0, 0}, {1, 1}};
  } else if (name == "cantor13") {
    f.maps = {Similarity::make(1.0 / 3, 0, {0}), Similarity::make(1.0 / 3, 0, {2.0 / 3})};
    f.open_set = {{0}, {1}};
  } else if (name == "sierpinski") {
    const double h = std::sqrt(3.0) / 2;
    f.maps = {Similarity::make(0.5, 0, {0, 0}), Similarity::make(0.5, 0, {0.5, 0}),
              Similarity::make(0.5, 0, {0.25, h / 2})};
    f.open_set = {{0, 0}, {1, h}};
  } else {
    throw Error("UnknownIfs", "no built-in IFS named '" + name + "'");
  }
  return f;
}

Ifs ifs_from_json(const json& j) {
  if (j.is_string()) return builtin_ifs(j.get<std::string>());
  if (!j.is_object()) throw Error("SchemaError", "IFS must be a name or an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "maps" && it.key() != "open_set" && it.key() != "name")
      throw Error("SchemaError", "unknown IFS field '" + it.key() + "'");
  Ifs f;
  f.name = j.value("name", "custom");
  for (const json& m : j.at("maps")) {
    for (auto it = m.begin(); it != m.end(); ++it)
      if (it.key() != "ratio" && it.key() != "rotation_degrees" && it.key() != "translation")
        throw Error("SchemaError", "unknown similarity field '" + it.key() + "'");
    f.maps.push_back(Similarity::make(m.at("ratio").get<double>(),
                                      m.value("rotation_degrees", 0.0),
                                      m.at("translation").get<Point>()));
  }
  if (f.maps.empty()) throw Error("SchemaError", "IFS needs at least one map");
  const int d = f.dim();
  for (const Similarity& s : f.maps)
    if (s.dim() != d) throw Error("SchemaError", "IFS maps disagree on dimension");
  if (j.contains("open_set")) {
    f.open_set = {j.at("open_set").at("lo").get<Point>(), j.at("open_set").at("hi").get<Point>()};
  } else {
    f.open_set = {Point(d, 0.0), Point(d, 1.0)};
  }
  if (static_cast<int>(f.open_set.lo.size()) != d || static_cast<int>(f.open_set.hi.size()) != d)
    throw Error("SchemaError", "open_set dimension differs from the maps");
  return f;
}

json ifs_to_json(const Ifs& ifs) {
  json maps = json::array();
  for (const Similarity& s : ifs.maps) {
    double deg = 0;
    if (s.dim() == 2) deg = std::atan2(s.rotation[1][0], s.rotation[0][0]) * 180 / std::numbers::pi;
    if (s.dim() == 1 && s.rotation[0][0] < 0) deg = 180;
    maps.push_back({{"ratio", s.ratio}, {"rotation_degrees", deg}, {"translation", s.translation}});
  }
  return {{"name", ifs.name},
          {"maps", maps},
          {"open_set", {{"lo", ifs.open_set.lo}, {"hi", ifs.open_set.hi}}}};
}

OpenSetReport check_open_set_condition(const Ifs& ifs, int per_axis) {
  const int d = ifs.dim();
  OpenSetReport rep;
  std::vector<int> idx(d, 0);
  // Cell centres of a per_axis^d grid of O.
  for (;;) {
    Point p(d);
    for (int i = 0; i < d; ++i)
      p[i] = ifs.open_set.lo[i] + (idx[i] + 0.5) / per_axis * (ifs.open_set.hi[i] - ifs.open_set.lo[i]);
    ++rep.samples;
    std::vector<Point> imgs;
    for (std::size_t m = 0; m < ifs.maps.size(); ++m) {
      Point q = ifs.maps[m].apply(p);
      if (!ifs.open_set.contains(q, 1e-12)) {
        rep.ok = false;
        rep.witness = "map " + std::to_string(m) + " sends a point of O outside O";
        return rep;
      }
      imgs.push_back(std::move(q));
    }
    int i = 0;
    while (i < d && idx[i] == per_axis - 1) idx[i] = 0, ++i;
    if (i == d) break;
    ++idx[i];
  }
  // Disjointness: a grid point of O may lie in the image u_m(O) of at most one map.
  std::fill(idx.begin(), idx.end(), 0);
  for (;;) {
    Point p(d);
    for (int i = 0; i < d; ++i)
      p[i] = ifs.open_set.lo[i] + (idx[i] + 0.5) / per_axis * (ifs.open_set.hi[i] - ifs.open_set.lo[i]);
    int hits = 0;
    for (const Similarity& u : ifs.maps) {
      // Preimage under u: Rot^T (p - t) / ratio.
      Point q(d, 0.0);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) q[a] += u.rotation[b][a] * (p[b] - u.translation[b]) / u.ratio;
      if (ifs.open_set.interior(q)) ++hits;
    }
    if (hits > 1) {
      rep.ok = false;
      rep.witness = "overlapping images near a grid point of O";
      return rep;
    }
    int i = 0;
    while (i < d && idx[i] == per_axis - 1) idx[i] = 0, ++i;
    if (i == d) break;
    ++idx[i];
  }
  return rep;
}

Point apply_word(const Ifs& ifs, const std::vector<int>& word, const Point& anchor) {
  Point p = anchor;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it >= static_cast<int>(ifs.maps.size()))
      throw Error("InvalidIfs", "address letter out of range");
    p = ifs.maps[*it].apply(p);
  }
  return p;
}

std::vector<Point> limit_set_sample(const Ifs& ifs, int depth, const Point& anchor) {
  if (depth < 1) throw Error("InvalidParams", "depth must be at least 1");
  std::vector<Point> level{anchor};
  // Applying maps outermost-last yields words in lexicographic order.
  for (int d = 0; d < depth; ++d) {
    std::vector<Point> next;
    next.reserve(level.size() * ifs.maps.size());
    for (const Similarity& u : ifs.maps)
      for (const Point& p : level) next.push_back(u.apply(p));
    level = std::move(next);
  }
  return level;
}

std::vector<Point> limit_set_sample(const Ifs& ifs, int depth, const Point& anchor, long count,
                                    std::uint64_t seed) {
  if (depth < 1) throw Error("InvalidParams", "depth must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  std::vector<int> word(depth);
  for (long c = 0; c < count; ++c) {
    for (int& w : word) w = static_cast<int>(rng() % ifs.maps.size());
    out.push_back(apply_word(ifs, word, anchor));
  }
  return out;
}

int affine_hull_dim(const std::vector<Point>& points, double tol) {
  if (points.empty()) throw Error("InvalidParams", "need at least one point");
  const std::size_t d = points.front().size();
  double scale = 0;
  std::vector<Point> basis;
  for (const Point& p : points) {
    Point v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = p[i] - points.front()[i];
    scale = std::max(scale, std::sqrt(dist2(p, points.front())));
    for (int pass = 0; pass < 2; ++pass)
      for (const Point& b : basis) {
        double c = 0;
        for (std::size_t i = 0; i < d; ++i) c += v[i] * b[i];
        for (std::size_t i = 0; i < d; ++i) v[i] -= c * b[i];
      }
    double n = std::sqrt(dist2(v, Point(d, 0.0)));
    if (n > tol * std::max(scale, 1e-300)) {
      for (double& x : v) x /= n;
      basis.push_back(std::move(v));
      if (basis.size() == d) break;
    }
  }
  return static_cast<int>(basis.size());
}

double one_sided_hausdorff(const std::vector<Point>& a, const std::vector<Point>& b) {
  double worst = 0;
  for (const Point& p : a) {
    double best = INFINITY;
    for (const Point& q : b) best = std::min(best, dist2(p, q));
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

// ---------------------------------------------------------------------------

namespace {

// Dominant direction of the points around x (power iteration on the scatter).
Point principal_direction(const std::vector<const Point*>& near, const Point& x) {
  const std::size_t d = x.size();
  std::vector<std::vector<double>> s(d, std::vector<double>(d, 0.0));
  for (const Point* p : near)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) s[i][j] += ((*p)[i] - x[i]) * ((*p)[j] - x[j]);
  Point v(d, 1.0);
  for (int it = 0; it < 100; ++it) {
    Point w(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) w[i] += s[i][j] * v[j];
    double n = std::sqrt(dist2(w, Point(d, 0.0)));
    if (n == 0) break;
    for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / n;
  }
  return v;
}

Point random_unit(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g;
  Point v(d);
  double n = 0;
  do {
    for (double& x : v) x = g(rng);
    n = std::sqrt(dist2(v, Point(d, 0.0)));
  } while (n == 0);
  for (double& x : v) x /= n;
  return v;
}

// A unit normal orthogonal to `dir` (in 2-D the perpendicular; otherwise a
// random vector projected off dir).
Point normal_containing(const Point& dir, std::mt19937_64& rng) {
  const std::size_t d = dir.size();
  if (d == 1) return {1.0};
  if (d == 2) return {-dir[1], dir[0]};
  Point v = random_unit(rng, d);
  double c = 0;
  for (std::size_t i = 0; i < d; ++i) c += v[i] * dir[i];
  for (std::size_t i = 0; i < d; ++i) v[i] -= c * dir[i];
  double n = std::sqrt(dist2(v, Point(d, 0.0)));
  for (double& x : v) x /= n;
  return v;
}

struct TrialContext {
  const std::vector<Point>& k;
  double beta;
  DiffusenessReport& rep;
};

// True when some sample point of B(x, rho) lies off the beta*rho slab.
bool escapes(const TrialContext& c, const std::vector<const Point*>& near, const Point& x,
             double rho, const Point& normal, double offset) {
  ++c.rep.planes_tested;
  for (const Point* p : near) {
    double s = -offset;
    for (std::size_t i = 0; i < x.size(); ++i) s += normal[i] * (*p)[i];
    if (std::abs(s) > c.beta * rho) return true;
  }
  if (c.rep.witnesses.size() < 16) c.rep.witnesses.push_back({x, rho, normal, offset});
  return false;
}

DiffusenessReport run_diffuseness(
    const std::vector<Point>& k, double beta, double rho_min, double rho_k, double resolution,
    long trials, std::uint64_t seed,
    const std::function<std::pair<Point, double>(const Point&)>* plane) {
  if (k.empty()) throw Error("InvalidParams", "empty sample");
  if (!(rho_min > 0 && rho_min <= rho_k)) throw Error("InvalidParams", "need 0 < rho_min <= rho_k");
  DiffusenessReport rep;
  rep.beta = beta;
  rep.rho_min = rho_min;
  rep.rho_k = rho_k;
  rep.resolution = resolution;
  rep.trials = trials;
  if (!(resolution < beta * rho_min / 4)) {
    rep.inconclusive = true;
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, k.size() - 1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  TrialContext ctx{k, beta, rep};
  bool all = true;
  for (long t = 0; t < trials; ++t) {
    const Point& x = k[pick(rng)];
    const double rho = rho_min * std::pow(rho_k / rho_min, u01(rng));
    std::vector<const Point*> near;
    for (const Point& p : k)
      if (dist2(p, x) <= rho * rho) near.push_back(&p);
    auto through_x = [&](const Point& n) {
      double off = 0;
      for (std::size_t i = 0; i < x.size(); ++i) off += n[i] * x[i];
      return off;
    };
    if (plane) {
      auto [n, off] = (*plane)(x);
      all &= escapes(ctx, near, x, rho, n, off);
      continue;
    }
    Point n1 = random_unit(rng, x.size());
    all &= escapes(ctx, near, x, rho, n1, through_x(n1));
    Point n2 = normal_containing(principal_direction(near, x), rng);
    all &= escapes(ctx, near, x, rho, n2, through_x(n2));
    // A plane through x shifted by a random fraction of the slab thickness.
    Point n3 = random_unit(rng, x.size());
    all &= escapes(ctx, near, x, rho, n3, through_x(n3) + (u01(rng) - 0.5) * beta * rho);
  }
  rep.passed = all;
  return rep;
}

}  // namespace

DiffusenessReport diffuseness_test(const std::vector<Point>& k, double beta, double rho_min,
                                   double rho_k, double resolution, long trials,
                                   std::uint64_t seed) {
  return run_diffuseness(k, beta, rho_min, rho_k, resolution, trials, seed, nullptr);
}

DiffusenessReport diffuseness_test_against(
    const std::vector<Point>& k, double beta, double rho_min, double rho_k, double resolution,
    long trials, std::uint64_t seed,
    const std::function<std::pair<Point, double>(const Point& x)>& plane) {
  return run_diffuseness(k, beta, rho_min, rho_k, resolution, trials, seed, &plane);
}

// ---------------------------------------------------------------------------

std::vector<double> geometric_scales(double hi, double lo, int per_decade) {
  std::vector<double> s;
  const double step = std::pow(10.0, -1.0 / per_decade);
  for (double x = hi; x >= lo * (1 - 1e-12); x *= step) s.push_back(x);
  return s;
}

AhlforsEstimate box_count_dimension(const std::vector<Point>& points,
                                    const std::vector<double>& scales) {
  if (points.empty()) throw Error("InvalidParams", "empty sample");
  if (scales.size() < 2) throw Error("InvalidParams", "need at least two scales");
  const double hi = *std::max_element(scales.begin(), scales.end());
  const double lo = *std::min_element(scales.begin(), scales.end());
  if (hi / lo < 100 * (1 - 1e-9)) throw Error("InvalidParams", "scales must span two decades");
  AhlforsEstimate est;
  est.scales = scales;
  std::vector<double> xs, ys;
  // Mean over grids shifted along a Kronecker sequence.
  const std::size_t dim = points.front().size();
  double phi = 2;  // root of x^(dim+1) = x + 1
  for (int it = 0; it < 100; ++it) phi = std::pow(1 + phi, 1.0 / (dim + 1));
  std::vector<double> alpha(dim);
  for (std::size_t i = 0; i < dim; ++i) alpha[i] = std::pow(phi, -static_cast<double>(i + 1));
  for (double s : scales) {
    double total = 0;
    for (int shift = 0; shift < kBoxGridShifts; ++shift) {
      std::set<std::vector<long>> boxes;
      for (const Point& p : points) {
        std::vector<long> key(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          const double off = std::fmod(shift * alpha[i], 1.0);
          key[i] = static_cast<long>(std::floor(p[i] / s + off));
        }
        boxes.insert(std::move(key));
      }
      total += static_cast<double>(boxes.size());
    }
    const double count = total / kBoxGridShifts;
    est.counts.push_back(count);
    xs.push_back(-std::log(s));
    ys.push_back(std::log(count));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= n, my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
  est.exponent = sxy / sxx;
  const double icpt = my - est.exponent * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (icpt + est.exponent * xs[i]);
    ss += r * r;
  }
  est.residual = std::sqrt(ss / n);
  est.warning = est.residual > 0.1;

  // Empirical measure of balls around a spread of sample points.
  est.c1 = INFINITY;
  est.c2 = 0;
  const std::size_t stride = std::max<std::size_t>(1, points.size() / 64);
  for (std::size_t c = 0; c < points.size(); c += stride)
    for (double s : scales) {
      long inside = 0;
      for (const Point& p : points)
        if (dist2(p, points[c]) <= s * s) ++inside;
      double ratio = static_cast<double>(inside) / points.size() / std::pow(s, est.exponent);
      est.c1 = std::min(est.c1, ratio);
      est.c2 = std::max(est.c2, ratio);
    }
  return est;
}

// ---------------------------------------------------------------------------

double Example34::f(double x) const {
  if (x <= knot_x.front()) return knot_y.front();
  if (x >= knot_x.back()) return knot_y.back();
  auto it = std::upper_bound(knot_x.begin(), knot_x.end(), x);
  std::size_t i = static_cast<std::size_t>(it - knot_x.begin());
  double t = (x - knot_x[i - 1]) / (knot_x[i] - knot_x[i - 1]);
  return knot_y[i - 1] + t * (knot_y[i] - knot_y[i - 1]);
}

Example34 example34_build(int depth) {
  Example34 e;
  e.ifs = builtin_ifs("example34");
  e.depth = depth;
  e.k = limit_set_sample(e.ifs, depth, {0, 0});
  std::vector<Point> sorted = e.k;
  std::sort(sorted.begin(), sorted.end());
  for (const Point& p : sorted) {
    e.knot_x.push_back(p[0]);
    e.knot_y.push_back(p[1]);
  }
  return e;
}

double max_chord_slope(const std::vector<Point>& pts) {
  double worst = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double dx = std::abs(pts[i][0] - pts[j][0]);
      double dy = std::abs(pts[i][1] - pts[j][1]);
      if (dx == 0) {
        if (dy > 0) return INFINITY;
        continue;
      }
      worst = std::max(worst, dy / dx);
    }
  return worst;
}

}  // namespace sgame
