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

#ifndef SGAME_FRACTALS_H_
#define SGAME_FRACTALS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace sgame {

// Fractal sampling runs in double precision; the limit sets are resolved to
// ratio^depth, far above double rounding.
using Point = std::vector<double>;

// x -> ratio * rotation * x + translation.
struct Similarity {
  double ratio = 0.5;
  std::vector<std::vector<double>> rotation;  // d x d orthogonal
  Point translation;

  // 1-D maps use rotation_degrees 0 (identity) or 180 (reflection).
  static Similarity make(double ratio, double rotation_degrees, Point translation);
  int dim() const { return static_cast<int>(translation.size()); }
  Point apply(const Point& x) const;
};

Point fixed_point(const Similarity& u);

struct Box {
  Point lo;
  Point hi;
  bool contains(const Point& p, double slack = 0) const;
  bool interior(const Point& p) const;
};

struct Ifs {
  std::vector<Similarity> maps;
  Box open_set;  // declared for the open set condition
  std::string name;

  int dim() const { return maps.empty() ? 0 : maps.front().dim(); }
  double max_ratio() const;
  // s with sum ratio_i^s = 1.
  double similarity_dimension() const;
};

Ifs builtin_ifs(const std::string& name);  // example34, cantor13, sierpinski
Ifs ifs_from_json(const nlohmann::json& j);
nlohmann::json ifs_to_json(const Ifs& ifs);

struct OpenSetReport {
  bool ok = true;
  long samples = 0;
  std::string witness;
};
// Grid check that the images of the open box are pairwise disjoint subsets of it.
OpenSetReport check_open_set_condition(const Ifs& ifs, int per_axis = 64);

// u_{w_1} o ... o u_{w_D}(anchor).
Point apply_word(const Ifs& ifs, const std::vector<int>& word, const Point& anchor);
// Every word of the given depth, in lexicographic order.
std::vector<Point> limit_set_sample(const Ifs& ifs, int depth, const Point& anchor);
// `count` random words of the given depth.
std::vector<Point> limit_set_sample(const Ifs& ifs, int depth, const Point& anchor, long count,
                                    std::uint64_t seed);

// Rank of the centered point matrix at relative tolerance tol.
int affine_hull_dim(const std::vector<Point>& points, double tol = 1e-9);

// Hausdorff distance from `a` to the nearest point of `b` (one-sided).
double one_sided_hausdorff(const std::vector<Point>& a, const std::vector<Point>& b);

struct DiffusenessWitness {
  Point x;
  double rho = 0;
  Point normal;
  double offset = 0;
};

struct DiffusenessReport {
  double beta = 0;
  double rho_min = 0;
  double rho_k = 0;
  double resolution = 0;
  long trials = 0;
  long planes_tested = 0;
  bool passed = false;
  bool inconclusive = false;
  std::vector<DiffusenessWitness> witnesses;
};

// For sampled x in K, rho in [rho_min, rho_k] and hyperplanes through x
// (random, and along the principal direction of the nearby sample), looks for
// a sample point of B(x, rho) outside the beta*rho neighbourhood of the plane.
// `resolution` is the sampler's spacing; the report is inconclusive when it is
// not below beta*rho_min/4.
DiffusenessReport diffuseness_test(const std::vector<Point>& k, double beta, double rho_min,
                                   double rho_k, double resolution, long trials,
                                   std::uint64_t seed);
// Same, with a caller-chosen plane for every trial.
DiffusenessReport diffuseness_test_against(
    const std::vector<Point>& k, double beta, double rho_min, double rho_k, double resolution,
    long trials, std::uint64_t seed,
    const std::function<std::pair<Point, double>(const Point& x)>& plane);

struct AhlforsEstimate {
  double exponent = 0;
  double c1 = 0;
  double c2 = 0;
  std::vector<double> scales;
  std::vector<double> counts;  // mean over shifted grids
  double residual = 0;  // RMS of the log-log fit
  bool warning = false;
};

inline constexpr int kBoxGridShifts = 16;

// Least-squares slope of log(box count) against -log(scale), each count the
// mean over kBoxGridShifts shifted grids. Needs scales
// spanning at least two decades; c1, c2 bound the empirical measure of
// B(x, rho) by rho^exponent over the same scales.
AhlforsEstimate box_count_dimension(const std::vector<Point>& points,
                                    const std::vector<double>& scales);

// Geometric scales from hi down to lo, `per_decade` per factor of 10.
std::vector<double> geometric_scales(double hi, double lo, int per_decade);

struct Example34 {
  Ifs ifs;
  int depth = 0;
  std::vector<Point> k;      // every word of length depth applied to (0, 0)
  std::vector<double> knot_x;  // sorted projections
  std::vector<double> knot_y;

  double f(double x) const;  // interpolation, constant outside the knots
  Point phi(const Point& p) const { return {p[0], p[1] + f(p[0])}; }
  Point phi_inv(const Point& p) const { return {p[0], p[1] - f(p[0])}; }
};

Example34 example34_build(int depth);

// Largest |dy/dx| over all pairs of sample points.
double max_chord_slope(const std::vector<Point>& pts);

}  // namespace sgame

#endif  // SGAME_FRACTALS_H_
