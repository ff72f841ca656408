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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sgame/fractals.h"
#include "support.h"

namespace sgame {
namespace {

using nlohmann::json;
using testing::oracle;

TEST(Ifs, Example34FixedPoints) {
  Ifs f = builtin_ifs("example34");
  const json& want = oracle()["example34"]["fixed_points"];
  ASSERT_EQ(f.maps.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    Point p = fixed_point(f.maps[i]);
    EXPECT_NEAR(p[0], want[i][0].get<double>(), 1e-14);
    EXPECT_NEAR(p[1], want[i][1].get<double>(), 1e-14);
  }
}

TEST(Ifs, AddressAppliesOutermostFirst) {
  Ifs f = builtin_ifs("example34");
  Point p = apply_word(f, {1}, {0, 0});
  EXPECT_NEAR(p[0], oracle()["example34"]["address_1"][0].get<double>(), 1e-15);
  EXPECT_NEAR(p[1], oracle()["example34"]["address_1"][1].get<double>(), 1e-15);
  Point q = apply_word(f, {1, 2}, {0, 0});  // u1(u2(0))
  Point inner = f.maps[2].apply({0, 0});
  Point outer = f.maps[1].apply(inner);
  EXPECT_NEAR(q[0], outer[0], 1e-15);
  EXPECT_NEAR(q[1], outer[1], 1e-15);
}

TEST(Ifs, SimilarityDimensions) {
  EXPECT_NEAR(builtin_ifs("example34").similarity_dimension(), oracle()["example34"]["dimension"].get<double>(), 1e-10);
  EXPECT_NEAR(builtin_ifs("cantor13").similarity_dimension(), oracle()["cantor_dimension"].get<double>(), 1e-10);
  EXPECT_NEAR(builtin_ifs("sierpinski").similarity_dimension(), oracle()["sierpinski_dimension"].get<double>(), 1e-10);
}

TEST(Ifs, JsonRoundTripAndRejects) {
  Ifs f = builtin_ifs("example34");
  Ifs g = ifs_from_json(ifs_to_json(f));
  ASSERT_EQ(g.maps.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(g.maps[i].translation, f.maps[i].translation);
  EXPECT_THROW(builtin_ifs("koch"), Error);
  EXPECT_THROW(ifs_from_json(json::parse(R"({"maps": [{"ratio": 1.5, "translation": [0]}]})")), Error);
  EXPECT_THROW(ifs_from_json(json::parse(R"({"maps": [{"ratio": 0.5, "translation": [0], "skew": 1}]})")), Error);
}

TEST(Ifs, OpenSetCondition) {
  EXPECT_TRUE(check_open_set_condition(builtin_ifs("example34")).ok);
  EXPECT_TRUE(check_open_set_condition(builtin_ifs("cantor13")).ok);
  Ifs overlap = ifs_from_json(json::parse(
      R"({"maps": [{"ratio": 0.6, "translation": [0]}, {"ratio": 0.6, "translation": [0.3]}]})"));
  EXPECT_FALSE(check_open_set_condition(overlap).ok);
}

TEST(Ifs, AffineHull) {
  EXPECT_EQ(affine_hull_dim({{0, 0}, {0.5, 1}, {1, 0}}), 2);
  EXPECT_EQ(affine_hull_dim({{0, 0}, {1, 1}, {2, 2}}), 1);
  Ifs f = builtin_ifs("example34");
  EXPECT_EQ(affine_hull_dim(limit_set_sample(f, 4, {0, 0})), 2);
}

TEST(Ifs, SampleSizeAndHausdorffConvergence) {
  Ifs f = builtin_ifs("example34");
  auto k4 = limit_set_sample(f, 4, {0, 0});
  auto k6 = limit_set_sample(f, 6, {0, 0});
  EXPECT_EQ(k4.size(), 81u);
  EXPECT_EQ(k6.size(), 729u);
  // Depth-4 points are depth-6 points; the other direction is within diam * 5^-4.
  EXPECT_EQ(one_sided_hausdorff(k4, k6), 0.0);
  EXPECT_LE(one_sided_hausdorff(k6, k4), std::sqrt(2.0) * std::pow(0.2, 4) + 1e-12);
}

TEST(BoxCounting, MoranDimensions) {
  auto k = limit_set_sample(builtin_ifs("example34"), 8, {0, 0});
  auto est = box_count_dimension(k, geometric_scales(0.2, std::pow(0.2, 6), 3));
  EXPECT_NEAR(est.exponent, oracle()["example34"]["dimension"].get<double>(), 0.05);
  auto c = limit_set_sample(builtin_ifs("cantor13"), 12, {0});
  auto ec = box_count_dimension(c, geometric_scales(1.0 / 3, std::pow(3.0, -9), 3));
  EXPECT_NEAR(ec.exponent, oracle()["cantor_dimension"].get<double>(), 0.05);
  EXPECT_GT(ec.c1, 0);
  EXPECT_GE(ec.c2, ec.c1);
  EXPECT_THROW(box_count_dimension(c, {0.1, 0.05}), Error);
}

TEST(Diffuseness, SquareAndExample34) {
  std::vector<Point> square;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) square.push_back({i / 200.0, j / 200.0});
  auto r = diffuseness_test(square, 0.2, 0.1, 0.5, 1 / 200.0, 50, 1);
  EXPECT_TRUE(r.passed);
  EXPECT_FALSE(r.inconclusive);

  auto k = limit_set_sample(builtin_ifs("example34"), 7, {0, 0});
  auto rk = diffuseness_test(k, 0.05, 0.04, 1.0, std::pow(0.2, 7) * std::sqrt(2.0), 200, 2);
  EXPECT_TRUE(rk.passed) << rk.witnesses.size();
  // A segment is not diffuse: the plane through it leaves nothing outside.
  std::vector<Point> seg;
  for (int i = 0; i <= 1000; ++i) seg.push_back({i / 1000.0, 0.5});
  auto rs = diffuseness_test_against(seg, 0.1, 0.05, 0.5, 1e-3, 20, 3,
                                     [](const Point&) { return std::make_pair(Point{0, 1}, 0.5); });
  EXPECT_FALSE(rs.passed);
  EXPECT_FALSE(rs.witnesses.empty());
}

TEST(Example34, GraphChordsAndBiLipschitz) {
  Example34 e = example34_build(8);
  EXPECT_LE(max_chord_slope(e.k), 5.0);
  for (const Point& p : e.k) EXPECT_LE(std::fabs(p[1] - e.f(p[0])), std::pow(0.2, 8));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 2);
  for (int i = 0; i < 2000; ++i) {
    Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const double d = std::hypot(a[0] - b[0], a[1] - b[1]);
    Point fa = e.phi(a), fb = e.phi(b);
    const double ratio = std::hypot(fa[0] - fb[0], fa[1] - fb[1]) / d;
    EXPECT_GE(ratio, 1.0 / 6);
    EXPECT_LE(ratio, 6.0);
    Point back = e.phi_inv(fa);
    EXPECT_NEAR(back[1], a[1], 1e-12);
  }
}

}  // namespace
}  // namespace sgame
