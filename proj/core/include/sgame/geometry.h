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

#ifndef SGAME_GEOMETRY_H_
#define SGAME_GEOMETRY_H_

#include <cstddef>
#include <span>
#include <vector>

#include "sgame/linalg.h"
#include "sgame/real.h"

namespace sgame {

// Closed Euclidean ball. Radius is strictly positive.
class Ball {
 public:
  Ball(Vec center, Real radius);

  const Vec& center() const { return center_; }
  const Real& radius() const { return radius_; }
  std::size_t dim() const { return center_.size(); }

 private:
  Vec center_;
  Real radius_;
};

// {x : |normal . x - offset| <= epsilon} with a unit normal.
class HyperplaneSlab {
 public:
  HyperplaneSlab(Vec normal, Real offset, Real epsilon);

  // Normalizes `normal` and rescales `offset` accordingly, so the plane is
  // {x : raw_normal . x = raw_offset}.
  static HyperplaneSlab from_raw(std::span<const Real> raw_normal, const Real& raw_offset,
                                 const Real& epsilon);

  const Vec& normal() const { return normal_; }
  const Real& offset() const { return offset_; }
  const Real& epsilon() const { return epsilon_; }
  std::size_t dim() const { return normal_.size(); }

  HyperplaneSlab with_epsilon(const Real& eps) const { return {normal_, offset_, eps}; }

 private:
  Vec normal_;
  Real offset_;
  Real epsilon_;
};

Real dist_point_hyperplane(std::span<const Real> p, const HyperplaneSlab& h);

// Conservative: touching counts as intersecting, and a further tau of margin
// is demanded before avoidance is granted.
bool ball_avoids_slab(const Ball& b, const HyperplaneSlab& h);

// inner is contained in outer, up to tau relative to the outer radius.
bool ball_contains(const Ball& outer, const Ball& inner);

// ---------------------------------------------------------------------------
// Systems of linear forms and the minor calculus.

// An M x N real matrix A, identified with a point of R^H, H = M N (row-major).
// Row vectors A_u = (a_u1..a_uN, e_u) and column vectors B_v = (a_1v..a_Mv, e_v)
// live in R^L, L = M + N.
class LinearFormsPoint {
 public:
  LinearFormsPoint(int m, int n, Vec entries);
  static LinearFormsPoint from_point(int m, int n, std::span<const Real> point) {
    return LinearFormsPoint(m, n, Vec(point.begin(), point.end()));
  }

  int m() const { return m_; }
  int n() const { return n_; }
  int h() const { return m_ * n_; }
  int l() const { return m_ + n_; }
  const Real& operator()(int u, int v) const { return entries_[u * n_ + v]; }
  const Vec& entries() const { return entries_; }

  Vec row_vector(int u) const;     // A_u, 1 at coordinate N+u
  Vec column_vector(int v) const;  // B_v, 1 at coordinate M+v

 private:
  int m_;
  int n_;
  Vec entries_;
};

// Which family of L-vectors the minors are built from. Columns give the
// N x N matrix (B_u . Y_v); rows give the dual M x M matrix (A_u . X_v).
enum class MinorFamily { kColumns, kRows };

// Pair (I, J) of sorted 0-based index sets of equal size v. v = 0 is the
// distinguished index whose minor is identically 1.
struct MinorIndex {
  std::vector<int> rows;
  std::vector<int> cols;
  int size() const { return static_cast<int>(rows.size()); }
  bool operator==(const MinorIndex&) const = default;
};

// All v-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int n, int v);
// Omega_v: all (I, J) with |I| = |J| = v.
std::vector<MinorIndex> minor_indices(int n, int v);

// Minor calculus for a fixed orthonormal basis.
class MinorSystem {
 public:
  // Throws NonOrthonormalBasis when the basis is not orthonormal within tau.
  MinorSystem(int m, int n, MinorFamily family, std::vector<Vec> basis);

  int m() const { return m_; }
  int n() const { return n_; }
  MinorFamily family() const { return family_; }
  // Number of family vectors (N for columns, M for rows) = basis size.
  int order() const { return static_cast<int>(basis_.size()); }
  const std::vector<Vec>& basis() const { return basis_; }

  // The order x order matrix (F_u . Y_v).
  Mat matrix(const LinearFormsPoint& a) const;
  // d/dt of entry (u, v) along direction A' (linear in A').
  Real entry_derivative(const LinearFormsPoint& direction, int u, int v) const;
  // Coefficient of matrix entry (r, c) of A in entry (u, v).
  Real entry_coefficient(int u, int v, int r, int c) const;

  Real minor(const LinearFormsPoint& a, const MinorIndex& w) const;
  Real grad_minor(const LinearFormsPoint& a, const MinorIndex& w,
                  const LinearFormsPoint& direction) const;
  // Gradient of D_w as a point of R^H; its Euclidean norm is the operator norm.
  Vec grad_vector(const LinearFormsPoint& a, const MinorIndex& w) const;

  // M_v(A), the Euclidean norm of all v x v minors. M_0 = 1, M_{-1} = 0.
  Real mv(const LinearFormsPoint& a, int v) const;
  // All norms M_0..M_order at once.
  std::vector<Real> mv_all(const LinearFormsPoint& a) const;

  // Recursive upper bound S_v on sup_{A in b} M_v(A):
  // S_0 = 1, S_v = M_v(center) + v * radius * S_{v-1}.
  Real sup_mv_bound(const Ball& b, int v) const;

 private:
  Real det_of(const Mat& full, const MinorIndex& w) const;

  int m_;
  int n_;
  MinorFamily family_;
  std::vector<Vec> basis_;
};

// All minors of one order at one point.
struct MinorTable {
  std::vector<Vec> basis;
  std::vector<std::vector<MinorIndex>> indices;  // [v] -> Omega_v
  std::vector<Vec> values;                       // [v][k] -> D_{indices[v][k]}
  std::vector<Real> norms;                       // [v] -> M_v
};
MinorTable minor_table(const MinorSystem& sys, const LinearFormsPoint& a);

// Convenience wrappers over the column family.
Real minor_determinant(const LinearFormsPoint& a, const std::vector<Vec>& basis,
                       const MinorIndex& w);
Real grad_minor(const LinearFormsPoint& a, const std::vector<Vec>& basis, const MinorIndex& w,
                const LinearFormsPoint& direction);
Real sup_Mv_bound(const Ball& b, int m, int n, const std::vector<Vec>& basis, int v);

// Returns `target_dim` orthonormal vectors whose span contains span(vectors).
// Vectors whose residual after projection is below tau (relative to their
// norm) count as dependent; completion uses standard basis vectors in index
// order. Throws DimensionExceeded when span(vectors) has dimension > target_dim.
// The ambient dimension defaults to the length of the input vectors.
std::vector<Vec> gram_schmidt_extend(const std::vector<Vec>& vectors, int target_dim,
                                     int ambient_dim = 0);

// Rank of the span of `vectors` at tolerance tau (same rule as above).
int span_dimension(const std::vector<Vec>& vectors);

class DimensionExceeded : public Error {
 public:
  DimensionExceeded(int found, int allowed);
  int found() const { return found_; }
  int allowed() const { return allowed_; }

 private:
  int found_;
  int allowed_;
};

}  // namespace sgame

#endif  // SGAME_GEOMETRY_H_
