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

#include "sgame/geometry.h"

#include <utility>

namespace sgame {

Ball::Ball(Vec center, Real radius) : center_(std::move(center)), radius_(std::move(radius)) {
  if (!(radius_ > 0)) throw Error("InvalidBall", "ball radius must be positive");
}

HyperplaneSlab::HyperplaneSlab(Vec normal, Real offset, Real epsilon)
    : normal_(std::move(normal)), offset_(std::move(offset)), epsilon_(std::move(epsilon)) {
  if (epsilon_ < 0) throw Error("InvalidSlab", "slab thickness must be nonnegative");
  if (abs(norm(normal_) - 1) > tolerance()) throw Error("InvalidSlab", "slab normal is not a unit vector");
}

HyperplaneSlab HyperplaneSlab::from_raw(std::span<const Real> raw_normal, const Real& raw_offset,
                                        const Real& epsilon) {
  Real n = norm(raw_normal);
  if (n == 0) throw Error("InvalidSlab", "zero hyperplane normal");
  return {scale(raw_normal, 1 / n), raw_offset / n, epsilon};
}

Real dist_point_hyperplane(std::span<const Real> p, const HyperplaneSlab& h) {
  return abs(dot(h.normal(), p) - h.offset());
}

bool ball_avoids_slab(const Ball& b, const HyperplaneSlab& h) {
  return dist_point_hyperplane(b.center(), h) > h.epsilon() + b.radius() + tolerance();
}

bool ball_contains(const Ball& outer, const Ball& inner) {
  return distance(outer.center(), inner.center()) + inner.radius() <=
         outer.radius() * (1 + tolerance());
}

LinearFormsPoint::LinearFormsPoint(int m, int n, Vec entries)
    : m_(m), n_(n), entries_(std::move(entries)) {
  if (m_ < 1 || n_ < 1 || entries_.size() != static_cast<std::size_t>(m_ * n_))
    throw Error("DimensionMismatch", "linear forms point needs M*N entries");
}

Vec LinearFormsPoint::row_vector(int u) const {
  Vec r(l());
  for (int c = 0; c < n_; ++c) r[c] = (*this)(u, c);
  r[n_ + u] = 1;
  return r;
}

Vec LinearFormsPoint::column_vector(int v) const {
  Vec r(l());
  for (int row = 0; row < m_; ++row) r[row] = (*this)(row, v);
  r[m_ + v] = 1;
  return r;
}

std::vector<std::vector<int>> subsets_of_size(int n, int v) {
  std::vector<std::vector<int>> out;
  if (v < 0 || v > n) return out;
  std::vector<int> cur(v);
  for (int i = 0; i < v; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = v - 1;
    while (i >= 0 && cur[i] == n - v + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int k = i + 1; k < v; ++k) cur[k] = cur[k - 1] + 1;
  }
  return out;
}

std::vector<MinorIndex> minor_indices(int n, int v) {
  std::vector<MinorIndex> out;
  auto subs = subsets_of_size(n, v);
  for (const auto& i : subs)
    for (const auto& j : subs) out.push_back({i, j});
  return out;
}

MinorSystem::MinorSystem(int m, int n, MinorFamily family, std::vector<Vec> basis)
    : m_(m), n_(n), family_(family), basis_(std::move(basis)) {
  const int want = family_ == MinorFamily::kColumns ? n_ : m_;
  if (static_cast<int>(basis_.size()) != want)
    throw Error("NonOrthonormalBasis", "basis has the wrong number of vectors");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].size() != static_cast<std::size_t>(m_ + n_))
      throw Error("NonOrthonormalBasis", "basis vector has the wrong length");
    for (std::size_t j = 0; j <= i; ++j) {
      Real g = dot(basis_[i], basis_[j]) - (i == j ? 1 : 0);
      if (abs(g) > tolerance()) throw Error("NonOrthonormalBasis", "basis is not orthonormal");
    }
  }
}

Mat MinorSystem::matrix(const LinearFormsPoint& a) const {
  const int k = order();
  Mat out(k, k);
  for (int u = 0; u < k; ++u) {
    Vec f = family_ == MinorFamily::kColumns ? a.column_vector(u) : a.row_vector(u);
    for (int v = 0; v < k; ++v) out(u, v) = dot(f, basis_[v]);
  }
  return out;
}

Real MinorSystem::entry_coefficient(int u, int v, int r, int c) const {
  if (family_ == MinorFamily::kColumns) return c == u ? basis_[v][r] : Real(0);
  return r == u ? basis_[v][c] : Real(0);
}

Real MinorSystem::entry_derivative(const LinearFormsPoint& direction, int u, int v) const {
  Real s = 0;
  if (family_ == MinorFamily::kColumns) {
    for (int r = 0; r < m_; ++r) s += direction(r, u) * basis_[v][r];
  } else {
    for (int c = 0; c < n_; ++c) s += direction(u, c) * basis_[v][c];
  }
  return s;
}

Real MinorSystem::det_of(const Mat& full, const MinorIndex& w) const {
  const int v = w.size();
  Mat sub(v, v);
  for (int k = 0; k < v; ++k)
    for (int l = 0; l < v; ++l) sub(k, l) = full(w.rows[k], w.cols[l]);
  return determinant(sub);
}

Real MinorSystem::minor(const LinearFormsPoint& a, const MinorIndex& w) const {
  if (w.size() == 0) return Real(1);
  return det_of(matrix(a), w);
}

namespace {

MinorIndex drop(const MinorIndex& w, int k, int l) {
  MinorIndex out;
  for (int t = 0; t < w.size(); ++t) {
    if (t != k) out.rows.push_back(w.rows[t]);
    if (t != l) out.cols.push_back(w.cols[t]);
  }
  return out;
}

}  // namespace

Real MinorSystem::grad_minor(const LinearFormsPoint& a, const MinorIndex& w,
                             const LinearFormsPoint& direction) const {
  const int v = w.size();
  if (v == 0) return Real(0);
  Mat full = matrix(a);
  Real s = 0;
  for (int k = 0; k < v; ++k)
    for (int l = 0; l < v; ++l) {
      Real d = entry_derivative(direction, w.rows[k], w.cols[l]);
      if (d == 0) continue;
      Real cof = det_of(full, drop(w, k, l));
      s += ((k + l) % 2 == 0 ? d : -d) * cof;
    }
  return s;
}

Vec MinorSystem::grad_vector(const LinearFormsPoint& a, const MinorIndex& w) const {
  const int v = w.size();
  Vec g(static_cast<std::size_t>(m_ * n_));
  if (v == 0) return g;
  Mat full = matrix(a);
  for (int k = 0; k < v; ++k)
    for (int l = 0; l < v; ++l) {
      Real cof = det_of(full, drop(w, k, l));
      if ((k + l) % 2 != 0) cof = -cof;
      const int u = w.rows[k], col = w.cols[l];
      // Only entries in row u (rows family) or column u (columns family) move entry (u, col).
      if (family_ == MinorFamily::kColumns) {
        for (int r = 0; r < m_; ++r) g[r * n_ + u] += cof * basis_[col][r];
      } else {
        for (int c = 0; c < n_; ++c) g[u * n_ + c] += cof * basis_[col][c];
      }
    }
  return g;
}

Real MinorSystem::mv(const LinearFormsPoint& a, int v) const {
  if (v < 0) return Real(0);
  if (v == 0) return Real(1);
  if (v > order()) return Real(0);
  Mat full = matrix(a);
  Real s = 0;
  for (const MinorIndex& w : minor_indices(order(), v)) {
    Real d = det_of(full, w);
    s += d * d;
  }
  return sqrt(s);
}

std::vector<Real> MinorSystem::mv_all(const LinearFormsPoint& a) const {
  std::vector<Real> out(order() + 1);
  Mat full = matrix(a);
  out[0] = 1;
  for (int v = 1; v <= order(); ++v) {
    Real s = 0;
    for (const MinorIndex& w : minor_indices(order(), v)) {
      Real d = det_of(full, w);
      s += d * d;
    }
    out[v] = sqrt(s);
  }
  return out;
}

Real MinorSystem::sup_mv_bound(const Ball& b, int v) const {
  LinearFormsPoint c = LinearFormsPoint::from_point(m_, n_, b.center());
  std::vector<Real> mvs = mv_all(c);
  Real s = 1;
  for (int k = 1; k <= v && k <= order(); ++k) s = mvs[k] + k * b.radius() * s;
  if (v > order()) return Real(0);
  return s;
}

MinorTable minor_table(const MinorSystem& sys, const LinearFormsPoint& a) {
  MinorTable t;
  t.basis = sys.basis();
  Mat full = sys.matrix(a);
  for (int v = 0; v <= sys.order(); ++v) {
    t.indices.push_back(minor_indices(sys.order(), v));
    Vec vals;
    Real s = 0;
    for (const MinorIndex& w : t.indices.back()) {
      Mat sub(v, v);
      for (int k = 0; k < v; ++k)
        for (int l = 0; l < v; ++l) sub(k, l) = full(w.rows[k], w.cols[l]);
      Real d = determinant(sub);
      s += d * d;
      vals.push_back(d);
    }
    t.values.push_back(std::move(vals));
    t.norms.push_back(v == 0 ? Real(1) : sqrt(s));
  }
  return t;
}

Real minor_determinant(const LinearFormsPoint& a, const std::vector<Vec>& basis,
                       const MinorIndex& w) {
  return MinorSystem(a.m(), a.n(), MinorFamily::kColumns, basis).minor(a, w);
}

Real grad_minor(const LinearFormsPoint& a, const std::vector<Vec>& basis, const MinorIndex& w,
                const LinearFormsPoint& direction) {
  return MinorSystem(a.m(), a.n(), MinorFamily::kColumns, basis).grad_minor(a, w, direction);
}

Real sup_Mv_bound(const Ball& b, int m, int n, const std::vector<Vec>& basis, int v) {
  return MinorSystem(m, n, MinorFamily::kColumns, basis).sup_mv_bound(b, v);
}

namespace {

// Appends the normalized residual of v to `basis` when it is independent.
bool absorb(std::vector<Vec>& basis, const Vec& v) {
  Real nv = norm(v);
  if (nv == 0) return false;
  Vec r = v;
  // Two passes of modified Gram-Schmidt keep the basis orthonormal to working precision.
  for (int pass = 0; pass < 2; ++pass)
    for (const Vec& q : basis) r = axpy(r, -dot(r, q), q);
  Real nr = norm(r);
  if (nr < tolerance() * nv) return false;
  basis.push_back(scale(r, 1 / nr));
  return true;
}

}  // namespace

DimensionExceeded::DimensionExceeded(int found, int allowed)
    : Error("DimensionExceeded", "span dimension " + std::to_string(found) +
                                     " exceeds allowed " + std::to_string(allowed)),
      found_(found),
      allowed_(allowed) {}

int span_dimension(const std::vector<Vec>& vectors) {
  std::vector<Vec> basis;
  for (const Vec& v : vectors) absorb(basis, v);
  return static_cast<int>(basis.size());
}

std::vector<Vec> gram_schmidt_extend(const std::vector<Vec>& vectors, int target_dim,
                                     int ambient_dim) {
  std::vector<Vec> basis;
  for (const Vec& v : vectors) absorb(basis, v);
  if (static_cast<int>(basis.size()) > target_dim)
    throw DimensionExceeded(static_cast<int>(basis.size()), target_dim);
  if (basis.size() == static_cast<std::size_t>(target_dim)) return basis;
  std::size_t ambient = ambient_dim > 0 ? static_cast<std::size_t>(ambient_dim)
                        : vectors.empty()  ? static_cast<std::size_t>(target_dim)
                                           : vectors[0].size();
  for (std::size_t i = 0; i < ambient && static_cast<int>(basis.size()) < target_dim; ++i) {
    Vec e(ambient);
    e[i] = 1;
    absorb(basis, e);
  }
  if (static_cast<int>(basis.size()) < target_dim)
    throw Error("DimensionMismatch", "target dimension exceeds ambient dimension");
  return basis;
}

}  // namespace sgame
