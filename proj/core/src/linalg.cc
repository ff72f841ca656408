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

#include "sgame/linalg.h"

#include <algorithm>
#include <utility>

namespace sgame {

Mat::Mat(std::size_t rows, std::size_t cols, Vec data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw Error("DimensionMismatch", "matrix data size mismatch");
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vec Mat::apply(std::span<const Real> x) const {
  if (x.size() != cols_) throw Error("DimensionMismatch", "matrix-vector size mismatch");
  Vec y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Real s = 0;
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw Error("DimensionMismatch", "matrix product size mismatch");
  Mat p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Real& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
    }
  return p;
}

Real dot(std::span<const Real> a, std::span<const Real> b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "dot product size mismatch");
  Real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Real norm(std::span<const Real> a) { return sqrt(dot(a, a)); }

Real distance(std::span<const Real> a, std::span<const Real> b) { return norm(sub(a, b)); }

Vec add(std::span<const Real> a, std::span<const Real> b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "vector size mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(std::span<const Real> a, std::span<const Real> b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "vector size mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scale(std::span<const Real> a, const Real& s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

Vec axpy(std::span<const Real> a, const Real& s, std::span<const Real> b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "vector size mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
  return r;
}

Real determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw Error("DimensionMismatch", "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Real(1);
  Mat a = m;
  Real det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a(r, col)) > abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == 0) return Real(0);
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      Real f = a(r, col) / a(col, col);
      if (f == 0) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

Real frobenius_norm(const Mat& m) { return norm(m.data()); }

namespace {

Vec power_iterate(const Mat& gram, Vec v, const Real& tol, int max_iter) {
  Real nv = norm(v);
  v = scale(v, Real(1) / nv);
  for (int it = 0; it < max_iter; ++it) {
    Vec w = gram.apply(v);
    Real nw = norm(w);
    if (nw == 0) return v;
    w = scale(w, Real(1) / nw);
    Real diff = distance(w, v);
    v = std::move(w);
    if (diff < tol) break;
  }
  return v;
}

void canonical_sign(Vec& v) {
  for (const Real& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Real& y : v) y = -y;
    return;
  }
}

}  // namespace

SingularPair top_singular_pair(const Mat& m, const Real& tol, int max_iter) {
  const std::size_t n = m.cols();
  if (n == 0) throw Error("DimensionMismatch", "singular pair of empty matrix");
  Mat gram = m.transpose() * m;

  // Geometric weights put the projection of e_1 first, so ties in the top
  // singular value resolve toward the lexicographically largest vector.
  Vec start(n);
  Real w = 1;
  for (std::size_t i = 0; i < n; ++i, w /= 2) start[i] = w;
  Vec v = power_iterate(gram, start, tol, max_iter);
  Real value = norm(m.apply(v));

  // Any column norm is a lower bound on the top singular value; a start
  // vector orthogonal to the top space shows up as a violation of it.
  Real best_col = 0;
  std::size_t best_idx = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Real s = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, c) * m(r, c);
    if (s > best_col) best_col = s, best_idx = c;
  }
  if (value * value < best_col * (1 - tol)) {
    Vec e(n);
    e[best_idx] = 1;
    v = power_iterate(gram, e, tol, max_iter);
    value = norm(m.apply(v));
  }
  canonical_sign(v);
  return {value, std::move(v)};
}

}  // namespace sgame
