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

#ifndef SGAME_LINALG_H_
#define SGAME_LINALG_H_

#include <cstddef>
#include <span>
#include <vector>

#include "sgame/real.h"

namespace sgame {

using Vec = std::vector<Real>;

// Dense row-major matrix of Real. Small sizes only (the games live in
// dimension <= 16), so no blocking or expression templates.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Mat(std::size_t rows, std::size_t cols, Vec data);

  static Mat identity(std::size_t n);
  static Mat scalar(const Real& x) { return Mat(1, 1, Vec{x}); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Real& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Real& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const Vec& data() const { return data_; }

  Mat transpose() const;
  Vec apply(std::span<const Real> x) const;

  friend Mat operator*(const Mat& a, const Mat& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

Real dot(std::span<const Real> a, std::span<const Real> b);
Real norm(std::span<const Real> a);
Real distance(std::span<const Real> a, std::span<const Real> b);
Vec add(std::span<const Real> a, std::span<const Real> b);
Vec sub(std::span<const Real> a, std::span<const Real> b);
Vec scale(std::span<const Real> a, const Real& s);
// a + s * b
Vec axpy(std::span<const Real> a, const Real& s, std::span<const Real> b);

// Determinant by Gaussian elimination with partial pivoting.
Real determinant(const Mat& m);

// Frobenius norm, which is also the Euclidean norm of the flattened matrix.
Real frobenius_norm(const Mat& m);

struct SingularPair {
  Real value;   // top singular value
  Vec right;    // unit right singular vector v with |M v| = value
};

// Top singular pair via power iteration on M^T M to tolerance `tol`.
// The returned vector is normalized so its first nonzero entry is positive,
// which makes ties resolve toward the lexicographically largest vector.
SingularPair top_singular_pair(const Mat& m, const Real& tol, int max_iter = 10000);

}  // namespace sgame

#endif  // SGAME_LINALG_H_
