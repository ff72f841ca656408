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

#ifndef SGAME_VERIFY_H_
#define SGAME_VERIFY_H_

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

#include "sgame/escape.h"
#include "sgame/linforms.h"

namespace sgame {

using DMat = std::vector<std::vector<double>>;  // M rows of N entries

struct WindowMinimum {
  long lo = 0;  // |q| in [lo, hi)
  long hi = 0;
  double value = 0;
  std::vector<long> q;
};

struct BadnessReport {
  DMat a;
  std::vector<double> x;
  long q_max = 0;
  double inf = 0;
  std::vector<long> argmin;
  long enumerated = 0;
  std::vector<WindowMinimum> windows;  // dyadic shells of |q|
};

// min over 0 < |q| <= q_max of |q|^{N/M} dist(A q - x, Z^M), q in Z^N. Ties go
// to the lexicographically first q.
BadnessReport badness_inf(const DMat& a, const std::vector<double>& x, long q_max,
                          long budget = 2'000'000'000L);

nlohmann::json badness_to_json(const BadnessReport& r);
std::string windows_csv(const BadnessReport& r);

using BigInt = boost::multiprecision::cpp_int;

struct ContinuedFraction {
  std::vector<BigInt> digits;  // a_0; a_1, ...
  std::vector<BigInt> p, q;    // convergents
  bool terminated = false;     // the input is rational at working precision
};

class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what) : Error("PrecisionExhausted", what) {}
};

// Euclidean algorithm on a working-precision real. Stops early when the
// remainder vanishes at the precision the convergents can still resolve.
ContinuedFraction continued_fraction(const Real& alpha, int depth);
// Exact expansion of num/den.
ContinuedFraction continued_fraction(const BigInt& num, const BigInt& den);

struct EscapeInf {
  Real value;
  long argmin = 0;
  std::vector<std::pair<long, Real>> per_index;
};

// min over the first K indices of dist(M_k x, Z_k).
EscapeInf escape_inf(const Vec& x, const LacunarySystem& s, int k_count);
// Distance from M_k x to Z_k.
Real escape_distance(const Vec& x, const LacunarySystem& s, long k);

struct CrosscheckReport {
  bool pass = false;
  Real bound;        // observation constant, M-th root taken
  double slack = 0;  // truncation slack subtracted from the bound
  Real q_cov;        // |x| < q_cov covered by the certificates
  double inf = 0;
  std::vector<long> argmin;
  long enumerated = 0;
  std::vector<int> missing;      // X indices without a clean certificate
  std::optional<std::vector<long>> violating_q;
  std::string message;
};

// Observation check: with clean X-phase certificates for i = 0..i_max on balls
// containing A, every q with 0 < |q| < delta R^{M(lambda+i_max)} must have
// |q|^{N/M} dist(A q, Z^M) >= (delta^L R^{-ML})^{1/M}.
CrosscheckReport crosscheck_observation51(const LinearFormsPoint& a, const WindowParams& w,
                                          int i_max,
                                          const std::vector<NoSolutionCertificate>& certs);

nlohmann::json crosscheck_to_json(const CrosscheckReport& r);

DMat to_dmat(const LinearFormsPoint& a);

}  // namespace sgame

#endif  // SGAME_VERIFY_H_
