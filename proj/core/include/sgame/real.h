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

#ifndef SGAME_REAL_H_
#define SGAME_REAL_H_

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace sgame {

// Binary floating point with process-wide configurable precision. All game
// geometry is carried in this type; verification oracles may drop to double.
using Real = boost::multiprecision::mpfr_float;

inline constexpr int kDefaultPrecisionBits = 212;

// Sets the working precision (in bits) for every Real created afterwards.
// Also refreshes the global tolerance.
void set_precision_bits(int bits);
int precision_bits();

// Reads SG_PRECISION_BITS when set, otherwise `fallback`; applies the result.
int init_precision_from_env(int fallback = kDefaultPrecisionBits);

// Global tolerance 2^(-precision/2).
const Real& tolerance();

// Decimal string with enough digits to round-trip at the current precision.
std::string to_string(const Real& x);
Real parse_real(const std::string& s);

inline double to_double(const Real& x) { return x.convert_to<double>(); }

// base^e for integer e (exact for representable powers).
Real ipow(const Real& base, long e);

// Base error for everything the library throws; `code` is machine-readable.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace sgame

#endif  // SGAME_REAL_H_
