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

#include "sgame/real.h"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace sgame {
namespace {

int g_bits = 0;
Real* g_tolerance = nullptr;

unsigned digits10_for_bits(int bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

void ensure_initialized() {
  if (g_bits == 0) set_precision_bits(kDefaultPrecisionBits);
}

}  // namespace

void set_precision_bits(int bits) {
  if (bits < 53) throw Error("InvalidPrecision", "precision must be at least 53 bits");
  g_bits = bits;
  Real::default_precision(digits10_for_bits(bits));
  delete g_tolerance;
  g_tolerance = new Real(boost::multiprecision::ldexp(Real(1), -bits / 2));
}

int precision_bits() {
  ensure_initialized();
  return g_bits;
}

int init_precision_from_env(int fallback) {
  int bits = fallback;
  if (const char* env = std::getenv("SG_PRECISION_BITS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0') {
      throw Error("InvalidPrecision", std::string("SG_PRECISION_BITS is not an integer: ") + env);
    }
    bits = static_cast<int>(v);
  }
  set_precision_bits(bits);
  return bits;
}

const Real& tolerance() {
  ensure_initialized();
  return *g_tolerance;
}

std::string to_string(const Real& x) {
  ensure_initialized();
  return x.str(0, std::ios_base::scientific);
}

Real parse_real(const std::string& s) {
  ensure_initialized();
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw Error("ParseError", "not a real number: '" + s + "'");
  }
}

namespace {
// Applies the default precision before any Real is constructed by callers.
[[maybe_unused]] const bool kPrecisionInitialized = (ensure_initialized(), true);
}  // namespace

Real ipow(const Real& base, long e) {
  if (e < 0) return Real(1) / ipow(base, -e);
  Real result = 1;
  Real b = base;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

}  // namespace sgame
