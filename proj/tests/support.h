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

#ifndef SGAME_TESTS_SUPPORT_H_
#define SGAME_TESTS_SUPPORT_H_

#include <fstream>
#include <string>

#include "json.hpp"
#include "sgame/real.h"

namespace sgame::testing {

// Reference values produced by tests/oracles/gen_oracles.py.
inline const nlohmann::json& oracle() {
  static const nlohmann::json j = [] {
    std::ifstream f(SGAME_ORACLE_FILE);
    return nlohmann::json::parse(f);
  }();
  return j;
}

// "p/q" or a decimal string.
inline Real rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return parse_real(s);
  return parse_real(s.substr(0, slash)) / parse_real(s.substr(slash + 1));
}

inline Real rat(const nlohmann::json& j) {
  return j.is_string() ? rat(j.get<std::string>()) : Real(j.get<double>());
}

inline bool close(const Real& a, const Real& b, double rel = 1e-40) {
  return abs(a - b) <= rel * std::max(Real(1), Real(abs(b)));
}

}  // namespace sgame::testing

#endif  // SGAME_TESTS_SUPPORT_H_
