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

#ifndef SGAME_TOOLS_CLI_H_
#define SGAME_TOOLS_CLI_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"

namespace sgame::cli {

// Config keys per command, with defaults:
//   common:          command, seed (0), precision_bits, out
//   play-escape:     system, beta ("1/4"), bob, stages (6), max_rounds (400), delta
//   play-bad0:       m (1), n (1), r ("auto"), beta ("1/4"), i_max (4), bob,
//                    budget, grid_divisor (8)
//   validate-system: system, indices (32), probe {center, radius}
//   fractal:         ifs ("example34"), depth (8), emit_points (false),
//                    box_scales {hi, lo, per_decade}, diffuseness {beta, rho_min, rho_k, trials}
//   verify:          transcript, qmax (10000), cf_depth (40)
//   report:          dir
//   bob:             {kind: random | slab-hugger | center | target, center, radius, target}
// Throws SchemaError on unknown keys or wrongly typed values.
void validate_config(const nlohmann::json& config);

struct RunResult {
  int status = 0;
  nlohmann::json summary;
};

// Validates, then runs one command. Artifacts are written under config["out"]
// when present (config.json, transcript.json, certificates.json, report.txt).
// Module errors propagate as sgame::Error.
RunResult run(const nlohmann::json& config, std::ostream& log);

// run() with every failure folded into {"error": {"code", "message"}} and a
// nonzero status.
RunResult run_guarded(const nlohmann::json& config, std::ostream& log);

nlohmann::json error_object(const std::string& code, const std::string& message);

// Independent 64-bit stream for `name` derived from the run seed.
std::uint64_t stream_seed(std::uint64_t seed, std::string_view name);

}  // namespace sgame::cli

#endif  // SGAME_TOOLS_CLI_H_
