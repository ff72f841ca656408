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

#ifndef SGAME_TRANSCRIPT_IO_H_
#define SGAME_TRANSCRIPT_IO_H_

#include <string>

#include "json.hpp"

#include "sgame/game.h"

namespace sgame {

// Reals travel as decimal strings at full working precision.
nlohmann::json real_to_json(const Real& x);
Real real_from_json(const nlohmann::json& j);
nlohmann::json vec_to_json(const Vec& v);
Vec vec_from_json(const nlohmann::json& j);

nlohmann::json ball_to_json(const Ball& b);
Ball ball_from_json(const nlohmann::json& j);
nlohmann::json slab_to_json(const HyperplaneSlab& h);
HyperplaneSlab slab_from_json(const nlohmann::json& j);

nlohmann::json params_to_json(const GameParams& p);
GameParams params_from_json(const nlohmann::json& j);

nlohmann::json transcript_to_json(const GameTranscript& t);
GameTranscript transcript_from_json(const nlohmann::json& j);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace sgame

#endif  // SGAME_TRANSCRIPT_IO_H_
