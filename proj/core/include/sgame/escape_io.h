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

#ifndef SGAME_ESCAPE_IO_H_
#define SGAME_ESCAPE_IO_H_

#include "json.hpp"

#include "sgame/escape.h"

namespace sgame {

// System definition:
//   {"matrices": {"kind": "power", "base": 3 | [[..], ..]}
//              | {"kind": "explicit", "list": [3, 9, ..] | [[[..]], ..]},
//    "targets": {"kind": "lattice", "shift": [..]}
//             | {"kind": "scaled_lattice", "ratio": 2, "shift": [..]},
//    "first_index": 1, "lacunarity_floor": 2, "separation": 1}
// Unknown keys are rejected.
LacunarySystem system_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const StageCertificate& c);

}  // namespace sgame

#endif  // SGAME_ESCAPE_IO_H_
