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

#include "sgame/escape_io.h"

#include <set>

#include "sgame/transcript_io.h"

namespace sgame {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw Error("SchemaError", where + " must be an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw Error("SchemaError", "unknown field '" + key + "' in " + where);
}

// A scalar, or a list of rows.
Mat matrix_from_json(const json& j) {
  if (j.is_number() || j.is_string()) return Mat::scalar(real_from_json(j));
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw Error("SchemaError", "matrix must be a number or a list of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw Error("SchemaError", "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = real_from_json(j[r][c]);
  }
  return m;
}

}  // namespace

LacunarySystem system_from_json(const json& j) try {
  reject_unknown(j, {"matrices", "targets", "first_index", "lacunarity_floor", "separation"},
                 "system");
  const json& jm = j.at("matrices");
  const json& jt = j.at("targets");
  const long first = j.value("first_index", 1L);

  LacunarySystem s;
  const std::string mk = jm.at("kind").get<std::string>();
  if (mk == "power") {
    reject_unknown(jm, {"kind", "base"}, "matrices");
    Mat base = matrix_from_json(jm.at("base"));
    s = power_system(base, first, Vec(base.rows()));
  } else if (mk == "explicit") {
    reject_unknown(jm, {"kind", "list"}, "matrices");
    std::vector<Mat> list;
    for (const json& x : jm.at("list")) list.push_back(matrix_from_json(x));
    if (list.empty()) throw Error("SchemaError", "explicit matrix list is empty");
    s = power_system(Mat::identity(list[0].rows()), first, Vec(list[0].rows()));
    s.m = static_cast<int>(list[0].rows());
    s.n = static_cast<int>(list[0].cols());
    s.last_index = first + static_cast<long>(list.size()) - 1;
    s.matrix = [list, first](long k) {
      if (k < first || k - first >= static_cast<long>(list.size()))
        throw Error("IndexOutOfRange", "no matrix for index " + std::to_string(k));
      return list[k - first];
    };
    s.description = "explicit";
  } else {
    throw Error("SchemaError", "unknown matrices kind '" + mk + "'");
  }

  const std::string tk = jt.at("kind").get<std::string>();
  Vec shift = jt.contains("shift") ? vec_from_json(jt.at("shift")) : Vec(s.m);
  if (shift.size() != static_cast<std::size_t>(s.m))
    throw Error("SchemaError", "target shift must have M entries");
  if (tk == "lattice") {
    reject_unknown(jt, {"kind", "shift"}, "targets");
    s.targets_near = [shift](long, const Vec& c, const Real& r) {
      return lattice_points_near(shift, Real(1), c, r);
    };
    s.separation = Real(1);
  } else if (tk == "scaled_lattice") {
    reject_unknown(jt, {"kind", "shift", "ratio"}, "targets");
    Real ratio = real_from_json(jt.at("ratio"));
    s.targets_near = [shift, ratio](long k, const Vec& c, const Real& r) {
      return lattice_points_near(shift, ipow(ratio, -k), c, r);
    };
    s.separation.reset();
  } else {
    throw Error("SchemaError", "unknown targets kind '" + tk + "'");
  }
  if (j.contains("lacunarity_floor")) s.lacunarity_floor = real_from_json(j.at("lacunarity_floor"));
  if (j.contains("separation")) s.separation = real_from_json(j.at("separation"));
  return s;
} catch (const json::exception& e) {
  throw Error("SchemaError", std::string("malformed system: ") + e.what());
}

json certificate_to_json(const StageCertificate& c) {
  return {{"stage", c.stage},
          {"indices", c.ks},
          {"window", {real_to_json(c.window_lo), real_to_json(c.window_hi)}},
          {"c", real_to_json(c.c)},
          {"completed_at_bob_move", c.completed_at_bob_move}};
}

}  // namespace sgame
