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

#include "sgame/transcript_io.h"

#include <fstream>

namespace sgame {

using nlohmann::json;

json real_to_json(const Real& x) { return to_string(x); }

Real real_from_json(const json& j) {
  if (j.is_string()) return parse_real(j.get<std::string>());
  if (j.is_number_integer()) return Real(j.get<long long>());
  // Binary doubles are taken at face value; decimal strings are preferred.
  if (j.is_number()) return Real(j.get<double>());
  throw Error("ParseError", "expected a real number, got " + j.dump());
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (const Real& x : v) a.push_back(real_to_json(x));
  return a;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw Error("ParseError", "expected an array of reals");
  Vec v;
  for (const json& x : j) v.push_back(real_from_json(x));
  return v;
}

json ball_to_json(const Ball& b) {
  return {{"center", vec_to_json(b.center())}, {"radius", real_to_json(b.radius())}};
}

Ball ball_from_json(const json& j) {
  return {vec_from_json(j.at("center")), real_from_json(j.at("radius"))};
}

json slab_to_json(const HyperplaneSlab& h) {
  return {{"normal", vec_to_json(h.normal())},
          {"offset", real_to_json(h.offset())},
          {"epsilon", real_to_json(h.epsilon())}};
}

HyperplaneSlab slab_from_json(const json& j) {
  return {vec_from_json(j.at("normal")), real_from_json(j.at("offset")),
          real_from_json(j.at("epsilon"))};
}

json params_to_json(const GameParams& p) {
  json j = {{"variant", variant_name(p.variant)},
            {"beta", real_to_json(p.beta)},
            {"dim", p.dim},
            {"max_rounds", p.max_rounds},
            {"stop_radius", real_to_json(p.stop_radius)},
            {"detect_no_legal_move", p.detect_no_legal_move}};
  if (p.variant == Variant::kSchmidt) j["alpha"] = real_to_json(p.alpha);
  if (p.variant == Variant::kHyperplanePercentage)
    j["p"] = std::to_string(p.p.numerator()) + "/" + std::to_string(p.p.denominator());
  return j;
}

namespace {

void only_keys(const json& j, std::initializer_list<const char*> keys, const char* where) {
  if (!j.is_object()) throw Error("ParseError", std::string(where) + " must be an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw Error("ParseError", "unknown key '" + k + "' in " + where);
  }
}

Rational parse_rational(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash != std::string::npos)
        return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
      // Decimal fraction such as "0.9".
      auto dot = s.find('.');
      if (dot == std::string::npos) return {std::stoll(s), 1};
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::int64_t den = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      return {std::stoll(digits), den};
    } catch (const std::logic_error&) {
      throw Error("ParseError", "not a rational: '" + s + "'");
    }
  }
  if (j.is_number_integer()) return {j.get<std::int64_t>(), 1};
  if (j.is_number()) return parse_rational(json(j.dump()));
  throw Error("ParseError", "not a rational: " + j.dump());
}

}  // namespace

GameParams params_from_json(const json& j) {
  only_keys(j, {"variant", "beta", "dim", "max_rounds", "stop_radius", "detect_no_legal_move", "alpha", "p"},
            "params");
  GameParams p;
  p.variant = parse_variant(j.at("variant").get<std::string>());
  p.beta = real_from_json(j.at("beta"));
  p.dim = j.at("dim").get<int>();
  p.max_rounds = j.value("max_rounds", 0);
  if (j.contains("stop_radius")) p.stop_radius = real_from_json(j.at("stop_radius"));
  p.detect_no_legal_move = j.value("detect_no_legal_move", true);
  if (j.contains("alpha")) p.alpha = real_from_json(j.at("alpha"));
  if (j.contains("p")) p.p = parse_rational(j.at("p"));
  return p;
}

json transcript_to_json(const GameTranscript& t) {
  json turns = json::array();
  for (const Turn& turn : t.turns) {
    json jt = {{"player", turn.player == Player::kAlice ? "alice" : "bob"}};
    if (turn.ball) jt["ball"] = ball_to_json(*turn.ball);
    if (turn.player == Player::kAlice && !turn.ball) {
      json s = json::array();
      for (const HyperplaneSlab& h : turn.slabs) s.push_back(slab_to_json(h));
      jt["slabs"] = s;
    }
    json v = {{"legal", turn.verdict.legal}};
    if (!turn.verdict.legal) v["reason"] = turn.verdict.reason;
    if (turn.player == Player::kBob && t.params.is_hyperplane()) {
      v["submitted"] = turn.verdict.submitted;
      v["avoided"] = turn.verdict.avoided;
    }
    jt["verdict"] = v;
    turns.push_back(jt);
  }
  json out = {{"params", params_to_json(t.params)},
              {"turns", turns},
              {"outcome", outcome_name(t.outcome)}};
  if (t.offender) out["offender"] = *t.offender == Player::kAlice ? "alice" : "bob";
  if (t.offending_turn >= 0) out["offending_turn"] = t.offending_turn;
  if (!t.diagnostic.empty()) out["diagnostic"] = t.diagnostic;
  out["final_ball"] = t.final_ball ? ball_to_json(*t.final_ball) : json(nullptr);
  return out;
}

GameTranscript transcript_from_json(const json& j) try {
  only_keys(j, {"params", "turns", "outcome", "offender", "offending_turn", "diagnostic", "final_ball"},
            "transcript");
  GameTranscript t;
  t.params = params_from_json(j.at("params"));
  for (const json& jt : j.at("turns")) {
    only_keys(jt, {"player", "ball", "slabs", "verdict"}, "turn");
    only_keys(jt.at("verdict"), {"legal", "reason", "submitted", "avoided"}, "verdict");
    Turn turn;
    const std::string who = jt.at("player").get<std::string>();
    if (who != "alice" && who != "bob") throw Error("ParseError", "unknown player '" + who + "'");
    turn.player = who == "alice" ? Player::kAlice : Player::kBob;
    if (jt.contains("ball")) turn.ball = ball_from_json(jt.at("ball"));
    if (jt.contains("slabs"))
      for (const json& s : jt.at("slabs")) turn.slabs.push_back(slab_from_json(s));
    const json& v = jt.at("verdict");
    turn.verdict.legal = v.at("legal").get<bool>();
    turn.verdict.reason = v.value("reason", "");
    turn.verdict.submitted = v.value("submitted", 0);
    turn.verdict.avoided = v.value("avoided", 0);
    t.turns.push_back(std::move(turn));
  }
  t.outcome = parse_outcome(j.at("outcome").get<std::string>());
  if (j.contains("offender"))
    t.offender = j.at("offender").get<std::string>() == "alice" ? Player::kAlice : Player::kBob;
  t.offending_turn = j.value("offending_turn", -1);
  t.diagnostic = j.value("diagnostic", "");
  if (j.contains("final_ball") && !j.at("final_ball").is_null())
    t.final_ball = ball_from_json(j.at("final_ball"));
  return t;
} catch (const json::exception& e) {
  throw Error("ParseError", std::string("malformed transcript: ") + e.what());
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw Error("IoError", "cannot write " + path);
  f << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("IoError", "cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw Error("ParseError", path + ": " + e.what());
  }
}

}  // namespace sgame
