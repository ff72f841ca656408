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

#include "cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "sgame/bob_strategies.h"
#include "sgame/escape.h"
#include "sgame/escape_io.h"
#include "sgame/fractals.h"
#include "sgame/linforms.h"
#include "sgame/transcript_io.h"
#include "sgame/verify.h"

namespace sgame::cli {

using nlohmann::json;
namespace fs = std::filesystem;

json error_object(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

std::uint64_t stream_seed(std::uint64_t seed, std::string_view name) {
  // FNV-1a of the stream name, mixed into the seed by one splitmix64 step.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) h = (h ^ c) * 0x100000001b3ULL;
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (h | 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// Schema

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error("SchemaError", what); }

void allow_only(const json& j, const std::set<std::string>& keys, const std::string& where) {
  if (!j.is_object()) schema_error(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!keys.count(it.key())) schema_error("unknown field '" + it.key() + "' in " + where);
}

void want_int(const json& j, const char* key, long lo, long hi) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number_integer()) schema_error(std::string(key) + " must be an integer");
  long x = v.get<long>();
  if (x < lo || x > hi)
    schema_error(std::string(key) + " must lie in [" + std::to_string(lo) + ", " +
                 std::to_string(hi) + "]");
}

void want_real(const json& j, const char* key) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number() && !v.is_string()) schema_error(std::string(key) + " must be a number");
}

void want_string(const json& j, const char* key) {
  if (j.contains(key) && !j.at(key).is_string()) schema_error(std::string(key) + " must be a string");
}

void want_bool(const json& j, const char* key) {
  if (j.contains(key) && !j.at(key).is_boolean()) schema_error(std::string(key) + " must be a boolean");
}

Real real_value(const json& j, const char* key, const std::string& dflt) {
  if (!j.contains(key)) return parse_real(dflt);
  const json& v = j.at(key);
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    auto slash = s.find('/');
    if (slash != std::string::npos) return parse_real(s.substr(0, slash)) / parse_real(s.substr(slash + 1));
  }
  return real_from_json(v);
}

void check_beta(const json& j, bool hyperplane) {
  want_real(j, "beta");
  if (!j.contains("beta")) return;
  Real b = real_value(j, "beta", "0");
  if (!(b > 0 && b < 1)) schema_error("beta must lie in (0, 1)");
  if (hyperplane && !(b < Real(1) / 3)) schema_error("beta must be below 1/3 in hyperplane games");
}

void check_bob(const json& j) {
  if (!j.contains("bob")) return;
  const json& b = j.at("bob");
  allow_only(b, {"kind", "center", "radius", "target"}, "bob");
  want_string(b, "kind");
  const std::string kind = b.value("kind", "random");
  if (kind != "random" && kind != "slab-hugger" && kind != "center" && kind != "target")
    schema_error("unknown bob kind '" + kind + "'");
  if (kind == "target" && !b.contains("target")) schema_error("target bob needs a target point");
  want_real(b, "radius");
  for (const char* k : {"center", "target"})
    if (b.contains(k) && !b.at(k).is_array()) schema_error(std::string("bob ") + k + " must be an array");
}

const std::set<std::string> kCommon = {"command", "seed", "precision_bits", "out"};

std::set<std::string> with_common(std::set<std::string> s) {
  s.insert(kCommon.begin(), kCommon.end());
  return s;
}

}  // namespace

void validate_config(const json& c) {
  if (!c.is_object()) schema_error("config must be a JSON object");
  if (!c.contains("command") || !c.at("command").is_string()) schema_error("missing command");
  const std::string cmd = c.at("command").get<std::string>();
  if (c.contains("seed") && !c.at("seed").is_number_unsigned() && !c.at("seed").is_number_integer())
    schema_error("seed must be an integer");
  if (c.contains("seed") && c.at("seed").is_number_integer() && c.at("seed").get<long long>() < 0)
    schema_error("seed must be non-negative");
  want_int(c, "precision_bits", 64, 1 << 16);
  want_string(c, "out");

  if (cmd == "play-escape") {
    allow_only(c, with_common({"system", "beta", "bob", "stages", "max_rounds", "delta"}), cmd);
    if (!c.contains("system")) schema_error("play-escape needs a system");
    check_beta(c, true);
    check_bob(c);
    want_int(c, "stages", 1, 64);
    want_int(c, "max_rounds", 1, 1000000);
    want_real(c, "delta");
  } else if (cmd == "play-bad0") {
    allow_only(c, with_common({"m", "n", "r", "beta", "i_max", "bob", "budget", "grid_divisor"}), cmd);
    want_int(c, "m", 1, 8);
    want_int(c, "n", 1, 8);
    if (c.contains("r") && !(c.at("r").is_string() && c.at("r").get<std::string>() == "auto")) {
      want_real(c, "r");
      if (!(real_value(c, "r", "0") > 1)) schema_error("r must exceed 1");
    }
    check_beta(c, true);
    check_bob(c);
    want_int(c, "i_max", 0, 1000);
    want_int(c, "budget", 1, 4'000'000'000L);
    want_int(c, "grid_divisor", 1, 64);
  } else if (cmd == "validate-system") {
    allow_only(c, with_common({"system", "indices", "probe", "beta"}), cmd);
    if (!c.contains("system")) schema_error("validate-system needs a system");
    want_int(c, "indices", 2, 100000);
    check_beta(c, true);
    if (c.contains("probe")) {
      allow_only(c.at("probe"), {"center", "radius"}, "probe");
      want_real(c.at("probe"), "radius");
    }
  } else if (cmd == "fractal") {
    allow_only(c, with_common({"ifs", "depth", "emit_points", "box_scales", "diffuseness"}), cmd);
    want_int(c, "depth", 1, 16);
    want_bool(c, "emit_points");
    if (c.contains("box_scales")) {
      allow_only(c.at("box_scales"), {"hi", "lo", "per_decade"}, "box_scales");
      want_int(c.at("box_scales"), "per_decade", 1, 100);
    }
    if (c.contains("diffuseness")) {
      allow_only(c.at("diffuseness"), {"beta", "rho_min", "rho_k", "trials"}, "diffuseness");
      want_int(c.at("diffuseness"), "trials", 1, 1000000);
    }
  } else if (cmd == "verify") {
    allow_only(c, with_common({"transcript", "qmax", "cf_depth"}), cmd);
    if (!c.contains("transcript")) schema_error("verify needs a transcript path");
    want_string(c, "transcript");
    want_int(c, "qmax", 1, 100'000'000L);
    want_int(c, "cf_depth", 1, 10000);
  } else if (cmd == "report") {
    allow_only(c, with_common({"dir"}), cmd);
    if (!c.contains("dir")) schema_error("report needs a directory");
    want_string(c, "dir");
  } else {
    schema_error("unknown command '" + cmd + "'");
  }
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t seed_of(const json& c) { return c.value("seed", std::uint64_t{0}); }

std::unique_ptr<BobStrategy> make_bob(const json& c, const Ball& dflt, std::uint64_t seed) {
  json b = c.value("bob", json::object());
  Vec center = b.contains("center") ? vec_from_json(b.at("center")) : dflt.center();
  Real radius = b.contains("radius") ? real_value(b, "radius", "1") : dflt.radius();
  if (center.size() != dflt.dim()) schema_error("bob center has the wrong dimension");
  Ball first(center, radius);
  const std::string kind = b.value("kind", "random");
  if (kind == "random") return std::make_unique<RandomBob>(first, seed);
  if (kind == "slab-hugger") return std::make_unique<SlabHuggerBob>(first, seed);
  if (kind == "center") return std::make_unique<CenterKeepingBob>(first);
  Vec target = vec_from_json(b.at("target"));
  if (target.size() != dflt.dim()) schema_error("bob target has the wrong dimension");
  return std::make_unique<TargetSeekingBob>(first, target);
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream f(p);
  if (!f) throw Error("IoError", "cannot write " + p.string());
  f << s;
}

std::string fmt(const Real& x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << to_double(x);
  return os.str();
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

std::string short_real(const json& j) { return j.is_null() ? "-" : fmt(real_from_json(j), 8); }

// ---------------------------------------------------------------------------
// Human-readable report assembled from the artifacts of a directory.

std::string build_report(const json& config, const json& certs, const json* verify) {
  std::ostringstream os;
  const std::string cmd = config.value("command", "");
  os << "command: " << cmd << "\n";
  os << "seed: " << config.value("seed", std::uint64_t{0}) << "\n";
  if (cmd == "play-escape") {
    os << "\nschedule\n";
    os << "  beta " << short_real(certs.at("beta")) << "  n " << certs.at("n")
       << "  r " << certs.at("r") << "  Q " << short_real(certs.at("q_used"))
       << "  delta " << short_real(certs.at("delta")) << "\n";
    os << "  c " << short_real(certs.at("c")) << "\n";
    os << "\nstage  indices                window                      done at\n";
    for (const json& s : certs.at("stages")) {
      std::ostringstream ks;
      for (const json& k : s.at("indices")) ks << k.get<long>() << " ";
      std::string k = ks.str();
      k.resize(22, ' ');
      std::ostringstream win;
      win << "[" << parse_real(s.at("window")[0].get<std::string>()).convert_to<double>() << ", "
          << parse_real(s.at("window")[1].get<std::string>()).convert_to<double>() << ")";
      std::string wstr = win.str();
      wstr.resize(std::max<std::size_t>(wstr.size(), 28), ' ');
      os << "  " << std::left << std::setw(5) << s.at("stage").get<int>() << k << " " << wstr
         << "move " << s.at("completed_at_bob_move").get<int>() << "\n";
    }
  } else if (cmd == "play-bad0") {
    const json& w = certs.at("window");
    os << "\nwindow\n";
    os << "  M " << w.at("m") << "  N " << w.at("n") << "  R " << short_real(w.at("r"))
       << "  i_max " << certs.at("i_max") << "\n";
    os << "  observation constant " << short_real(certs.at("observation_constant"))
       << "\n";
    os << "\nphase index  move  certified  |S|  span  note\n";
    for (const json& e : certs.at("events")) {
      os << "  " << e.at("phase").get<std::string>() << "    " << e.at("index").get<int>() << "      "
         << e.at("bob_move").get<int>() << "     " << (e.at("certificate").at("ok").get<bool>() ? "yes" : "NO ")
         << "        " << e.at("s_size").get<long>() << "    " << e.at("span_dim").get<int>() << "    "
         << e.value("diagnostic", "") << "\n";
    }
    if (!certs.at("diagnostics").empty()) {
      os << "\ndiagnostics\n";
      for (const json& d : certs.at("diagnostics")) os << "  " << d.get<std::string>() << "\n";
    }
    if (!certs.at("gate_failures").empty()) {
      os << "\nR gates not met (certificates remain the check)\n";
      for (const json& d : certs.at("gate_failures")) os << "  " << d.get<std::string>() << "\n";
    }
  }
  if (verify) {
    os << "\nverification\n";
    if (verify->contains("escape")) {
      const json& e = verify->at("escape");
      os << "  escape_inf " << short_real(e.at("inf")) << " at k = " << e.at("argmin")
         << "\n  window checks " << (e.at("pass").get<bool>() ? "pass" : "FAIL") << " ("
         << e.at("checked").get<long>() << " indices)\n";
    }
    if (verify->contains("crosscheck")) {
      const json& x = verify->at("crosscheck");
      os << "  observation crosscheck " << (x.at("pass").get<bool>() ? "pass" : "FAIL") << ": "
         << x.at("message").get<std::string>() << "\n";
    }
    if (verify->contains("badness")) {
      const json& b = verify->at("badness");
      os << "  badness inf " << fmt(b.at("inf").get<double>()) << " over |q| <= " << b.at("q_max")
         << "\n";
    }
    if (verify->contains("continued_fraction")) {
      const json& cf = verify->at("continued_fraction");
      if (cf.contains("error")) os << "  continued fraction: " << cf.at("error").get<std::string>() << "\n";
      else
        os << "  max partial quotient " << cf.at("max_partial_quotient").get<std::string>()
           << " (limit " << fmt(cf.at("limit").get<double>()) << ") "
           << (cf.at("consistent").get<bool>() ? "consistent" : "INCONSISTENT") << "\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

struct Artifacts {
  std::optional<fs::path> dir;
  void write(const std::string& name, const json& j) const {
    if (dir) write_json_file((*dir / name).string(), j);
  }
};

Artifacts open_out(const json& c) {
  Artifacts a;
  if (c.contains("out")) {
    a.dir = fs::path(c.at("out").get<std::string>());
    fs::create_directories(*a.dir);
  }
  return a;
}

RunResult play_escape(const json& c, std::ostream& log) {
  LacunarySystem sys = system_from_json(c.at("system"));
  EscapeConfig ecfg;
  ecfg.beta = real_value(c, "beta", "0.25");
  if (c.contains("delta")) ecfg.delta = real_value(c, "delta", "1");
  EscapeStrategy alice(sys, ecfg);

  const std::uint64_t seed = seed_of(c);
  Vec center(sys.n, Real(3) / 10);
  Ball dflt(center, Real(1) / 1000);
  auto bob = make_bob(c, dflt, stream_seed(seed, "bob"));

  GameParams p;
  p.variant = Variant::kHyperplanePercentage;
  p.p = Rational(1, 2);
  p.beta = ecfg.beta;
  p.dim = sys.n;
  p.detect_no_legal_move = false;
  p.max_rounds = c.value("max_rounds", 400);
  const int stages = c.value("stages", 6);
  const Ball first = bob->first_ball(p);
  const Real gate = first_ball_gate_bound(alice.schedule(), alice.delta());
  // rho_1 is the first ball at or below the gate, never smaller than beta * gate.
  const Real rho1 = first.radius() < gate ? first.radius() : Real(ecfg.beta * gate);
  p.stop_radius = ipow(ecfg.beta, static_cast<long>(alice.schedule().r) * stages) * rho1;

  GameTranscript t = Referee(p).play(alice, *bob);
  log << "play-escape: " << outcome_name(t.outcome) << " after " << t.bob_moves() << " Bob moves, "
      << alice.certificates().size() << " stages certified\n";

  json stages_j = json::array();
  for (const StageCertificate& s : alice.certificates()) stages_j.push_back(certificate_to_json(s));
  json certs = {{"beta", real_to_json(ecfg.beta)},
                {"n", alice.schedule().n},
                {"r", alice.schedule().r},
                {"t1", real_to_json(alice.schedule().t1)},
                {"q_used", real_to_json(alice.q_used())},
                {"delta", real_to_json(alice.delta())},
                {"c", real_to_json(alice.c())},
                {"rho1", real_to_json(alice.rho1())},
                {"gated", alice.gated()},
                {"stages", stages_j},
                {"log", alice.log()}};
  json cfg = c;
  cfg["seed"] = seed;
  json tj = transcript_to_json(t);
  Artifacts out = open_out(c);
  out.write("config.json", cfg);
  out.write("transcript.json", tj);
  out.write("certificates.json", certs);
  std::string report = build_report(cfg, certs, nullptr);
  if (out.dir) write_text(*out.dir / "report.txt", report);

  RunResult r;
  r.summary = {{"outcome", outcome_name(t.outcome)},
               {"bob_moves", t.bob_moves()},
               {"stages_certified", alice.certificates().size()},
               {"c", real_to_json(alice.c())}};
  if (!t.diagnostic.empty()) r.summary["diagnostic"] = t.diagnostic;
  r.status = t.outcome == Outcome::kStopped ? 0 : 3;
  return r;
}

json event_to_json(const PhaseEvent& e) {
  json j = {{"phase", phase_name(e.phase)},
            {"index", e.index},
            {"bob_move", e.bob_move},
            {"radius", real_to_json(e.radius)},
            {"certificate", certificate_to_json(e.certificate)},
            {"s_size", e.s_size},
            {"span_dim", e.span_dim},
            {"diagnostic", e.diagnostic}};
  if (e.blocking) j["blocking_margin"] = real_to_json(*e.blocking);
  if (e.game) {
    json levels = json::array();
    for (const LevelReport& l : e.game->levels()) levels.push_back(level_to_json(l));
    j["finite_game"] = {{"family", e.game->system().family() == MinorFamily::kColumns ? "columns" : "rows"},
                        {"compressed", e.game->compressed()},
                        {"schedule", schedule_to_json(e.game->schedule())},
                        {"levels", levels}};
  }
  return j;
}

RunResult play_bad0(const json& c, std::ostream& log) {
  const int m = c.value("m", 1), n = c.value("n", 1);
  const std::uint64_t seed = seed_of(c);
  Bad0Config cfg;
  cfg.beta = real_value(c, "beta", "0.25");
  const int i_max = c.value("i_max", 4);
  if (!c.contains("r") || (c.at("r").is_string() && c.at("r").get<std::string>() == "auto")) {
    cfg.r = choose_default_r(m, n, cfg.beta, stream_seed(seed, "default-r"));
    log << "play-bad0: default R = " << to_string(cfg.r) << "\n";
  } else {
    cfg.r = real_value(c, "r", "4");
  }
  if (c.contains("budget")) cfg.budget.max_vectors = c.at("budget").get<long>();
  cfg.grid.divisor = c.value("grid_divisor", 8);

  std::mt19937_64 first_rng(stream_seed(seed, "first-ball"));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec center(m * n);
  for (Real& x : center) x = u(first_rng);
  auto bob = make_bob(c, Ball(center, Real(3) / 10), stream_seed(seed, "bob"));

  Bad0Run run = play_bad0(m, n, cfg, *bob, i_max);
  const Bad0Strategy& s = *run.strategy;
  log << "play-bad0: " << outcome_name(run.transcript.outcome) << " after "
      << run.transcript.bob_moves() << " Bob moves, " << s.events().size() << " phases\n";

  json events = json::array();
  for (const PhaseEvent& e : s.events()) events.push_back(event_to_json(e));
  const WindowParams& w = *s.window();
  json certs = {{"window",
                 {{"m", m},
                  {"n", n},
                  {"r", real_to_json(w.r)},
                  {"sigma", real_to_json(w.sigma)},
                  {"rho", real_to_json(w.rho)},
                  {"beta", real_to_json(cfg.beta)}}},
                {"i_max", i_max},
                {"observation_constant", real_to_json(w.observation_constant())},
                {"events", events},
                {"diagnostics", s.diagnostics()},
                {"gate_failures", s.gate_failures()}};
  json cfg_out = c;
  cfg_out["seed"] = seed;
  cfg_out["r"] = real_to_json(cfg.r);
  Artifacts out = open_out(c);
  out.write("config.json", cfg_out);
  out.write("transcript.json", transcript_to_json(run.transcript));
  out.write("certificates.json", certs);
  std::string report = build_report(cfg_out, certs, nullptr);
  if (out.dir) write_text(*out.dir / "report.txt", report);

  RunResult r;
  r.summary = {{"outcome", outcome_name(run.transcript.outcome)},
               {"bob_moves", run.transcript.bob_moves()},
               {"phases", s.events().size()},
               {"witness_free", run.witness_free()},
               {"diagnostics", s.diagnostics().size()}};
  r.status = run.transcript.outcome == Outcome::kStopped ? 0 : 3;
  return r;
}

RunResult validate_system(const json& c, std::ostream& log) {
  LacunarySystem sys = system_from_json(c.at("system"));
  int k = c.value("indices", 32);
  if (sys.last_index >= 0) k = static_cast<int>(std::min<long>(k, sys.last_index - sys.first_index + 1));
  LacunarityReport lac = check_lacunary(sys, k);
  Ball probe(Vec(sys.m), Real(2));
  if (c.contains("probe")) {
    const json& p = c.at("probe");
    probe = Ball(p.contains("center") ? vec_from_json(p.at("center")) : Vec(sys.m),
                 real_value(p, "radius", "2"));
  }
  Real sep = check_uniformly_discrete(sys, k, probe, tolerance());
  Real beta = real_value(c, "beta", "0.25");
  Real q = sys.lacunarity_floor ? *sys.lacunarity_floor : lac.q;
  NR nr = compute_n_r(beta, q);
  log << "validate-system: lacunary with Q = " << fmt(lac.q) << ", separation " << fmt(sep) << "\n";
  RunResult r;
  r.summary = {{"lacunarity_q", real_to_json(lac.q)},
               {"argmin", lac.argmin},
               {"q_used", real_to_json(q)},
               {"separation", real_to_json(sep)},
               {"n", nr.n},
               {"r", nr.r},
               {"indices", k}};
  Artifacts out = open_out(c);
  out.write("config.json", c);
  out.write("system_report.json", r.summary);
  return r;
}

RunResult fractal(const json& c, std::ostream& log) {
  const Ifs ifs = ifs_from_json(c.value("ifs", json("example34")));
  const int depth = c.value("depth", 8);
  std::vector<Point> k = limit_set_sample(ifs, depth, fixed_point(ifs.maps.front()));
  const double resolution = std::pow(ifs.max_ratio(), depth);
  OpenSetReport osc = check_open_set_condition(ifs);

  json bs = c.value("box_scales", json::object());
  const double hi = bs.value("hi", 0.3);
  const double lo = bs.value("lo", std::max(hi / 1000, 4 * resolution));
  AhlforsEstimate est = box_count_dimension(k, geometric_scales(hi, lo, bs.value("per_decade", 4)));

  RunResult r;
  r.summary = {{"ifs", ifs_to_json(ifs)},
               {"depth", depth},
               {"points", k.size()},
               {"resolution", resolution},
               {"similarity_dimension", ifs.similarity_dimension()},
               {"open_set_condition", {{"ok", osc.ok}, {"samples", osc.samples}, {"witness", osc.witness}}},
               {"affine_hull_dim", affine_hull_dim(k)},
               {"box_dimension",
                {{"exponent", est.exponent},
                 {"c1", est.c1},
                 {"c2", est.c2},
                 {"residual", est.residual},
                 {"warning", est.warning},
                 {"scales", est.scales},
                 {"counts", est.counts}}}};
  if (ifs.name == "example34") {
    Example34 e = example34_build(depth);
    std::mt19937_64 rng(stream_seed(seed_of(c), "bilipschitz"));
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    double lo_r = INFINITY, hi_r = 0;
    for (int i = 0; i < 10000; ++i) {
      Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
      Point fa = e.phi(a), fb = e.phi(b);
      double d = std::hypot(a[0] - b[0], a[1] - b[1]);
      if (d == 0) continue;
      double ratio = std::hypot(fa[0] - fb[0], fa[1] - fb[1]) / d;
      lo_r = std::min(lo_r, ratio);
      hi_r = std::max(hi_r, ratio);
    }
    r.summary["example34"] = {{"max_chord_slope", max_chord_slope(e.k)},
                              {"bilipschitz_min", lo_r},
                              {"bilipschitz_max", hi_r}};
  }
  if (c.contains("diffuseness")) {
    const json& d = c.at("diffuseness");
    DiffusenessReport rep = diffuseness_test(k, d.value("beta", 0.1), d.value("rho_min", 0.01),
                                             d.value("rho_k", 0.1), resolution,
                                             d.value("trials", 200L),
                                             stream_seed(seed_of(c), "diffuseness"));
    r.summary["diffuseness"] = {{"beta", rep.beta},           {"rho_min", rep.rho_min},
                                {"rho_k", rep.rho_k},         {"trials", rep.trials},
                                {"planes", rep.planes_tested}, {"passed", rep.passed},
                                {"inconclusive", rep.inconclusive},
                                {"witnesses", rep.witnesses.size()}};
  }
  log << "fractal: " << k.size() << " points, box dimension " << fmt(est.exponent) << "\n";
  Artifacts out = open_out(c);
  out.write("config.json", c);
  out.write("fractal.json", r.summary);
  if (c.value("emit_points", false)) {
    std::ostringstream os;
    os.precision(17);
    for (const Point& p : k) {
      for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
      os << "\n";
    }
    if (out.dir) write_text(*out.dir / "points.csv", os.str());
    else r.summary["points_csv"] = os.str();
  }
  return r;
}

std::vector<NoSolutionCertificate> certificates_from_json(const json& events) {
  std::vector<NoSolutionCertificate> out;
  for (const json& e : events) {
    const json& c = e.at("certificate");
    NoSolutionCertificate nc;
    nc.phase = c.at("phase").get<std::string>() == "X" ? Phase::kX : Phase::kY;
    nc.index = c.at("index").get<int>();
    nc.ball_id = c.at("ball_id").get<int>();
    nc.norm_bound = real_from_json(c.at("norm_bound"));
    nc.value_bound = real_from_json(c.at("value_bound"));
    if (!c.at("margin").is_null()) nc.margin = real_from_json(c.at("margin"));
    nc.enumerated = c.at("enumerated").get<long>();
    nc.complete = c.at("complete").get<bool>();
    if (c.contains("witness")) nc.witness = c.at("witness").get<IntVec>();
    out.push_back(std::move(nc));
  }
  return out;
}

RunResult verify(const json& c, std::ostream& log) {
  const fs::path tpath = c.at("transcript").get<std::string>();
  const fs::path dir = tpath.parent_path().empty() ? fs::path(".") : tpath.parent_path();
  const json config = read_json_file((dir / "config.json").string());
  const json certs = read_json_file((dir / "certificates.json").string());
  GameTranscript t = transcript_from_json(read_json_file(tpath.string()));
  if (t.bob_moves() == 0) throw Error("InvalidTranscript", "transcript has no Bob move");
  const Ball final_ball = t.final_ball ? *t.final_ball : t.current_ball();
  const long qmax = c.value("qmax", 10000L);
  json result = {{"transcript", tpath.filename().string()},
                 {"final_radius", real_to_json(final_ball.radius())}};
  std::vector<std::string> referee = Referee(t.params).revalidate(t);
  result["referee_discrepancies"] = referee;
  bool pass = referee.empty();
  std::string csv;

  const std::string game = config.value("command", "");
  if (game == "play-escape") {
    LacunarySystem sys = system_from_json(config.at("system"));
    const Real cth = real_from_json(certs.at("c"));
    const Vec& x = final_ball.center();
    bool ok = true;
    long checked = 0;
    json per = json::array();
    long kmax = sys.first_index;
    for (const json& s : certs.at("stages"))
      for (const json& kj : s.at("indices")) {
        const long k = kj.get<long>();
        kmax = std::max(kmax, k);
        const Real d = escape_distance(x, sys, k);
        const Real need = cth - index_data(sys, k).t * final_ball.radius();
        const bool good = d >= need;
        ok &= good;
        ++checked;
        per.push_back({{"k", k}, {"distance", real_to_json(d)}, {"required", real_to_json(need)}, {"ok", good}});
      }
    EscapeInf e = escape_inf(x, sys, static_cast<int>(kmax - sys.first_index + 1));
    result["escape"] = {{"inf", real_to_json(e.value)}, {"argmin", e.argmin}, {"checked", checked},
                        {"pass", ok && checked > 0}, {"per_index", per}};
    pass &= ok && checked > 0;
    std::ostringstream os;
    os << "k,distance,required,ok\n";
    for (const json& p : per)
      os << p.at("k").get<long>() << "," << p.at("distance").get<std::string>() << ","
         << p.at("required").get<std::string>() << "," << (p.at("ok").get<bool>() ? 1 : 0) << "\n";
    csv = os.str();
  } else if (game == "play-bad0") {
    const json& w = certs.at("window");
    const int m = w.at("m").get<int>(), n = w.at("n").get<int>();
    WindowParams wp(m, n, real_from_json(w.at("r")), real_from_json(w.at("sigma")),
                    real_from_json(w.at("rho")));
    LinearFormsPoint a(m, n, final_ball.center());
    CrosscheckReport x =
        crosscheck_observation51(a, wp, certs.at("i_max").get<int>(), certificates_from_json(certs.at("events")));
    result["crosscheck"] = crosscheck_to_json(x);
    pass &= x.pass;
    // Keep the brute-force box within a fixed budget in higher dimensions.
    long q = qmax;
    while (q > 1 && std::pow(2.0 * q + 1, n) > 2e8) q /= 2;
    BadnessReport b = badness_inf(to_dmat(a), std::vector<double>(m, 0.0), q);
    result["badness"] = badness_to_json(b);
    csv = windows_csv(b);
    if (m == 1 && n == 1) {
      try {
        ContinuedFraction cf = continued_fraction(a(0, 0), c.value("cf_depth", 40));
        // a_{k+1} < 1 / (q_k |q_k alpha|) for every convergent with q_k <= Q.
        BigInt worst = 0;
        for (std::size_t i = 0; i + 1 < cf.digits.size(); ++i)
          if (cf.q[i] <= q) worst = std::max(worst, cf.digits[i + 1]);
        const double limit = b.inf > 0 ? 1 / b.inf + 2 : INFINITY;
        const bool consistent = worst.convert_to<double>() <= limit;
        json digits = json::array();
        for (const BigInt& d : cf.digits) digits.push_back(d.str());
        result["continued_fraction"] = {{"digits", digits},
                                        {"max_partial_quotient", worst.str()},
                                        {"limit", limit},
                                        {"consistent", consistent}};
        pass &= consistent;
      } catch (const PrecisionExhausted& e) {
        result["continued_fraction"] = {{"error", e.what()}};
      }
    }
  } else {
    throw Error("InvalidTranscript", "config.json next to the transcript names no playable command");
  }
  result["pass"] = pass;
  const fs::path out = c.contains("out") ? fs::path(c.at("out").get<std::string>()) : dir;
  fs::create_directories(out);
  write_json_file((out / "verify.json").string(), result);
  write_text(out / "verify.csv", csv);
  log << "verify: " << (pass ? "pass" : "FAIL") << "\n";
  RunResult r;
  r.summary = result;
  r.status = pass ? 0 : 4;
  return r;
}

RunResult report(const json& c, std::ostream& log) {
  const fs::path dir = c.at("dir").get<std::string>();
  const json config = read_json_file((dir / "config.json").string());
  const json certs = read_json_file((dir / "certificates.json").string());
  std::optional<json> ver;
  if (fs::exists(dir / "verify.json")) ver = read_json_file((dir / "verify.json").string());
  std::string text = build_report(config, certs, ver ? &*ver : nullptr);
  write_text(dir / "report.txt", text);
  log << text;
  RunResult r;
  r.summary = {{"report", (dir / "report.txt").string()}};
  return r;
}

}  // namespace

RunResult run(const json& config, std::ostream& log) {
  validate_config(config);
  init_precision_from_env(config.value("precision_bits", kDefaultPrecisionBits));
  const std::string cmd = config.at("command").get<std::string>();
  if (cmd == "play-escape") return play_escape(config, log);
  if (cmd == "play-bad0") return play_bad0(config, log);
  if (cmd == "validate-system") return validate_system(config, log);
  if (cmd == "fractal") return fractal(config, log);
  if (cmd == "verify") return verify(config, log);
  return report(config, log);
}

RunResult run_guarded(const json& config, std::ostream& log) {
  try {
    return run(config, log);
  } catch (const Error& e) {
    return {2, error_object(e.code(), e.what())};
  } catch (const json::exception& e) {
    return {2, error_object("SchemaError", e.what())};
  } catch (const fs::filesystem_error& e) {
    return {2, error_object("IoError", e.what())};
  }
}

}  // namespace sgame::cli
