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

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cli.h"
#include "sgame/transcript_io.h"

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> precision;
  std::string out;
  std::string transcript;
  std::optional<long> qmax;
  std::string ifs;
  std::optional<int> depth;
  bool emit_points = false;
  std::string dir;
};

}  // namespace

int main(int argc, char** argv) {
  using nlohmann::json;
  CLI::App app{"Schmidt and hyperplane game engine"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&f](CLI::App* c, bool writes) {
    c->add_option("--config", f.config_path, "JSON config file");
    c->add_option("--precision", f.precision, "working precision in bits");
    if (writes) c->add_option("--out", f.out, "artifact directory");
  };
  CLI::App* esc = app.add_subcommand("play-escape", "escaping-set strategy vs a Bob strategy");
  CLI::App* bad = app.add_subcommand("play-bad0", "Bad_0(M, N) strategy vs a Bob strategy");
  CLI::App* val = app.add_subcommand("validate-system", "check a lacunary system");
  CLI::App* fra = app.add_subcommand("fractal", "limit set sampling and dimension estimates");
  CLI::App* ver = app.add_subcommand("verify", "independent checks of a played transcript");
  CLI::App* rep = app.add_subcommand("report", "human-readable summary of an artifact directory");
  for (CLI::App* c : {esc, bad, val, fra}) {
    common(c, true);
    c->add_option("--seed", f.seed, "run seed");
  }
  common(ver, true);
  ver->add_option("--transcript", f.transcript, "transcript.json of a play run");
  ver->add_option("--qmax", f.qmax, "brute-force bound on |q|");
  common(rep, false);
  rep->add_option("--dir", f.dir, "artifact directory");
  fra->add_option("--ifs", f.ifs, "builtin IFS name");
  fra->add_option("--depth", f.depth, "word length");
  fra->add_flag("--emit-points", f.emit_points, "write points.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  CLI::App* sub = app.get_subcommands().front();
  json config = json::object();
  try {
    if (!f.config_path.empty()) config = sgame::read_json_file(f.config_path);
  } catch (const std::exception& e) {
    std::cout << sgame::cli::error_object("IoError", e.what()).dump(2) << "\n";
    return 2;
  }
  if (!config.is_object()) {
    std::cout << sgame::cli::error_object("SchemaError", "config must be a JSON object").dump(2) << "\n";
    return 2;
  }
  config["command"] = sub->get_name();
  if (f.seed) config["seed"] = *f.seed;
  if (f.precision) config["precision_bits"] = *f.precision;
  if (!f.out.empty()) config["out"] = f.out;
  if (!f.transcript.empty()) config["transcript"] = f.transcript;
  if (f.qmax) config["qmax"] = *f.qmax;
  if (!f.ifs.empty()) config["ifs"] = f.ifs;
  if (f.depth) config["depth"] = *f.depth;
  if (f.emit_points) config["emit_points"] = true;
  if (!f.dir.empty()) config["dir"] = f.dir;

  sgame::cli::RunResult r = sgame::cli::run_guarded(config, std::cerr);
  std::cout << r.summary.dump(2) << "\n";
  return r.status;
}
