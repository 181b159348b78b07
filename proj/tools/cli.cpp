// Copyright 2026 The nlg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "nlg/errors.hpp"
#include "nlg/games.hpp"
#include "nlg/inequality_suite.hpp"
#include "nlg/json_io.hpp"
#include "nlg/protocol_sim.hpp"
#include "nlg/sic.hpp"

namespace nlg::cli {
namespace fs = std::filesystem;

namespace {

struct Invocation {
  std::string command;
  Json config;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out_root = "out";
  std::string output_file;  // repeat: extra copy of the game
};

struct Result {
  Json report;
  std::string csv;
  int exit_code = 0;
};

std::string utc_stamp(std::chrono::system_clock::time_point t, const char* fmt) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, fmt, &tm);
  return buf;
}

fs::path make_run_dir(const std::string& root, const std::string& command, std::uint64_t seed,
                      std::chrono::system_clock::time_point now) {
  const fs::path base = fs::path(root) / command;
  const std::string stem = utc_stamp(now, "%Y%m%dT%H%M%SZ") + "-" + std::to_string(seed);
  fs::path dir = base / stem;
  for (int i = 2; fs::exists(dir); ++i) dir = base / (stem + "." + std::to_string(i));
  fs::create_directories(dir);
  return dir;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (std::uint64_t(rd()) << 32) ^ rd();
}

Json int_list(const std::vector<std::size_t>& v) { return Json(v); }

// ---------------------------------------------------------------------------
// Commands. Each reads only `config` (plus jobs and the run directory).

Result exec_value(const Json& cfg, unsigned jobs, std::ostream& out) {
  const Game g = game_from_json(cfg.at("game"));
  const std::string mode = cfg.at("mode");
  Result r;
  r.report["game"] = g.name();
  r.report["k"] = g.k();
  r.report["l"] = g.l();
  r.report["mode"] = mode;
  if (mode == "classical") {
    const auto v = classical_value(g);
    r.report["value"] = v.value;
    r.report["witness"] = {{"alice", int_list(v.witness.alice)}, {"bob", int_list(v.witness.bob)}};
    out << "value " << fmt(v.value) << "\n";
    out << "witness alice=" << r.report["witness"]["alice"].dump()
        << " bob=" << r.report["witness"]["bob"].dump() << "\n";
    return r;
  }
  SeesawOptions opt;
  opt.d = cfg.at("d");
  opt.restarts = cfg.at("restarts");
  opt.iters = cfg.at("iters");
  opt.seed = cfg.at("seed");
  opt.jobs = jobs;
  const auto res = entangled_value_seesaw(g, opt);
  r.report["value"] = res.value;
  r.report["d"] = opt.d;
  r.report["best_restart"] = res.best_restart;
  r.report["from_d1"] = res.from_d1;
  r.report["d1_value"] = res.d1_value;
  const auto schmidt = schmidt_decompose(res.strategy.state, std::vector<std::string>{"A"});
  r.report["schmidt_coefficients"] = schmidt.coefficients;
  Json traces = Json::array();
  std::ostringstream csv;
  csv << std::setprecision(17) << "restart,initial,final,iterations,stalled,worst_decrease\n";
  out << "value " << fmt(res.value) << " (d=" << opt.d << ", best restart " << res.best_restart
      << (res.from_d1 ? ", embedded d=1" : "") << ")\n";
  out << "restart initial final iterations stalled\n";
  for (const auto& t : res.restarts) {
    traces.push_back({{"restart", t.restart},
                      {"initial", t.initial},
                      {"final", t.final},
                      {"iterations", t.iterations},
                      {"stalled", t.stalled},
                      {"worst_decrease", t.worst_decrease}});
    csv << t.restart << ',' << t.initial << ',' << t.final << ',' << t.iterations << ','
        << (t.stalled ? 1 : 0) << ',' << t.worst_decrease << '\n';
    out << t.restart << ' ' << fmt(t.initial) << ' ' << fmt(t.final) << ' ' << t.iterations << ' '
        << (t.stalled ? "yes" : "no") << "\n";
  }
  r.report["restarts"] = std::move(traces);
  r.report["history"] = res.history;
  r.csv = csv.str();
  return r;
}

Result exec_repeat(const Json& cfg, std::ostream& out) {
  const Game g = game_from_json(cfg.at("game"));
  const std::size_t n = cfg.at("n");
  Result r;
  r.report = cfg.contains("alpha") ? game_to_json(majority_game(g, n, cfg.at("alpha").get<double>()))
                                   : game_to_json(repeat(g, n));
  out << "game k=" << r.report["k"] << " l=" << r.report["l"] << "\n";
  return r;
}

Result exec_verify(const Json& cfg, unsigned jobs, const fs::path& dir, std::ostream& out) {
  const auto reports = run_all(cfg.at("seed"), cfg.at("trials"), cfg.at("filter"), jobs, dir.string());
  Result r;
  r.report = reports_to_json(reports);
  r.csv = reports_to_csv(reports);
  std::size_t bad = 0;
  for (const auto& c : reports) {
    out << std::left << std::setw(20) << c.name << " trials " << c.trials_run << " violations "
        << c.violations << " worst_margin " << fmt(c.worst_margin) << "  "
        << (c.violations == 0 ? "PASS" : "FAIL") << "\n";
    bad += c.violations > 0 ? 1 : 0;
  }
  out << (bad == 0 ? "all checks passed" : std::to_string(bad) + " check(s) violated") << "\n";
  r.exit_code = bad == 0 ? 0 : 1;
  return r;
}

Result exec_simulate(const Json& cfg, unsigned jobs, std::ostream& out) {
  const Json& doc = cfg.at("config");
  ProtocolConfig c = config_from_json(doc);
  c.jobs = jobs;
  if (!doc.contains("model")) throw InputError("config.model: required");
  const auto model = model_from_json(doc.at("model"), c.n);
  const auto stats = run_protocol(c, model);
  const auto g = guarantee_report(c, model, stats);
  Result r;
  r.report["config"] = config_to_json(c);
  r.report["model"] = model.to_json();
  r.report["stats"] = stats_to_json(stats);
  r.report["guarantee"] = guarantee_to_json(g);
  r.csv = stats_to_csv(c, stats, g);
  out << "variant " << to_string(c.variant) << " n " << c.n << " eps " << fmt(c.epsilon) << " t "
      << fmt(c.t) << " v " << stats.v_used << " trials " << c.trials << "\n";
  for (const auto* it : {&g.success, &g.most_win}) {
    out << it->name << ": ";
    if (it->estimate.defined) {
      out << fmt(it->estimate.value) << " [" << fmt(it->estimate.ci_lo) << ", "
          << fmt(it->estimate.ci_hi) << "]";
    } else {
      out << "undefined";
    }
    out << " target " << fmt(it->target) << " -> " << to_string(it->verdict) << "\n";
  }
  if (c.variant == Variant::projection && stats.mismatch_accept.defined) {
    out << "mismatch_accept: " << fmt(stats.mismatch_accept.value) << " ["
        << fmt(stats.mismatch_accept.ci_lo) << ", " << fmt(stats.mismatch_accept.ci_hi)
        << "] bound 2^-" << stats.hash_bits << "\n";
  }
  for (const auto& n : g.notes) out << "note: " << n << "\n";
  out << "verdict " << to_string(g.overall) << "\n";
  r.exit_code = g.overall == Verdict::violated ? 1 : 0;
  return r;
}

Result exec_sic(const Json& cfg, std::ostream& out) {
  const auto s = superposed_from_json(cfg.at("spec"));
  const auto t = sic_objective(s);
  Result r;
  r.report["k"] = s.k;
  r.report["objective"] = {{"i_x_by", t.i_x_by}, {"i_y_xa", t.i_y_xa}, {"total", t.total()}};
  out << "I(X:BY) " << fmt(t.i_x_by) << "\nI(Y:XA) " << fmt(t.i_y_xa) << "\nobjective "
      << fmt(t.total()) << "\n";
  if (cfg.value("decouple", false)) {
    const auto d = build_decoupling(s);
    r.report["decoupling"] = {{"delta_alice", d.delta_alice},
                              {"delta_bob", d.delta_bob},
                              {"delta", d.delta},
                              {"fbar_alice", d.fbar_alice},
                              {"fbar_bob", d.fbar_bob},
                              {"fbar_out", d.fbar_out},
                              {"fbar_x_rest", d.fbar_x_rest},
                              {"alice_within_bound", d.alice_within_bound()},
                              {"bob_within_bound", d.bob_within_bound()},
                              {"combined_within_bound", d.combined_within_bound()}};
    out << "alice    fbar " << fmt(d.fbar_alice) << " <= 9*delta " << fmt(9 * d.delta_alice) << " "
        << (d.alice_within_bound() ? "ok" : "FAIL") << "\n";
    out << "bob      fbar " << fmt(d.fbar_bob) << " <= 9*delta " << fmt(9 * d.delta_bob) << " "
        << (d.bob_within_bound() ? "ok" : "FAIL") << "\n";
    out << "combined fbar " << fmt(d.fbar_out) << " <= 81*delta " << fmt(81 * d.delta) << " "
        << (d.combined_within_bound() ? "ok" : "FAIL") << "\n";
    const bool ok = d.alice_within_bound() && d.bob_within_bound() && d.combined_within_bound();
    r.exit_code = ok ? 0 : 1;
  }
  return r;
}

Result execute(const std::string& command, const Json& cfg, unsigned jobs, const fs::path& dir,
               std::ostream& out) {
  if (command == "value") return exec_value(cfg, jobs, out);
  if (command == "repeat") return exec_repeat(cfg, out);
  if (command == "verify") return exec_verify(cfg, jobs, dir, out);
  if (command == "simulate") return exec_simulate(cfg, jobs, out);
  if (command == "sic") return exec_sic(cfg, out);
  throw InputError("unknown command '" + command + "'");
}

// Runs an invocation and writes its artifacts. Returns the run directory.
int perform(const Invocation& inv, std::ostream& out, fs::path* run_dir = nullptr) {
  const auto start = std::chrono::system_clock::now();
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir = make_run_dir(inv.out_root, inv.command, inv.seed, start);
  if (run_dir) *run_dir = dir;
  const Result r = execute(inv.command, inv.config, inv.jobs, dir, out);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_text_file((dir / "report.json").string(), dump_json(r.report));
  Json outputs = {{"report", "report.json"}};
  if (!r.csv.empty()) {
    write_text_file((dir / "report.csv").string(), r.csv);
    outputs["csv"] = "report.csv";
  }
  if (!inv.output_file.empty()) {
    write_text_file(inv.output_file, dump_json(r.report));
    outputs["output"] = fs::absolute(inv.output_file).string();
  }
  Json manifest;
  manifest["command"] = inv.command;
  manifest["tool_version"] = kToolVersion;
  manifest["seed"] = inv.seed;
  manifest["jobs"] = inv.jobs;
  manifest["config"] = inv.config;
  manifest["started_at"] = utc_stamp(start, "%Y-%m-%dT%H:%M:%SZ");
  manifest["wall_time_s"] = wall;
  manifest["exit_code"] = r.exit_code;
  manifest["outputs"] = outputs;
  write_text_file((dir / "manifest.json").string(), dump_json(manifest));
  out << "run directory " << dir.string() << "\n";
  return r.exit_code;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int rerun(const std::string& target, const std::string& out_root, unsigned jobs, std::ostream& out) {
  fs::path manifest_path = target;
  if (fs::is_directory(manifest_path)) manifest_path /= "manifest.json";
  const Json m = read_json_file(manifest_path.string());
  for (const char* f : {"command", "config", "seed"}) {
    if (!m.contains(f)) throw InputError(manifest_path.string() + ": missing field '" + f + "'");
  }
  Invocation inv;
  inv.command = m["command"].get<std::string>();
  inv.config = m["config"];
  inv.seed = m["seed"].get<std::uint64_t>();
  inv.jobs = jobs;
  inv.out_root = out_root.empty() ? manifest_path.parent_path().parent_path().parent_path().string()
                                  : out_root;
  fs::path dir;
  const int code = perform(inv, out, &dir);
  const fs::path original = manifest_path.parent_path() / "report.json";
  if (!fs::exists(original)) {
    out << "original report missing; nothing to compare\n";
    return code;
  }
  const bool same = read_text(original) == read_text(dir / "report.json");
  out << "report.json " << (same ? "identical" : "DIFFERS") << " to " << original.string() << "\n";
  return same ? code : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlocal game values, information inequalities and protocol simulation", "nlg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Invocation inv;
  std::optional<std::uint64_t> seed;
  std::string path, mode = "classical";
  SeesawOptions so;
  std::size_t trials = 10000, n = 1;
  std::optional<double> alpha;
  std::string filter;
  bool decouple = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", inv.out_root, "Output root directory")->capture_default_str();
    sub->add_option("--jobs", inv.jobs, "Parallel tasks (results do not depend on it)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  auto* value = app.add_subcommand("value", "Classical or entangled value of a game");
  value->add_option("game", path, "Game JSON file")->required();
  value->add_option("--mode", mode, "classical or entangled")
      ->check(CLI::IsMember({"classical", "entangled"}))
      ->capture_default_str();
  value->add_option("--d", so.d, "Local dimension")->check(CLI::PositiveNumber)->capture_default_str();
  value->add_option("--restarts", so.restarts, "See-saw restarts")->check(CLI::PositiveNumber)->capture_default_str();
  value->add_option("--iters", so.iters, "See-saw iterations per restart")->check(CLI::PositiveNumber)->capture_default_str();
  value->add_option("--seed", seed, "Seed (generated and recorded when omitted)");
  common(value);

  auto* rep = app.add_subcommand("repeat", "Parallel repetition or majority game");
  rep->add_option("game", path, "Game JSON file")->required();
  rep->add_option("--n", n, "Rounds")->required()->check(CLI::PositiveNumber);
  rep->add_option("--alpha", alpha, "Majority fraction in [0, 1]")->check(CLI::Range(0.0, 1.0));
  rep->add_option("--output", inv.output_file, "Also write the game JSON here");
  common(rep);

  auto* ver = app.add_subcommand("verify", "Run the inequality suite");
  ver->add_option("--seed", seed, "Seed (generated and recorded when omitted)");
  ver->add_option("--trials", trials, "Trials per check")->check(CLI::PositiveNumber)->capture_default_str();
  ver->add_option("--filter", filter, "Check name glob");
  common(ver);

  auto* sim = app.add_subcommand("simulate", "Simulate the sampling audit protocol");
  sim->add_option("config", path, "Protocol config JSON file")->required();
  sim->add_option("--seed", seed, "Overrides the config seed");
  common(sim);

  auto* sic = app.add_subcommand("sic", "SIC objective of a superposed state");
  sic->add_option("spec", path, "Superposed-state spec JSON file")->required();
  sic->add_flag("--decouple", decouple, "Also build the decoupling isometries and check the bounds");
  common(sic);

  auto* re = app.add_subcommand("rerun", "Re-execute a manifest and compare report.json");
  re->add_option("manifest", path, "manifest.json or its run directory")->required();
  std::string re_out;
  re->add_option("--out", re_out, "Output root (default: the manifest's root)");
  re->add_option("--jobs", inv.jobs, "Parallel tasks")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (re->parsed()) return rerun(path, re_out, inv.jobs, out);
    auto pick_seed = [&] { return seed ? *seed : fresh_seed(); };
    if (value->parsed()) {
      inv.command = "value";
      inv.config["game_path"] = path;
      inv.config["game"] = game_to_json(game_from_json(read_json_file(path)));
      inv.config["mode"] = mode;
      if (mode == "entangled") {
        inv.seed = pick_seed();
        inv.config["d"] = so.d;
        inv.config["restarts"] = so.restarts;
        inv.config["iters"] = so.iters;
        inv.config["seed"] = inv.seed;
      }
    } else if (rep->parsed()) {
      inv.command = "repeat";
      inv.config["game_path"] = path;
      inv.config["game"] = game_to_json(game_from_json(read_json_file(path)));
      inv.config["n"] = n;
      if (alpha) inv.config["alpha"] = *alpha;
    } else if (ver->parsed()) {
      inv.command = "verify";
      inv.seed = pick_seed();
      inv.config["seed"] = inv.seed;
      inv.config["trials"] = trials;
      inv.config["filter"] = filter;
    } else if (sim->parsed()) {
      inv.command = "simulate";
      Json doc = read_json_file(path);
      if (seed) doc["seed"] = *seed;
      ProtocolConfig c = config_from_json(doc);
      if (!doc.contains("seed")) doc["seed"] = c.seed;
      inv.seed = c.seed;
      inv.config["config_path"] = path;
      inv.config["config"] = doc;
    } else if (sic->parsed()) {
      inv.command = "sic";
      inv.config["spec_path"] = path;
      inv.config["spec"] = read_json_file(path);
      inv.config["decouple"] = decouple;
    }
    return perform(inv, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ConvergenceError& e) {
    err << "did not converge: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace nlg::cli
