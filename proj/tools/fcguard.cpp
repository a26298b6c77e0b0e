// Copyright 2026 The fcguard Authors.
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

// fcguard command-line driver: scenarios, benchmarks, security suite, keys, ledger dumps.
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "fcguard/error.hpp"
#include "fcguard/harness/harness.hpp"

namespace {

namespace fs = std::filesystem;
using namespace fcguard;
using crypto::json;

constexpr int kPass = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsage = 2;

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIo, "cannot write " + path.string());
  f << text;
}

struct Globals {
  std::uint64_t seed = 1;
  std::string profile;
  std::string out;
};

int cmd_scenario_run(const Globals& g, const std::string& file) {
  auto scenario = harness::load_scenario(file);
  if (!g.profile.empty()) scenario.profile = crypto::parse_profile(g.profile);
  auto run = harness::run_scenario(scenario, nullptr);
  std::cout << run.summary();
  if (!g.out.empty()) {
    fs::path dir(g.out);
    write_file(dir / "events.jsonl", run.event_log);
    write_file(dir / "chain.jsonl", run.chain_log);
    json report = run.report.to_json();
    json expectations = json::array();
    for (const auto& e : run.expectations) {
      expectations.push_back({{"name", e.name}, {"pass", e.pass}, {"detail", e.detail}});
    }
    report["expectations"] = expectations;
    write_file(dir / "report.json", report.dump(2) + "\n");
  }
  return run.ok() ? kPass : kPropertyFailure;
}

int cmd_bench(const Globals& g, unsigned iterations, const std::string& keys_path) {
  auto profile = crypto::parse_profile(g.profile.empty() ? "paper" : g.profile);
  std::optional<parties::KeyMaterial> keys;
  if (profile == crypto::Profile::kPaper) {
    keys = parties::load_key_material(keys_path);
  }
  auto report = harness::run_bench(profile, iterations, g.seed, keys ? &*keys : nullptr);
  std::cout << report.table();
  if (!g.out.empty()) write_file(g.out, report.to_json().dump(2) + "\n");
  return kPass;
}

int cmd_security(const Globals& g, std::size_t scenarios, bool baseline_blindness) {
  harness::SuiteOptions opt;
  opt.seed = g.seed;
  opt.scenarios = scenarios;
  opt.baseline_blindness = baseline_blindness;
  auto lines = harness::run_security_suite(opt);
  bool all = true;
  json out = json::array();
  for (const auto& l : lines) {
    std::cout << (l.pass ? "PASS " : "FAIL ") << l.property << " [" << l.cases << " cases] "
              << l.detail << "\n";
    all = all && l.pass;
    out.push_back({{"property", l.property}, {"pass", l.pass}, {"cases", l.cases}, {"detail", l.detail}});
  }
  if (!g.out.empty()) write_file(g.out, out.dump(2) + "\n");
  return all ? kPass : kPropertyFailure;
}

int cmd_keygen(const Globals& g, std::size_t count) {
  auto profile = crypto::parse_profile(g.profile.empty() ? "paper" : g.profile);
  auto start = std::chrono::steady_clock::now();
  auto keys = parties::generate_key_material(profile, count, g.seed);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string path = g.out.empty() ? "keys.json" : g.out;
  parties::save_key_material(path, keys);
  std::cerr << "wrote " << count << " issuer keys to " << path << " in " << secs << " s\n";
  return kPass;
}

int cmd_ledger_dump(const Globals& g, const std::string& file) {
  auto scenario = harness::load_scenario(file);
  if (!g.profile.empty()) scenario.profile = crypto::parse_profile(g.profile);
  auto run = harness::run_scenario(scenario, nullptr);
  if (g.out.empty()) {
    std::cout << run.chain_log;
  } else {
    write_file(g.out, run.chain_log);
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fcguard: privacy-preserving fiat-to-crypto exchange simulator"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--profile", g.profile, "Parameter profile")->check(CLI::IsMember({"toy", "paper"}));
  app.add_option("--out", g.out, "Output directory (scenario run) or file");

  auto* scenario = app.add_subcommand("scenario", "Scenario files");
  scenario->require_subcommand(1);
  std::string scenario_file;
  auto* scenario_run = scenario->add_subcommand("run", "Run a scenario file");
  scenario_run->add_option("file", scenario_file)->required()->check(CLI::ExistingFile);

  auto* bench = app.add_subcommand("bench", "Per-phase latency, fcguard vs baseline");
  unsigned iterations = 5;
  std::string keys_path = "data/paper_keys.json";
  bench->add_option("--iterations", iterations)->capture_default_str()->check(CLI::Range(5u, 1000u));
  bench->add_option("--keys", keys_path, "Issuer key file for profile 'paper'")->capture_default_str();

  auto* security = app.add_subcommand("security", "Security property suite");
  std::size_t scenarios = 20;
  bool baseline_blindness = false;
  security->add_option("--scenarios", scenarios)->capture_default_str();
  security->add_flag("--baseline-blindness", baseline_blindness,
                     "Run the platform-blindness scan against baseline mode");

  auto* keygen = app.add_subcommand("keygen", "Generate issuer keys (one platform + banks)");
  std::size_t key_count = 3;
  keygen->add_option("--count", key_count)->capture_default_str();

  auto* ledger = app.add_subcommand("ledger", "Ledger tools");
  ledger->require_subcommand(1);
  std::string ledger_file;
  auto* dump = ledger->add_subcommand("dump", "Run a scenario and print the chain as JSON lines");
  dump->add_option("file", ledger_file)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*scenario_run) return cmd_scenario_run(g, scenario_file);
    if (*bench) return cmd_bench(g, iterations, keys_path);
    if (*security) return cmd_security(g, scenarios, baseline_blindness);
    if (*keygen) return cmd_keygen(g, key_count);
    if (*dump) return cmd_ledger_dump(g, ledger_file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    bool usage = e.code() == ErrorCode::kParseError || e.code() == ErrorCode::kSchemaMismatch ||
                 e.code() == ErrorCode::kInvalidArgument || e.code() == ErrorCode::kIo;
    return usage ? kUsage : kPropertyFailure;
  }
  return kUsage;
}
