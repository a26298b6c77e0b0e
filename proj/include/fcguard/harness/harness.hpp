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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fcguard/parties/simulation.hpp"

namespace fcguard::harness {

using crypto::json;
using parties::KeyMaterial;
using parties::Mode;
using parties::PropertyResult;
using parties::Scenario;

// --- scenarios --------------------------------------------------------------

// Reads and validates a scenario file. Syntax errors carry file:line:column.
Scenario load_scenario(const std::filesystem::path& path);

// Evaluates the scenario's "expect" block against a finished run.
std::vector<PropertyResult> check_expectations(const parties::Simulation& sim,
                                               const parties::SimulationReport& report,
                                               const json& expect);

struct ScenarioRun {
  parties::SimulationReport report;
  std::vector<PropertyResult> expectations;
  std::string event_log;
  std::string chain_log;
  bool ok() const;
  // One line per property and expectation.
  std::string summary() const;
};

ScenarioRun run_scenario(const Scenario& scenario, const KeyMaterial* keys);

// Seeded end-to-end scenario with `users` customers across two banks and
// `orders` orders. Self-reports are mixed.
Scenario random_scenario(std::uint64_t seed, Mode mode, std::size_t users, std::size_t orders);

// --- benchmark --------------------------------------------------------------

inline const std::vector<std::string>& bench_phases() {
  static const std::vector<std::string> kPhases{"registration",  "identity_verification",
                                                "bank_interaction", "bank_transfer",
                                                "crypto_transfer", "audit"};
  return kPhases;
}

struct PhaseStats {
  std::string phase;
  double median_ms = 0;            // measured + modeled
  double median_measured_ms = 0;
  double modeled_ms = 0;
  std::uint64_t modexp = 0;        // summed over iterations
  std::vector<double> samples_ms;
};

struct ModeReport {
  Mode mode = Mode::kFcGuard;
  std::vector<PhaseStats> phases;
  const PhaseStats& phase(std::string_view name) const;
};

struct BenchmarkReport {
  crypto::Profile profile = crypto::Profile::kToy;
  unsigned iterations = 0;
  std::uint64_t seed = 0;
  std::string hardware;
  ModeReport fcguard;
  ModeReport baseline;

  double identity_ratio() const;
  // |fc - base| / max(fc, base) for bank_transfer + crypto_transfer.
  double transfer_gap() const;
  json to_json() const;
  std::string table() const;
};

// Reference figures for side-by-side printing (ms); nullopt where none exists.
std::optional<double> reference_ms(Mode mode, std::string_view phase);

BenchmarkReport run_bench(crypto::Profile profile, unsigned iterations, std::uint64_t seed,
                          const KeyMaterial* keys);

std::string hardware_note();

// --- security suite ---------------------------------------------------------

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t scenarios = 20;
  // Negative control: run the platform-blindness scan against baseline mode.
  bool baseline_blindness = false;
};

struct SuiteLine {
  std::string property;
  bool pass = false;
  std::size_t cases = 0;
  std::string detail;
};

std::vector<SuiteLine> run_security_suite(const SuiteOptions& options);

// Tamper cases: every integer field of every artifact kind, plus splices.
struct MutationResult {
  std::size_t cases = 0;
  std::size_t false_accepts = 0;
  std::vector<std::string> accepted;  // names of tamper cases that slipped through
  std::map<std::string, std::size_t> per_family;
};
MutationResult run_mutation_matrix(std::uint64_t seed);

struct UnlinkabilityResult {
  std::size_t presentations = 0;
  std::size_t shared_presentation_values = 0;
  std::size_t encryptions = 0;
  std::size_t repeated_ciphertexts = 0;
};
UnlinkabilityResult run_unlinkability(std::uint64_t seed, std::size_t count = 100);

struct AuditBranchResult {
  std::size_t users = 0;
  std::size_t compliant = 0;
  std::uint64_t decryptions_for_compliant = 0;
  std::size_t deanonymized_correct = 0;
};
AuditBranchResult run_audit_branches(std::uint64_t seed, std::size_t users = 10);

struct HygieneResult {
  std::size_t orders = 0;
  std::size_t address_repeats = 0;
  std::size_t pool_addresses = 0;
  std::size_t transfers = 0;
  std::size_t delays_out_of_range = 0;
  std::size_t epochs = 0;
};
HygieneResult run_hygiene_batch(std::uint64_t seed, std::size_t orders = 20,
                                std::uint32_t epoch = 5, std::size_t addresses = 3);

}  // namespace fcguard::harness
