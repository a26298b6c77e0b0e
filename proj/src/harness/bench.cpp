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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "fcguard/error.hpp"
#include "fcguard/harness/harness.hpp"

namespace fcguard::harness {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

Scenario bench_scenario(Mode mode, unsigned iterations, std::uint64_t seed,
                        crypto::Profile profile) {
  Scenario s;
  s.name = "bench";
  s.seed = seed;
  s.profile = profile;
  s.mode = mode;
  constexpr std::int64_t kPlatformAccount = 90000000000000001;
  s.banks = {{"Bench Bank", {{kPlatformAccount, 100000001, 0, "platform"}}}};
  s.platform = {"Bench Bank", kPlatformAccount, 10'000'000};
  for (unsigned i = 0; i < iterations; ++i) {
    parties::UserSpec u;
    u.id = "user" + std::to_string(i);
    u.pii = {"Bench User " + std::to_string(i), 19800101 + 100 * (i % 12), 200000000 + i};
    u.bank = "Bench Bank";
    u.account = 10000000000000000 + i;
    // No self-report, so every audit takes the decryption branch.
    u.self_report = "none";
    s.banks[0].accounts.push_back({u.account, u.pii.ssn, 1'000'000, ""});
    s.users.push_back(u);
    parties::OrderSpec o;
    o.user = u.id;
    o.crypto_amount = 25;
    s.orders.push_back(o);
  }
  return s;
}

ModeReport bench_mode(Mode mode, unsigned iterations, std::uint64_t seed,
                      crypto::Profile profile, const KeyMaterial* keys) {
  auto scenario = bench_scenario(mode, iterations, seed, profile);
  parties::Simulation sim(scenario, keys);
  auto rep = sim.run();
  enforce(rep.ok(), ErrorCode::kStateViolation, "benchmark scenario violated a property");
  for (const auto& o : rep.orders) {
    enforce(o.state == "complete", ErrorCode::kStateViolation,
            "benchmark order ended " + o.state + " " + o.cause);
  }
  ModeReport out;
  out.mode = mode;
  for (const auto& phase : bench_phases()) {
    PhaseStats st;
    st.phase = phase;
    std::vector<double> measured;
    for (const auto& s : sim.samples()) {
      if (s.phase != phase) continue;
      st.samples_ms.push_back(s.total_ms());
      measured.push_back(s.measured_ms);
      st.modexp += s.modexp;
      st.modeled_ms = s.modeled_ms;
    }
    st.median_ms = median(st.samples_ms);
    st.median_measured_ms = median(measured);
    out.phases.push_back(std::move(st));
  }
  return out;
}

}  // namespace

const PhaseStats& ModeReport::phase(std::string_view name) const {
  for (const auto& p : phases) {
    if (p.phase == name) return p;
  }
  fail(ErrorCode::kUnknownId, "no phase " + std::string(name));
}

double BenchmarkReport::identity_ratio() const {
  double base = baseline.phase("identity_verification").median_ms;
  double fc = fcguard.phase("identity_verification").median_ms;
  return base > 0 ? fc / base : INFINITY;
}

double BenchmarkReport::transfer_gap() const {
  auto total = [](const ModeReport& m) {
    return m.phase("bank_transfer").median_ms + m.phase("crypto_transfer").median_ms;
  };
  double a = total(fcguard), b = total(baseline);
  double hi = std::max(a, b);
  return hi > 0 ? std::abs(a - b) / hi : 0;
}

std::optional<double> reference_ms(Mode mode, std::string_view phase) {
  struct Row {
    std::string_view phase;
    double baseline;
    double fcguard;
  };
  static constexpr Row kRows[] = {
      {"registration", 5.11, 156.95},       {"identity_verification", 2.63, 464.87},
      {"bank_interaction", 2.45, 363.27},   {"bank_transfer", 0.91, 0.89},
      {"crypto_transfer", 170.01, 170.67},  {"audit", 2.65, 362.52},
  };
  for (const auto& r : kRows) {
    if (r.phase == phase) return mode == Mode::kBaseline ? r.baseline : r.fcguard;
  }
  return std::nullopt;
}

json BenchmarkReport::to_json() const {
  auto mode_json = [](const ModeReport& m) {
    json phases = json::object();
    for (const auto& p : m.phases) {
      json pj{{"median_ms", p.median_ms},
              {"median_measured_ms", p.median_measured_ms},
              {"modeled_ms", p.modeled_ms},
              {"modexp", p.modexp},
              {"samples_ms", p.samples_ms}};
      if (auto ref = reference_ms(m.mode, p.phase)) pj["reference_ms"] = *ref;
      phases[p.phase] = pj;
    }
    return json{{"mode", parties::to_string(m.mode)}, {"phases", phases}};
  };
  return json{{"profile", crypto::profile(profile).name()},
              {"iterations", iterations},
              {"seed", seed},
              {"hardware", hardware},
              {"fcguard", mode_json(fcguard)},
              {"baseline", mode_json(baseline)},
              {"identity_ratio", identity_ratio()},
              {"transfer_gap", transfer_gap()}};
}

std::string BenchmarkReport::table() const {
  std::ostringstream os;
  char buf[256];
  os << "profile " << crypto::profile(profile).name() << ", " << iterations
     << " iterations (median), " << hardware << '\n';
  std::snprintf(buf, sizeof buf, "%-22s | %12s %10s | %12s %10s | %10s %10s\n", "phase",
                "baseline ms", "(ref)", "fcguard ms", "(ref)", "modexp b", "modexp fc");
  os << buf;
  os << std::string(102, '-') << '\n';
  for (const auto& phase : bench_phases()) {
    const auto& b = baseline.phase(phase);
    const auto& f = fcguard.phase(phase);
    std::snprintf(buf, sizeof buf, "%-22s | %12.2f %10.2f | %12.2f %10.2f | %10llu %10llu\n",
                  phase.c_str(), b.median_ms, *reference_ms(Mode::kBaseline, phase), f.median_ms,
                  *reference_ms(Mode::kFcGuard, phase), static_cast<unsigned long long>(b.modexp),
                  static_cast<unsigned long long>(f.modexp));
    os << buf;
  }
  std::snprintf(buf, sizeof buf,
                "identity verification ratio fcguard/baseline: %.1fx; transfer phase gap: %.1f%%\n",
                identity_ratio(), 100 * transfer_gap());
  os << buf;
  os << "transfer phases include modeled latency (bank " << fcguard.phase("bank_transfer").modeled_ms
     << " ms, chain " << fcguard.phase("crypto_transfer").modeled_ms
     << " ms); the audit phase times the authority's side only\n";
  return os.str();
}

std::string hardware_note() {
  std::string model = "unknown cpu";
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      auto pos = line.find(':');
      if (pos != std::string::npos) model = line.substr(pos + 2);
      break;
    }
  }
  return model + ", " + std::to_string(std::max(1u, std::thread::hardware_concurrency())) +
         " hardware threads";
}

BenchmarkReport run_bench(crypto::Profile profile, unsigned iterations, std::uint64_t seed,
                          const KeyMaterial* keys) {
  enforce(iterations >= 5, ErrorCode::kInvalidArgument, "bench needs at least 5 iterations");
  BenchmarkReport rep;
  rep.profile = profile;
  rep.iterations = iterations;
  rep.seed = seed;
  rep.hardware = hardware_note();
  // Sequential on purpose: timings of one mode must not overlap the other.
  rep.baseline = bench_mode(Mode::kBaseline, iterations, seed, profile, keys);
  rep.fcguard = bench_mode(Mode::kFcGuard, iterations, seed, profile, keys);
  return rep;
}

}  // namespace fcguard::harness
