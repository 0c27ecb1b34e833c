// SPDX-License-Identifier: Apache-2.0
//
// stripesim: uplink cell-free massive MIMO simulator with a sequential
// (daisy-chain) fronthaul
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stripesim/detect.hpp"
#include "stripesim/fronthaul.hpp"
#include "stripesim/model.hpp"

namespace stripesim {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Recognized detector names for BER experiments. "llr_maxlog" is the
/// hypothesis-independent variant of the max-log detector; the
/// per-hypothesis one is available as "llr_maxlog_exact".
const std::vector<std::string>& known_detectors();

struct ExperimentSpec {
  SystemConfig scenario;
  std::vector<double> snr_db;          // per-UE transmit SNR grid
  std::vector<std::string> detectors;
  int trials = 1;                      // coherence blocks per SNR point
  bool perfect_csi = false;
  // Run the centralized reference alongside every sequential detector and
  // count trials on which the hard decisions differ (expected: none).
  bool verify_centralized = false;

  void validate() const;
};

/// SNR (dB) -> noise power, with SNR defined as mean UE power over sigma^2
/// for unit-average-energy constellations.
double noise_power_for_snr(double snr_db, const std::vector<double>& ue_powers);

struct BerRecord {
  double snr_db = 0.0;
  std::string detector;
  std::int64_t bit_errors = 0;
  std::int64_t bits_total = 0;
  double ber = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
};

struct BerOutcome {
  std::vector<BerRecord> records;
  // Trials on which a sequential detector and its centralized twin
  // disagreed (only populated with verify_centralized).
  std::int64_t central_mismatch_trials = 0;
};

/// Monte Carlo BER sweep. One coherence block and one data channel use per
/// trial; all requested detectors see the same realization. Deterministic:
/// trial t of SNR point q uses substream q * trials + t of scenario.seed.
BerOutcome run_ber(const ExperimentSpec& spec);

struct EquivalenceOptions {
  int instances_per_cell = 100;
  std::uint64_t seed = 1;
  double llr_tolerance = 1e-9;
  double logdet_tolerance = 1e-10;
};

struct InvariantReport {
  std::string invariant_name;
  int instances = 0;
  double max_abs_dev = 0.0;
  double max_rel_dev = 0.0;
  bool pass = false;
};

struct EquivalenceReport {
  std::vector<InvariantReport> invariants;
  bool all_pass() const;
};

/// Randomized equivalence suite over {BPSK, QPSK, 16QAM} x K in {1,2,3} x
/// L in {1,2,4} x N in {1,2}: sequential-vs-centralized LLRs and decisions,
/// PSK collapse, fusion identities against the stacked block-diagonal
/// model, determinant-recursion consistency, and the max-log bound.
/// Failures are report entries, not exceptions.
EquivalenceReport run_equivalence(const EquivalenceOptions& options);

struct FronthaulSweepOptions {
  std::vector<int> ratio_families = {2, 3, 4};  // L/K with K swept below
  std::vector<int> ratio_ue_counts = {2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24};
  int fixed_ue_count = 8;
  std::vector<int> fixed_k_ap_counts = {8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48};
  int antennas_per_ap = 4;
  int coherence_len = 2000;  // tau_p = K throughout the sweep
  ConstellationId constellation = ConstellationId::QPSK;
};

struct FronthaulRow {
  std::string family;  // "fixed_K" or "ratio_<L/K>"
  int num_ap = 0;
  int antennas_per_ap = 0;
  int num_ue = 0;
  int coherence_len = 0;
  int pilot_len = 0;
  FronthaulReport report;
};

std::vector<FronthaulRow> run_fronthaul(const FronthaulSweepOptions& options);

// --- configuration files (JSON) -------------------------------------------

SystemConfig parse_system_config_json(const std::string& text);
ExperimentSpec parse_experiment_spec_json(const std::string& text);
EquivalenceOptions parse_equivalence_options_json(const std::string& text);
FronthaulSweepOptions parse_fronthaul_options_json(const std::string& text);

ExperimentSpec load_experiment_spec(const std::string& path);
EquivalenceOptions load_equivalence_options(const std::string& path);
FronthaulSweepOptions load_fronthaul_options(const std::string& path);

// --- machine-readable outputs ----------------------------------------------

void write_ber_csv(const std::string& path, const std::vector<BerRecord>& records);
void write_fronthaul_csv(const std::string& path,
                         const std::vector<FronthaulRow>& rows);
void write_equivalence_csv(const std::string& path, const EquivalenceReport& rep);
void write_equivalence_json(const std::string& path, const EquivalenceReport& rep);
std::string equivalence_report_json(const EquivalenceReport& rep);

}  // namespace stripesim
