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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stripesim/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 1;
constexpr int kExitInvariantFailure = 2;

std::string sibling_json_path(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + ".json";
  return path.substr(0, dot) + ".json";
}

int run_ber_command(const std::string& config_path, std::uint64_t seed,
                    bool seed_given, const std::string& out_path) {
  stripesim::ExperimentSpec spec = stripesim::load_experiment_spec(config_path);
  if (seed_given) spec.scenario.seed = seed;

  const stripesim::BerOutcome outcome = stripesim::run_ber(spec);
  stripesim::write_ber_csv(out_path, outcome.records);

  for (const auto& r : outcome.records)
    std::cout << "snr " << r.snr_db << " dB  " << r.detector << "  ber "
              << r.ber << " (" << r.bit_errors << "/" << r.bits_total << ")\n";
  if (spec.verify_centralized) {
    std::cout << "centralized cross-check mismatch trials: "
              << outcome.central_mismatch_trials << "\n";
    if (outcome.central_mismatch_trials > 0) {
      std::cerr << "sequential and centralized decisions diverged\n";
      return kExitInvariantFailure;
    }
  }
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int run_equivalence_command(const std::string& config_path, std::uint64_t seed,
                            bool seed_given, const std::string& out_path) {
  stripesim::EquivalenceOptions opt =
      stripesim::load_equivalence_options(config_path);
  if (seed_given) opt.seed = seed;

  const stripesim::EquivalenceReport rep = stripesim::run_equivalence(opt);
  stripesim::write_equivalence_csv(out_path, rep);
  stripesim::write_equivalence_json(sibling_json_path(out_path), rep);

  for (const auto& r : rep.invariants)
    std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.invariant_name
              << "  instances " << r.instances << "  max_abs_dev "
              << r.max_abs_dev << "  max_rel_dev " << r.max_rel_dev << "\n";
  std::cout << "wrote " << out_path << " and " << sibling_json_path(out_path)
            << "\n";
  return rep.all_pass() ? kExitOk : kExitInvariantFailure;
}

int run_fronthaul_command(const std::string& config_path, const std::string& out_path) {
  const stripesim::FronthaulSweepOptions opt =
      stripesim::load_fronthaul_options(config_path);
  const auto rows = stripesim::run_fronthaul(opt);
  stripesim::write_fronthaul_csv(out_path, rows);
  std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "stripesim: sequential-fronthaul cell-free massive MIMO uplink "
      "detection simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;

  auto* ber = app.add_subcommand("ber", "Monte Carlo BER sweep over an SNR grid");
  ber->add_option("--config", config_path, "JSON config file")->required();
  auto* ber_seed = ber->add_option("--seed", seed, "override scenario seed");
  ber->add_option("--out", out_path, "output CSV path")->required();

  auto* equiv = app.add_subcommand(
      "equivalence", "randomized sequential-vs-centralized invariant suite");
  equiv->add_option("--config", config_path, "JSON config file (optional)");
  auto* equiv_seed = equiv->add_option("--seed", seed, "override suite seed");
  equiv->add_option("--out", out_path, "output CSV path (JSON written alongside)")
      ->required();

  auto* fh = app.add_subcommand("fronthaul", "fronthaul load/saving sweep");
  fh->add_option("--config", config_path, "JSON config file (optional)");
  fh->add_option("--seed", seed, "unused; accepted for interface uniformity");
  fh->add_option("--out", out_path, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(ber))
      return run_ber_command(config_path, seed, ber_seed->count() > 0, out_path);
    if (app.got_subcommand(equiv))
      return run_equivalence_command(config_path, seed, equiv_seed->count() > 0,
                                     out_path);
    return run_fronthaul_command(config_path, out_path);
  } catch (const stripesim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  }
}
