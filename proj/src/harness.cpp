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

#include "stripesim/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "stripesim/linalg.hpp"
#include "stripesim/rng.hpp"
#include "stripesim/statistics.hpp"

namespace stripesim {

using nlohmann::json;

const std::vector<std::string>& known_detectors() {
  static const std::vector<std::string> names = {
      "map_simplified", "map_exact",          "llr_exact",
      "llr_simplified", "llr_maxlog",         "llr_maxlog_exact"};
  return names;
}

void ExperimentSpec::validate() const {
  scenario.validate();
  if (snr_db.empty()) throw ConfigError("snr_db grid must be nonempty");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (detectors.empty()) throw ConfigError("detectors must be nonempty");
  const auto& known = known_detectors();
  for (const auto& d : detectors)
    if (std::find(known.begin(), known.end(), d) == known.end())
      throw ConfigError("unknown detector: " + d);
}

double noise_power_for_snr(double snr_db, const std::vector<double>& ue_powers) {
  const double mean_power =
      std::accumulate(ue_powers.begin(), ue_powers.end(), 0.0) /
      static_cast<double>(ue_powers.size());
  return mean_power / std::pow(10.0, snr_db / 10.0);
}

namespace {

bool needs_exact(const std::string& d) {
  return d == "map_exact" || d == "llr_exact" || d == "llr_maxlog_exact";
}

std::uint64_t bits_from_llr(const LlrVector& llr) {
  std::uint64_t pattern = 0;
  for (double v : llr.values) pattern = (pattern << 1) | (v > 0.0 ? 1u : 0u);
  return pattern;
}

// Decided bit pattern for one detector on one trial's statistics.
std::uint64_t decide_bits(const std::string& detector,
                          const ApStatistics* simplified,
                          const HypothesisStatistics* exact,
                          const HypothesisSet& hyps) {
  if (detector == "map_simplified") return map_simplified(*simplified, hyps).hypothesis_index;
  if (detector == "map_exact") return map_exact(*exact, hyps).hypothesis_index;
  if (detector == "llr_exact") return bits_from_llr(llr_exact(*exact, hyps));
  if (detector == "llr_simplified") return bits_from_llr(llr_simplified(*simplified, hyps));
  if (detector == "llr_maxlog") return bits_from_llr(llr_maxlog(*simplified, hyps));
  if (detector == "llr_maxlog_exact") return bits_from_llr(llr_maxlog(*exact, hyps));
  throw ConfigError("unknown detector: " + detector);
}

std::uint64_t decide_bits_centralized(const std::string& detector,
                                      const CentralizedDensities* psk,
                                      const CentralizedDensities* exact,
                                      const HypothesisSet& hyps) {
  if (detector == "map_simplified") return map_centralized_oracle(*psk, hyps).hypothesis_index;
  if (detector == "map_exact") return map_centralized_oracle(*exact, hyps).hypothesis_index;
  if (detector == "llr_exact") return bits_from_llr(llr_centralized_oracle(*exact, hyps));
  if (detector == "llr_simplified") return bits_from_llr(llr_centralized_oracle(*psk, hyps));
  if (detector == "llr_maxlog") return bits_from_llr(maxlog_centralized_oracle(*psk, hyps));
  if (detector == "llr_maxlog_exact") return bits_from_llr(maxlog_centralized_oracle(*exact, hyps));
  throw ConfigError("unknown detector: " + detector);
}

}  // namespace

BerOutcome run_ber(const ExperimentSpec& spec) {
  spec.validate();

  const Constellation constellation = build_constellation(spec.scenario.constellation);
  const HypothesisSet hyps = enumerate_hypotheses(
      constellation, spec.scenario.num_ue, spec.scenario.ue_powers,
      spec.scenario.hypothesis_cap);
  const int mk = hyps.num_bits();

  const SpatialProfile profile = build_profile(spec.scenario);
  const PilotAssignment assignment =
      assign_pilots(spec.scenario.num_ue, spec.scenario.pilot_len);

  const bool want_simplified = std::any_of(
      spec.detectors.begin(), spec.detectors.end(),
      [](const std::string& d) { return !needs_exact(d); });
  const bool want_exact = std::any_of(spec.detectors.begin(), spec.detectors.end(),
                                      needs_exact);

  BerOutcome outcome;
  for (std::size_t q = 0; q < spec.snr_db.size(); ++q) {
    SystemConfig cfg = spec.scenario;
    cfg.noise_power = noise_power_for_snr(spec.snr_db[q], cfg.ue_powers);

    std::vector<std::int64_t> errors(spec.detectors.size(), 0);
    std::uniform_int_distribution<std::uint64_t> pattern_dist(0, hyps.size() - 1);

    for (int t = 0; t < spec.trials; ++t) {
      Rng rng = make_rng(spec.scenario.seed,
                         q * static_cast<std::uint64_t>(spec.trials) + t);

      const ChannelRealization realization = draw_channel(profile, rng);
      ChannelEstimate estimate;
      if (spec.perfect_csi) {
        estimate = perfect_estimate(realization, profile, assignment, cfg);
      } else {
        const DespreadPilots despread = pilot_phase(realization, assignment, cfg, rng);
        estimate = mmse_estimate(despread, profile, assignment, cfg);
      }

      const std::uint64_t truth = pattern_dist(rng);
      const std::vector<Eigen::VectorXcd> y =
          uplink_receive(realization, hyps.symbols[truth], cfg, rng);

      ApStatistics simplified;
      HypothesisStatistics exact;
      if (want_simplified) simplified = run_chain_simplified(estimate, y, cfg);
      if (want_exact) exact = run_chain_exact(estimate, y, cfg, hyps);

      CentralizedDensities central_psk, central_exact;
      if (spec.verify_centralized) {
        const StackedModel stacked = stack_model(estimate, y);
        if (want_simplified)
          central_psk = centralized_log_densities(stacked, estimate, cfg, hyps,
                                                  CovarianceMode::ConstantModulus);
        if (want_exact)
          central_exact = centralized_log_densities(stacked, estimate, cfg, hyps,
                                                    CovarianceMode::PerHypothesis);
      }

      bool mismatch = false;
      for (std::size_t d = 0; d < spec.detectors.size(); ++d) {
        const std::uint64_t decided =
            decide_bits(spec.detectors[d], &simplified, &exact, hyps);
        errors[d] += std::popcount(decided ^ truth);
        if (spec.verify_centralized) {
          const std::uint64_t central = decide_bits_centralized(
              spec.detectors[d], &central_psk, &central_exact, hyps);
          if (central != decided) mismatch = true;
        }
      }
      if (mismatch) ++outcome.central_mismatch_trials;
    }

    for (std::size_t d = 0; d < spec.detectors.size(); ++d) {
      BerRecord rec;
      rec.snr_db = spec.snr_db[q];
      rec.detector = spec.detectors[d];
      rec.bit_errors = errors[d];
      rec.bits_total = static_cast<std::int64_t>(spec.trials) * mk;
      rec.ber = static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits_total);
      rec.trials = spec.trials;
      rec.seed = spec.scenario.seed;
      outcome.records.push_back(std::move(rec));
    }
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// Equivalence suite
// ---------------------------------------------------------------------------

namespace {

struct Accumulator {
  double max_abs = 0.0;
  double max_rel = 0.0;
  void feed(double abs_dev, double rel_dev) {
    max_abs = std::max(max_abs, abs_dev);
    max_rel = std::max(max_rel, rel_dev);
  }
};

struct Instance {
  SystemConfig cfg;
  HypothesisSet hyps;
  ChannelEstimate estimate;
  std::vector<Eigen::VectorXcd> y;
  std::uint64_t truth = 0;
};

Instance make_random_instance(ConstellationId constellation, int num_ue, int num_ap,
                              int antennas, std::uint64_t master,
                              std::uint64_t counter) {
  Rng rng = make_rng(master, counter);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  Instance inst;
  SystemConfig& cfg = inst.cfg;
  cfg.num_ap = num_ap;
  cfg.antennas_per_ap = antennas;
  cfg.num_ue = num_ue;
  cfg.coherence_len = 2000;
  cfg.pilot_len = num_ue;
  cfg.constellation = constellation;
  cfg.correlation = CorrelationKind::Exponential;
  cfg.corr_decay = 0.5;
  cfg.seed = counter;
  cfg.ue_powers.resize(num_ue);
  for (double& p : cfg.ue_powers) p = 0.5 + 1.5 * uni(rng);
  cfg.beta.resize(num_ue, num_ap);
  for (int k = 0; k < num_ue; ++k)
    for (int l = 0; l < num_ap; ++l) cfg.beta(k, l) = 0.2 + 1.8 * uni(rng);
  cfg.noise_power = noise_power_for_snr(15.0 * uni(rng), cfg.ue_powers);

  const Constellation c = build_constellation(constellation);
  inst.hyps = enumerate_hypotheses(c, num_ue, cfg.ue_powers, cfg.hypothesis_cap);

  const SpatialProfile profile = build_profile(cfg);
  const PilotAssignment assignment = assign_pilots(num_ue, cfg.pilot_len);
  const ChannelRealization realization = draw_channel(profile, rng);
  const DespreadPilots despread = pilot_phase(realization, assignment, cfg, rng);
  inst.estimate = mmse_estimate(despread, profile, assignment, cfg);

  std::uniform_int_distribution<std::uint64_t> pattern_dist(0, inst.hyps.size() - 1);
  inst.truth = pattern_dist(rng);
  inst.y = uplink_receive(realization, inst.hyps.symbols[inst.truth], cfg, rng);
  return inst;
}

}  // namespace

bool EquivalenceReport::all_pass() const {
  return std::all_of(invariants.begin(), invariants.end(),
                     [](const InvariantReport& r) { return r.pass; });
}

EquivalenceReport run_equivalence(const EquivalenceOptions& options) {
  const ConstellationId constellations[] = {
      ConstellationId::BPSK, ConstellationId::QPSK, ConstellationId::QAM16};
  const int ue_counts[] = {1, 2, 3};
  const int ap_counts[] = {1, 2, 4};
  const int antenna_counts[] = {1, 2};

  Accumulator llr_central, map_central, psk_llr, psk_map;
  Accumulator fusion_gram, fusion_matched, fusion_energy, fusion_logdet;
  Accumulator det_recursion, maxlog_gap, qam_gap;
  double maxlog_worst_margin = -std::numeric_limits<double>::infinity();
  int total_instances = 0, psk_instances = 0, qam_instances = 0;
  std::int64_t map_mismatches = 0, psk_map_mismatches = 0;

  std::uint64_t cell_index = 0;
  for (ConstellationId constellation : constellations) {
    const bool constant_modulus =
        build_constellation(constellation).constant_modulus;
    for (int num_ue : ue_counts) {
      for (int num_ap : ap_counts) {
        for (int antennas : antenna_counts) {
          ++cell_index;
          for (int i = 0; i < options.instances_per_cell; ++i) {
            const Instance inst = make_random_instance(
                constellation, num_ue, num_ap, antennas, options.seed,
                cell_index * 0x100000000ULL + static_cast<std::uint64_t>(i));
            ++total_instances;

            const ApStatistics simplified =
                run_chain_simplified(inst.estimate, inst.y, inst.cfg);
            const HypothesisStatistics exact =
                run_chain_exact(inst.estimate, inst.y, inst.cfg, inst.hyps);

            const StackedModel stacked = stack_model(inst.estimate, inst.y);
            const CentralizedDensities central = centralized_log_densities(
                stacked, inst.estimate, inst.cfg, inst.hyps,
                CovarianceMode::PerHypothesis);

            // Sequential == centralized, LLRs and hard decisions.
            const LlrVector llr_seq = llr_exact(exact, inst.hyps);
            const LlrVector llr_ref = llr_centralized_oracle(central, inst.hyps);
            for (std::size_t b = 0; b < llr_seq.values.size(); ++b) {
              const double dev = std::abs(llr_seq.values[b] - llr_ref.values[b]);
              llr_central.feed(dev, dev / std::max(1.0, std::abs(llr_ref.values[b])));
            }
            const DetectionResult map_seq = map_exact(exact, inst.hyps);
            const DetectionResult map_ref = map_centralized_oracle(central, inst.hyps);
            if (map_seq.hypothesis_index != map_ref.hypothesis_index) ++map_mismatches;

            // PSK collapse of the simplified statistics.
            if (constant_modulus) {
              ++psk_instances;
              const LlrVector llr_simp = llr_simplified(simplified, inst.hyps);
              for (std::size_t b = 0; b < llr_simp.values.size(); ++b) {
                const double dev = std::abs(llr_simp.values[b] - llr_seq.values[b]);
                psk_llr.feed(dev, dev / std::max(1.0, std::abs(llr_seq.values[b])));
              }
              if (map_simplified(simplified, inst.hyps).hypothesis_index !=
                  map_seq.hypothesis_index)
                ++psk_map_mismatches;
            } else {
              ++qam_instances;
              const LlrVector llr_simp = llr_simplified(simplified, inst.hyps);
              for (std::size_t b = 0; b < llr_simp.values.size(); ++b) {
                const double dev = std::abs(llr_simp.values[b] - llr_seq.values[b]);
                qam_gap.feed(dev, dev / std::max(1.0, std::abs(llr_seq.values[b])));
              }
            }

            // Fusion identities against the stacked block-diagonal model,
            // computed by explicit inversion (independent numeric route).
            {
              const int n = inst.cfg.antennas_per_ap;
              const int total = n * inst.cfg.num_ap;
              Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(total, total);
              for (int l = 0; l < inst.cfg.num_ap; ++l)
                cov.block(l * n, l * n, n, n) =
                    psk_covariance(inst.estimate, inst.cfg, l);
              const Eigen::MatrixXcd cov_inv = cov.inverse();
              const Eigen::MatrixXcd gram_ref =
                  stacked.G_hat.adjoint() * cov_inv * stacked.G_hat;
              const Eigen::VectorXcd matched_ref =
                  stacked.G_hat.adjoint() * cov_inv * stacked.z;
              const double energy_ref = stacked.z.dot(cov_inv * stacked.z).real();
              const double logdet_ref = std::log(std::abs(cov.determinant()));

              const double gram_dev = (simplified.gram - gram_ref).norm();
              fusion_gram.feed(gram_dev, gram_dev / std::max(1e-300, gram_ref.norm()));
              const double matched_dev = (simplified.matched - matched_ref).norm();
              fusion_matched.feed(matched_dev,
                                  matched_dev / std::max(1e-300, matched_ref.norm()));
              const double energy_dev = std::abs(simplified.whitened_energy - energy_ref);
              fusion_energy.feed(energy_dev,
                                 energy_dev / std::max(1e-300, std::abs(energy_ref)));
              const double logdet_dev = std::abs(simplified.log_det_sum - logdet_ref);
              fusion_logdet.feed(logdet_dev,
                                 logdet_dev / std::max(1.0, std::abs(logdet_ref)));
            }

            // d-recursion carried in log domain equals -sum ln det.
            for (std::size_t j = 0; j < inst.hyps.size(); ++j) {
              const double dev = std::abs(exact.log_det_scale[j] +
                                          exact.stats[j].log_det_sum);
              det_recursion.feed(
                  dev, dev / std::max(1.0, std::abs(exact.stats[j].log_det_sum)));
            }

            // Max-log gap and its ln(M^K / 2) bound.
            const LlrVector maxlog = llr_maxlog(exact, inst.hyps);
            const double bound =
                std::log(static_cast<double>(inst.hyps.size()) / 2.0);
            for (std::size_t b = 0; b < maxlog.values.size(); ++b) {
              const double gap = std::abs(llr_seq.values[b] - maxlog.values[b]);
              maxlog_gap.feed(gap, bound > 0.0 ? gap / bound : 0.0);
              maxlog_worst_margin = std::max(maxlog_worst_margin, gap - bound);
            }
          }
        }
      }
    }
  }

  EquivalenceReport rep;
  const auto add = [&rep](const std::string& name, int instances,
                          const Accumulator& acc, bool pass) {
    rep.invariants.push_back({name, instances, acc.max_abs, acc.max_rel, pass});
  };

  add("llr_exact_vs_centralized", total_instances, llr_central,
      llr_central.max_abs < options.llr_tolerance);
  map_central.feed(static_cast<double>(map_mismatches),
                   static_cast<double>(map_mismatches) /
                       std::max(1, total_instances));
  add("map_exact_vs_centralized", total_instances, map_central,
      map_mismatches == 0);
  add("llr_simplified_vs_exact_psk", psk_instances, psk_llr,
      psk_llr.max_abs < options.llr_tolerance);
  psk_map.feed(static_cast<double>(psk_map_mismatches),
               static_cast<double>(psk_map_mismatches) / std::max(1, psk_instances));
  add("map_simplified_vs_exact_psk", psk_instances, psk_map,
      psk_map_mismatches == 0);
  add("fusion_gram_vs_stacked", total_instances, fusion_gram,
      fusion_gram.max_rel < 1e-9);
  add("fusion_matched_vs_stacked", total_instances, fusion_matched,
      fusion_matched.max_rel < 1e-9);
  add("fusion_energy_vs_stacked", total_instances, fusion_energy,
      fusion_energy.max_rel < 1e-9);
  add("fusion_logdet_vs_stacked", total_instances, fusion_logdet,
      fusion_logdet.max_rel < 1e-9);
  add("det_recursion_log_consistency", total_instances, det_recursion,
      det_recursion.max_abs < options.logdet_tolerance);
  add("maxlog_bound", total_instances, maxlog_gap,
      maxlog_worst_margin <= 1e-12);
  // Informational: the simplified LLR deviates for amplitude-varying
  // alphabets; the gap is reported, never failed.
  add("llr_simplified_gap_16qam", qam_instances, qam_gap, true);
  return rep;
}

std::vector<FronthaulRow> run_fronthaul(const FronthaulSweepOptions& options) {
  std::vector<FronthaulRow> rows;

  const auto make_cfg = [&options](int num_ap, int num_ue) {
    SystemConfig cfg;
    cfg.num_ap = num_ap;
    cfg.antennas_per_ap = options.antennas_per_ap;
    cfg.num_ue = num_ue;
    cfg.coherence_len = options.coherence_len;
    cfg.pilot_len = num_ue;
    cfg.noise_power = 1.0;
    cfg.ue_powers.assign(num_ue, 1.0);
    cfg.constellation = options.constellation;
    cfg.beta = Eigen::MatrixXd::Ones(num_ue, num_ap);
    return cfg;
  };

  const auto push = [&rows](const std::string& family, const SystemConfig& cfg) {
    FronthaulRow row;
    row.family = family;
    row.num_ap = cfg.num_ap;
    row.antennas_per_ap = cfg.antennas_per_ap;
    row.num_ue = cfg.num_ue;
    row.coherence_len = cfg.coherence_len;
    row.pilot_len = cfg.pilot_len;
    row.report = saving_report(cfg);
    rows.push_back(std::move(row));
  };

  for (int ratio : options.ratio_families)
    for (int num_ue : options.ratio_ue_counts)
      push("ratio_" + std::to_string(ratio), make_cfg(ratio * num_ue, num_ue));

  for (int num_ap : options.fixed_k_ap_counts)
    push("fixed_K", make_cfg(num_ap, options.fixed_ue_count));

  return rows;
}

// ---------------------------------------------------------------------------
// Configuration files
// ---------------------------------------------------------------------------

namespace {

json parse_json_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON config: ") + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_or_throw(buf.str());
}

SystemConfig system_config_from_json(const json& j) {
  SystemConfig cfg;
  try {
    cfg.num_ap = j.at("L").get<int>();
    cfg.antennas_per_ap = j.at("N").get<int>();
    cfg.num_ue = j.at("K").get<int>();
    cfg.coherence_len = j.at("tau_c").get<int>();
    cfg.pilot_len = j.at("tau_p").get<int>();
    cfg.noise_power = j.value("noise_power", 1.0);
    if (j.contains("ue_powers")) {
      cfg.ue_powers = j.at("ue_powers").get<std::vector<double>>();
    } else {
      cfg.ue_powers.assign(cfg.num_ue, 1.0);
    }
    cfg.constellation =
        constellation_from_name(j.value("constellation", std::string("QPSK")));
    if (j.contains("correlation")) {
      const json& corr = j.at("correlation");
      const std::string model = corr.at("model").get<std::string>();
      if (model == "identity") {
        cfg.correlation = CorrelationKind::Identity;
      } else if (model == "exponential") {
        cfg.correlation = CorrelationKind::Exponential;
        cfg.corr_decay = corr.at("rho").get<double>();
      } else {
        throw ConfigError("unknown correlation model: " + model);
      }
    }
    if (j.contains("beta") && j.at("beta").is_array()) {
      const auto rows = j.at("beta").get<std::vector<std::vector<double>>>();
      cfg.beta.resize(cfg.num_ue, cfg.num_ap);
      if (static_cast<int>(rows.size()) != cfg.num_ue)
        throw ConfigError("beta table must have K rows");
      for (int k = 0; k < cfg.num_ue; ++k) {
        if (static_cast<int>(rows[k].size()) != cfg.num_ap)
          throw ConfigError("beta table rows must have L entries");
        for (int l = 0; l < cfg.num_ap; ++l) cfg.beta(k, l) = rows[k][l];
      }
    } else {
      const double b = j.value("beta", 1.0);
      cfg.beta = b * Eigen::MatrixXd::Ones(cfg.num_ue, cfg.num_ap);
    }
    cfg.seed = j.value("seed", std::uint64_t(0));
    cfg.hypothesis_cap = j.value("hypothesis_cap", std::uint64_t(1) << 20);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid scenario config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid scenario config: ") + e.what());
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid scenario config: ") + e.what());
  }
  return cfg;
}

ExperimentSpec experiment_spec_from_json(const json& j) {
  ExperimentSpec spec;
  if (!j.contains("scenario")) throw ConfigError("config must contain \"scenario\"");
  spec.scenario = system_config_from_json(j.at("scenario"));
  try {
    const json& e = j.at("experiment");
    spec.snr_db = e.at("snr_db").get<std::vector<double>>();
    spec.detectors = e.at("detectors").get<std::vector<std::string>>();
    spec.trials = e.at("trials").get<int>();
    spec.perfect_csi = e.value("perfect_csi", false);
    spec.verify_centralized = e.value("verify_centralized", false);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid experiment config: ") + e.what());
  }
  spec.validate();
  return spec;
}

}  // namespace

SystemConfig parse_system_config_json(const std::string& text) {
  return system_config_from_json(parse_json_or_throw(text));
}

ExperimentSpec parse_experiment_spec_json(const std::string& text) {
  return experiment_spec_from_json(parse_json_or_throw(text));
}

EquivalenceOptions parse_equivalence_options_json(const std::string& text) {
  const json j = parse_json_or_throw(text);
  EquivalenceOptions opt;
  try {
    if (j.contains("equivalence")) {
      const json& e = j.at("equivalence");
      opt.instances_per_cell = e.value("instances_per_cell", opt.instances_per_cell);
      opt.seed = e.value("seed", opt.seed);
      opt.llr_tolerance = e.value("llr_tolerance", opt.llr_tolerance);
      opt.logdet_tolerance = e.value("logdet_tolerance", opt.logdet_tolerance);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid equivalence config: ") + e.what());
  }
  if (opt.instances_per_cell < 1)
    throw ConfigError("instances_per_cell must be >= 1");
  return opt;
}

FronthaulSweepOptions parse_fronthaul_options_json(const std::string& text) {
  const json j = parse_json_or_throw(text);
  FronthaulSweepOptions opt;
  try {
    if (j.contains("fronthaul")) {
      const json& f = j.at("fronthaul");
      opt.ratio_families = f.value("ratio_families", opt.ratio_families);
      opt.ratio_ue_counts = f.value("ratio_ue_counts", opt.ratio_ue_counts);
      opt.fixed_ue_count = f.value("fixed_ue_count", opt.fixed_ue_count);
      opt.fixed_k_ap_counts = f.value("fixed_k_ap_counts", opt.fixed_k_ap_counts);
      opt.antennas_per_ap = f.value("antennas_per_ap", opt.antennas_per_ap);
      opt.coherence_len = f.value("coherence_len", opt.coherence_len);
      if (f.contains("constellation"))
        opt.constellation =
            constellation_from_name(f.at("constellation").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid fronthaul config: ") + e.what());
  }
  if (opt.antennas_per_ap < 1 || opt.coherence_len < 1)
    throw ConfigError("fronthaul sweep dimensions must be >= 1");
  return opt;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  return experiment_spec_from_json(load_json_file(path));
}

EquivalenceOptions load_equivalence_options(const std::string& path) {
  if (path.empty()) return EquivalenceOptions{};
  return parse_equivalence_options_json(load_json_file(path).dump());
}

FronthaulSweepOptions load_fronthaul_options(const std::string& path) {
  if (path.empty()) return FronthaulSweepOptions{};
  return parse_fronthaul_options_json(load_json_file(path).dump());
}

// ---------------------------------------------------------------------------
// Outputs
// ---------------------------------------------------------------------------

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << std::setprecision(12);
  return out;
}

}  // namespace

void write_ber_csv(const std::string& path, const std::vector<BerRecord>& records) {
  auto out = open_out(path);
  out << "snr_db,detector,bit_errors,bits_total,ber,trials,seed\n";
  for (const auto& r : records)
    out << r.snr_db << ',' << r.detector << ',' << r.bit_errors << ','
        << r.bits_total << ',' << r.ber << ',' << r.trials << ',' << r.seed
        << '\n';
}

void write_fronthaul_csv(const std::string& path,
                         const std::vector<FronthaulRow>& rows) {
  auto out = open_out(path);
  out << "family,L,N,K,tau_c,tau_p,centralized_load,sequential_load,"
         "saving_percent,breakdown_data,breakdown_pilots,breakdown_matched,"
         "breakdown_gram,exact_mode_overhead\n";
  for (const auto& r : rows)
    out << r.family << ',' << r.num_ap << ',' << r.antennas_per_ap << ','
        << r.num_ue << ',' << r.coherence_len << ',' << r.pilot_len << ','
        << r.report.centralized_load << ',' << r.report.sequential_load << ','
        << r.report.saving_percent << ',' << r.report.breakdown_data << ','
        << r.report.breakdown_pilots << ',' << r.report.breakdown_matched << ','
        << r.report.breakdown_gram << ',' << r.report.exact_mode_overhead
        << '\n';
}

void write_equivalence_csv(const std::string& path, const EquivalenceReport& rep) {
  auto out = open_out(path);
  out << "invariant_name,instances,max_abs_dev,max_rel_dev,pass\n";
  for (const auto& r : rep.invariants)
    out << r.invariant_name << ',' << r.instances << ',' << r.max_abs_dev << ','
        << r.max_rel_dev << ',' << (r.pass ? "true" : "false") << '\n';
}

std::string equivalence_report_json(const EquivalenceReport& rep) {
  json arr = json::array();
  for (const auto& r : rep.invariants)
    arr.push_back({{"invariant_name", r.invariant_name},
                   {"instances", r.instances},
                   {"max_abs_dev", r.max_abs_dev},
                   {"max_rel_dev", r.max_rel_dev},
                   {"pass", r.pass}});
  return arr.dump(2);
}

void write_equivalence_json(const std::string& path, const EquivalenceReport& rep) {
  auto out = open_out(path);
  out << equivalence_report_json(rep) << '\n';
}

}  // namespace stripesim
