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

// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "stripesim/detect.hpp"
#include "stripesim/fronthaul.hpp"
#include "stripesim/harness.hpp"
#include "stripesim/linalg.hpp"
#include "stripesim/statistics.hpp"

using namespace stripesim;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail, double seconds) {
  std::printf("[%s] criterion %d: %s  (%s; %.1f s)\n", pass ? "PASS" : "FAIL",
              number, name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

SystemConfig scenario(int num_ap, int antennas, int num_ue, int tau_c, int tau_p) {
  SystemConfig cfg;
  cfg.num_ap = num_ap;
  cfg.antennas_per_ap = antennas;
  cfg.num_ue = num_ue;
  cfg.coherence_len = tau_c;
  cfg.pilot_len = tau_p;
  cfg.noise_power = 1.0;
  cfg.ue_powers.assign(num_ue, 1.0);
  cfg.beta = Eigen::MatrixXd::Ones(num_ue, num_ap);
  return cfg;
}

// 1. Fronthaul reproduction: loads and saving for the published scenario.
void criterion_1() {
  Timer t;
  const FronthaulReport rep = saving_report(scenario(24, 4, 8, 2000, 8));
  const bool pass = rep.centralized_load == 384000 &&
                    rep.sequential_load == 31936 &&
                    std::abs(rep.saving_percent - 91.68) <= 0.01;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "centralized=%lld sequential=%lld saving=%.4f%%",
                static_cast<long long>(rep.centralized_load),
                static_cast<long long>(rep.sequential_load), rep.saving_percent);
  report(1, "fronthaul reproduction L=24 N=4 K=8", pass, detail, t.seconds());
}

// 2. Saving-curve shape: near-constant for fixed L/K, strictly increasing
//    for fixed K.
void criterion_2() {
  Timer t;
  bool pass = true;
  double worst_band = 0.0;
  for (int ratio : {2, 3, 4}) {
    double lo = 1e9, hi = -1e9;
    for (int k = 2; k <= 24; k += 2) {
      const double s =
          saving_report(scenario(ratio * k, 4, k, 2000, k)).saving_percent;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    worst_band = std::max(worst_band, hi - lo);
    if (hi - lo >= 2.0) pass = false;
  }

  double prev = -1e9;
  bool increasing = true;
  for (int num_ap = 8; num_ap <= 48; num_ap += 4) {
    const double s = saving_report(scenario(num_ap, 4, 8, 2000, 8)).saving_percent;
    if (s <= prev) increasing = false;
    prev = s;
  }
  pass = pass && increasing;

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "max fixed-ratio band=%.4f pp, fixed-K sweep %s", worst_band,
                increasing ? "strictly increasing" : "NOT increasing");
  report(2, "saving curve shape", pass, detail, t.seconds());
}

// 3+4. Randomized equivalence grid (sequential == centralized; PSK
//      collapse), via the library's invariant suite.
void criteria_3_4() {
  Timer t;
  EquivalenceOptions opt;
  opt.instances_per_cell = 100;
  opt.seed = 2024;
  const EquivalenceReport rep = run_equivalence(opt);

  const auto find = [&rep](const std::string& name) -> const InvariantReport& {
    for (const auto& r : rep.invariants)
      if (r.invariant_name == name) return r;
    throw std::logic_error("missing invariant " + name);
  };

  const auto& llr = find("llr_exact_vs_centralized");
  const auto& map = find("map_exact_vs_centralized");
  char detail3[160];
  std::snprintf(detail3, sizeof(detail3),
                "%d instances, max |LLR dev|=%.3g, map mismatches=%g",
                llr.instances, llr.max_abs_dev, map.max_abs_dev);
  report(3, "sequential == centralized (LLR < 1e-9, identical MAP)",
         llr.pass && map.pass, detail3, t.seconds());

  Timer t4;
  const auto& psk_llr = find("llr_simplified_vs_exact_psk");
  const auto& psk_map = find("map_simplified_vs_exact_psk");
  char detail4[160];
  std::snprintf(detail4, sizeof(detail4),
                "%d constant-modulus instances, max |dev|=%.3g, mismatches=%g",
                psk_llr.instances, psk_llr.max_abs_dev, psk_map.max_abs_dev);
  report(4, "PSK exactness of the simplified detectors",
         psk_llr.pass && psk_map.pass, detail4, t4.seconds());
}

// 5. Max-log bound on 1e4 QPSK K=2 instances, plus high-SNR convergence.
void criterion_5() {
  Timer t;
  const double bound = std::log(16.0 / 2.0);
  double worst_gap = 0.0;
  bool pass = true;

  for (int i = 0; i < 10000; ++i) {
    Rng rng = make_rng(555, i);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    SystemConfig cfg = scenario(2, 2, 2, 1000, 2);
    cfg.noise_power = noise_power_for_snr(15.0 * uni(rng), cfg.ue_powers);
    cfg.correlation = CorrelationKind::Exponential;
    cfg.corr_decay = 0.5;

    const Constellation c = build_constellation(ConstellationId::QPSK);
    const HypothesisSet hyps = enumerate_hypotheses(c, 2, cfg.ue_powers);
    const SpatialProfile profile = build_profile(cfg);
    const PilotAssignment assignment = assign_pilots(2, 2);
    const ChannelRealization h = draw_channel(profile, rng);
    const DespreadPilots despread = pilot_phase(h, assignment, cfg, rng);
    const ChannelEstimate est = mmse_estimate(despread, profile, assignment, cfg);
    std::uniform_int_distribution<std::uint64_t> pat(0, hyps.size() - 1);
    const auto y = uplink_receive(h, hyps.symbols[pat(rng)], cfg, rng);

    const HypothesisStatistics hs = run_chain_exact(est, y, cfg, hyps);
    const LlrVector exact = llr_exact(hs, hyps);
    const LlrVector ml = llr_maxlog(hs, hyps);
    for (std::size_t b = 0; b < exact.values.size(); ++b) {
      const double gap = std::abs(exact.values[b] - ml.values[b]);
      worst_gap = std::max(worst_gap, gap);
      if (gap > bound + 1e-12) pass = false;
    }
  }

  // High SNR, perfect CSI: relative gap < 1e-3.
  double worst_rel = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = make_rng(556, i);
    SystemConfig cfg = scenario(2, 2, 2, 1000, 2);
    cfg.noise_power = 1e-6;
    const Constellation c = build_constellation(ConstellationId::QPSK);
    const HypothesisSet hyps = enumerate_hypotheses(c, 2, cfg.ue_powers);
    const SpatialProfile profile = build_profile(cfg);
    const PilotAssignment assignment = assign_pilots(2, 2);
    const ChannelRealization h = draw_channel(profile, rng);
    const ChannelEstimate est = perfect_estimate(h, profile, assignment, cfg);
    std::uniform_int_distribution<std::uint64_t> pat(0, hyps.size() - 1);
    const auto y = uplink_receive(h, hyps.symbols[pat(rng)], cfg, rng);

    const HypothesisStatistics hs = run_chain_exact(est, y, cfg, hyps);
    const LlrVector exact = llr_exact(hs, hyps);
    const LlrVector ml = llr_maxlog(hs, hyps);
    for (std::size_t b = 0; b < exact.values.size(); ++b)
      worst_rel = std::max(worst_rel, std::abs(exact.values[b] - ml.values[b]) /
                                          std::abs(exact.values[b]));
  }
  pass = pass && worst_rel < 1e-3;

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "worst gap=%.4f (bound %.4f), high-SNR rel gap=%.3g", worst_gap,
                bound, worst_rel);
  report(5, "max-log bound and high-SNR convergence", pass, detail, t.seconds());
}

// 6. Fusion identity vs the stacked block-diagonal reference.
void criterion_6() {
  Timer t;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = make_rng(666, i);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    SystemConfig cfg = scenario(3, 2, 2, 1000, 2);
    cfg.correlation = CorrelationKind::Exponential;
    cfg.corr_decay = 0.5;
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 3; ++l) cfg.beta(k, l) = 0.2 + 1.8 * uni(rng);
    cfg.noise_power = noise_power_for_snr(12.0 * uni(rng), cfg.ue_powers);

    const Constellation c = build_constellation(ConstellationId::QPSK);
    const HypothesisSet hyps = enumerate_hypotheses(c, 2, cfg.ue_powers);
    const SpatialProfile profile = build_profile(cfg);
    const PilotAssignment assignment = assign_pilots(2, 2);
    const ChannelRealization h = draw_channel(profile, rng);
    const DespreadPilots despread = pilot_phase(h, assignment, cfg, rng);
    const ChannelEstimate est = mmse_estimate(despread, profile, assignment, cfg);
    std::uniform_int_distribution<std::uint64_t> pat(0, hyps.size() - 1);
    const auto y = uplink_receive(h, hyps.symbols[pat(rng)], cfg, rng);

    const ApStatistics st = run_chain_simplified(est, y, cfg);

    const int n = cfg.antennas_per_ap;
    const int total = n * cfg.num_ap;
    Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(total, total);
    Eigen::MatrixXcd g(total, cfg.num_ue);
    Eigen::VectorXcd z(total);
    for (int l = 0; l < cfg.num_ap; ++l) {
      cov.block(l * n, l * n, n, n) = psk_covariance(est, cfg, l);
      g.middleRows(l * n, n) = est.H_hat[l];
      z.segment(l * n, n) = y[l];
    }
    const Eigen::MatrixXcd cov_inv = cov.inverse();
    const Eigen::MatrixXcd gram_ref = g.adjoint() * cov_inv * g;
    const Eigen::VectorXcd matched_ref = g.adjoint() * cov_inv * z;
    const double energy_ref = z.dot(cov_inv * z).real();

    worst = std::max(worst, (st.gram - gram_ref).norm() / gram_ref.norm());
    worst = std::max(worst, (st.matched - matched_ref).norm() / matched_ref.norm());
    worst = std::max(worst,
                     std::abs(st.whitened_energy - energy_ref) / energy_ref);
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "100 instances, worst rel dev=%.3g", worst);
  report(6, "fusion identity vs stacked model", worst < 1e-9, detail, t.seconds());
}

// 7. MMSE estimator statistics over 1e5 contaminated coherence blocks.
void criterion_7() {
  Timer t;
  SystemConfig cfg = scenario(1, 2, 2, 1000, 1);  // K=2 on one pilot
  cfg.noise_power = 0.2;
  cfg.correlation = CorrelationKind::Exponential;
  cfg.corr_decay = 0.5;
  cfg.ue_powers = {1.0, 0.6};
  cfg.beta(1, 0) = 0.8;
  const SpatialProfile profile = build_profile(cfg);
  const PilotAssignment assignment = assign_pilots(2, 1);

  double split_dev = 0.0;
  Eigen::MatrixXcd r_hat_ref;
  Eigen::MatrixXcd sample = Eigen::MatrixXcd::Zero(2, 2);
  Rng rng = make_rng(777, 0);
  const int blocks = 100000;
  for (int i = 0; i < blocks; ++i) {
    const ChannelRealization h = draw_channel(profile, rng);
    const DespreadPilots despread = pilot_phase(h, assignment, cfg, rng);
    const ChannelEstimate est = mmse_estimate(despread, profile, assignment, cfg);
    if (i == 0) {
      r_hat_ref = est.R_hat(0, 0);
      for (int k = 0; k < 2; ++k) {
        const Eigen::MatrixXcd sum = est.R_hat(k, 0) + est.R_tilde(k, 0);
        split_dev = std::max(split_dev, (sum - profile.R(k, 0)).norm() /
                                            profile.R(k, 0).norm());
      }
    }
    const Eigen::VectorXcd h_hat = est.H_hat[0].col(0);
    sample += h_hat * h_hat.adjoint();
  }
  sample /= static_cast<double>(blocks);
  const double cov_dev = (sample - r_hat_ref).norm() / r_hat_ref.norm();

  const bool pass = cov_dev < 0.05 && split_dev < 1e-10;
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "sample-cov rel dev=%.4f, covariance split dev=%.3g", cov_dev,
                split_dev);
  report(7, "MMSE statistics over 1e5 blocks", pass, detail, t.seconds());
}

// 8. Macro diversity: BER(L=4) <= BER(L=2) with 95% one-sided confidence,
//    with sequential and centralized decisions identical per trial.
void criterion_8() {
  Timer t;

  const auto run = [](int num_ap) {
    ExperimentSpec spec;
    spec.scenario = scenario(num_ap, 2, 2, 1000, 2);
    spec.scenario.correlation = CorrelationKind::Exponential;
    spec.scenario.corr_decay = 0.5;
    spec.scenario.constellation = ConstellationId::QPSK;
    spec.scenario.seed = 888;
    spec.snr_db = {0.0};
    spec.detectors = {"map_simplified"};
    spec.trials = 30000;  // 120k bits at mK = 4
    spec.verify_centralized = true;
    return run_ber(spec);
  };

  const BerOutcome two = run(2);
  const BerOutcome four = run(4);
  const BerRecord& r2 = two.records.front();
  const BerRecord& r4 = four.records.front();

  const double p2 = r2.ber;
  const double p4 = r4.ber;
  const double n = static_cast<double>(r2.bits_total);
  // One-sided two-proportion z test at 95%.
  const double pooled = (static_cast<double>(r2.bit_errors) + r4.bit_errors) / (2.0 * n);
  const double se = std::sqrt(pooled * (1.0 - pooled) * (2.0 / n));
  const double z = (p2 - p4) / se;
  const bool significant = z > 1.645;
  const bool consistent =
      two.central_mismatch_trials == 0 && four.central_mismatch_trials == 0;

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "BER(L=2)=%.5f BER(L=4)=%.5f z=%.2f central mismatches=%lld",
                p2, p4, z,
                static_cast<long long>(two.central_mismatch_trials +
                                       four.central_mismatch_trials));
  report(8, "macro-diversity BER with per-trial path identity",
         significant && consistent, detail, t.seconds());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criteria_3_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%s (%d criterion failures)\n",
              g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              g_failures);
  return g_failures;
}
