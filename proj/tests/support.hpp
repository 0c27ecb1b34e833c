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

// Test-side reference computations. Everything here goes through explicit
// matrix inversion and direct density evaluation so that the quantities the
// library produces by Cholesky solves and sequential fusion are checked
// against a genuinely different numeric route.

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "stripesim/channel.hpp"
#include "stripesim/model.hpp"
#include "stripesim/rng.hpp"
#include "stripesim/statistics.hpp"

namespace testsupport {

using stripesim::ChannelEstimate;
using stripesim::ChannelRealization;
using stripesim::HypothesisSet;
using stripesim::SystemConfig;

struct RandomInstance {
  SystemConfig cfg;
  HypothesisSet hyps;
  ChannelRealization realization;
  ChannelEstimate estimate;
  std::vector<Eigen::VectorXcd> y;
  std::uint64_t truth = 0;
};

inline RandomInstance make_instance(stripesim::ConstellationId constellation,
                                    int num_ue, int num_ap, int antennas,
                                    double noise_power, std::uint64_t seed,
                                    bool perfect_csi = false) {
  RandomInstance inst;
  SystemConfig& cfg = inst.cfg;
  cfg.num_ue = num_ue;
  cfg.num_ap = num_ap;
  cfg.antennas_per_ap = antennas;
  cfg.coherence_len = 1000;
  cfg.pilot_len = num_ue;
  cfg.noise_power = noise_power;
  cfg.ue_powers.assign(num_ue, 1.0);
  cfg.constellation = constellation;
  cfg.correlation = stripesim::CorrelationKind::Exponential;
  cfg.corr_decay = 0.5;
  cfg.beta = Eigen::MatrixXd::Ones(num_ue, num_ap);
  cfg.seed = seed;

  stripesim::Rng rng = stripesim::make_rng(seed, 0);
  const auto c = stripesim::build_constellation(constellation);
  inst.hyps = stripesim::enumerate_hypotheses(c, num_ue, cfg.ue_powers);

  const auto profile = stripesim::build_profile(cfg);
  const auto assignment = stripesim::assign_pilots(num_ue, cfg.pilot_len);
  inst.realization = stripesim::draw_channel(profile, rng);
  if (perfect_csi) {
    inst.estimate =
        stripesim::perfect_estimate(inst.realization, profile, assignment, cfg);
  } else {
    const auto despread =
        stripesim::pilot_phase(inst.realization, assignment, cfg, rng);
    inst.estimate = stripesim::mmse_estimate(despread, profile, assignment, cfg);
  }

  std::uniform_int_distribution<std::uint64_t> pattern(0, inst.hyps.size() - 1);
  inst.truth = pattern(rng);
  inst.y = stripesim::uplink_receive(inst.realization,
                                     inst.hyps.symbols[inst.truth], cfg, rng);
  return inst;
}

// Block diagonal of per-AP covariances for one hypothesis.
inline Eigen::MatrixXcd stacked_covariance(const ChannelEstimate& est,
                                           const SystemConfig& cfg,
                                           const Eigen::VectorXcd& s) {
  const int n = est.antennas;
  Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(n * est.num_ap, n * est.num_ap);
  for (int l = 0; l < est.num_ap; ++l)
    cov.block(l * n, l * n, n, n) =
        stripesim::conditional_covariance(s, est, cfg, l);
  return cov;
}

inline Eigen::MatrixXcd stacked_psk_covariance(const ChannelEstimate& est,
                                               const SystemConfig& cfg) {
  const int n = est.antennas;
  Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(n * est.num_ap, n * est.num_ap);
  for (int l = 0; l < est.num_ap; ++l)
    cov.block(l * n, l * n, n, n) = stripesim::psk_covariance(est, cfg, l);
  return cov;
}

inline Eigen::VectorXcd stack_observations(const std::vector<Eigen::VectorXcd>& y) {
  const int n = static_cast<int>(y.front().size());
  Eigen::VectorXcd z(n * static_cast<int>(y.size()));
  for (std::size_t l = 0; l < y.size(); ++l) z.segment(l * n, n) = y[l];
  return z;
}

inline Eigen::MatrixXcd stack_estimates(const ChannelEstimate& est) {
  const int n = est.antennas;
  Eigen::MatrixXcd g(n * est.num_ap, est.num_ue);
  for (int l = 0; l < est.num_ap; ++l) g.middleRows(l * n, n) = est.H_hat[l];
  return g;
}

struct StackedReference {
  Eigen::MatrixXcd gram;
  Eigen::VectorXcd matched;
  double energy = 0.0;
  double log_det = 0.0;
};

// Reference fusion quantities through an explicit inverse.
inline StackedReference stacked_reference(const Eigen::MatrixXcd& cov,
                                          const Eigen::MatrixXcd& g,
                                          const Eigen::VectorXcd& z) {
  StackedReference ref;
  const Eigen::MatrixXcd cov_inv = cov.inverse();
  ref.gram = g.adjoint() * cov_inv * g;
  ref.matched = g.adjoint() * cov_inv * z;
  ref.energy = z.dot(cov_inv * z).real();
  ref.log_det = std::log(std::abs(cov.determinant()));
  return ref;
}

// Direct per-hypothesis Gaussian log density on the stacked model.
inline std::vector<double> direct_log_densities(const ChannelEstimate& est,
                                                const SystemConfig& cfg,
                                                const HypothesisSet& hyps,
                                                const Eigen::VectorXcd& z) {
  const Eigen::MatrixXcd g = stack_estimates(est);
  std::vector<double> out(hyps.size());
  for (std::size_t j = 0; j < hyps.size(); ++j) {
    const Eigen::MatrixXcd cov = stacked_covariance(est, cfg, hyps.symbols[j]);
    const Eigen::VectorXcd resid = z - g * hyps.symbols[j];
    const double quad = resid.dot(cov.inverse() * resid).real();
    out[j] = -static_cast<double>(z.size()) * std::log(std::numbers::pi) -
             std::log(std::abs(cov.determinant())) - quad;
  }
  return out;
}

// LLRs straight from log densities with plain (max-shifted) sums.
inline std::vector<double> llr_from_log_densities(const std::vector<double>& logf,
                                                  const HypothesisSet& hyps) {
  const int mk = hyps.num_bits();
  std::vector<double> out(mk);
  for (int i = 0; i < mk; ++i) {
    double m1 = -1e308, m0 = -1e308;
    for (std::size_t j = 0; j < logf.size(); ++j)
      (hyps.bit(j, i) ? m1 : m0) = std::max(hyps.bit(j, i) ? m1 : m0, logf[j]);
    double s1 = 0.0, s0 = 0.0;
    for (std::size_t j = 0; j < logf.size(); ++j) {
      if (hyps.bit(j, i))
        s1 += std::exp(logf[j] - m1);
      else
        s0 += std::exp(logf[j] - m0);
    }
    out[i] = (m1 + std::log(s1)) - (m0 + std::log(s0));
  }
  return out;
}

}  // namespace testsupport
