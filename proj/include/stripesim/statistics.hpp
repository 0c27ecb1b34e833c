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

#include <vector>

#include <Eigen/Dense>

#include "stripesim/channel.hpp"
#include "stripesim/model.hpp"
#include "stripesim/rng.hpp"

namespace stripesim {

/// Sufficient statistics accumulated along the AP chain. After AP l they
/// equal the stacked-model quantities for APs 1..l:
///   whitened_energy = z^H K^{-1} z,   gram = G_hat^H K^{-1} G_hat,
///   matched = G_hat^H K^{-1} z,       log_det_sum = ln det K,
/// with K the block diagonal of the per-AP noise covariances.
struct ApStatistics {
  double whitened_energy = 0.0;
  Eigen::MatrixXcd gram;     // K x K, Hermitian PSD
  Eigen::VectorXcd matched;  // K
  double log_det_sum = 0.0;

  static ApStatistics zero(int num_ue);
};

/// Exact-mode state: one statistics record per hypothesis, plus the
/// determinant-product factor of the likelihood in log domain
/// (log_det_scale = ln d, maintained by its own recursion; equals
/// -log_det_sum up to round-off, which is tested rather than assumed).
struct HypothesisStatistics {
  std::vector<ApStatistics> stats;
  std::vector<double> log_det_scale;
};

/// Whitened local quantities r = T^{-1} y and C_hat = T^{-1} H_hat for the
/// Cholesky factor T of the local noise covariance. Downstream statistics
/// depend only on the quadratic forms r^H r, C^H C, C^H r, so any square
/// root of the covariance yields identical results.
struct WhitenedLocal {
  Eigen::VectorXcd r;
  Eigen::MatrixXcd C_hat;
};

/// Data-phase observation y_l = H_l s + n_l per AP, noise drawn AP-major.
std::vector<Eigen::VectorXcd> uplink_receive(const ChannelRealization& realization,
                                             const Eigen::VectorXcd& s,
                                             const SystemConfig& cfg, Rng& rng);

/// Colored-noise covariance at AP `ap` conditioned on the transmitted
/// vector: sum_i |s_i|^2 R_tilde_il + sigma^2 I.
Eigen::MatrixXcd conditional_covariance(const Eigen::VectorXcd& s,
                                        const ChannelEstimate& estimate,
                                        const SystemConfig& cfg, int ap);

/// Hypothesis-independent covariance sum_i p_i R_tilde_il + sigma^2 I;
/// identical to conditional_covariance for constant-modulus alphabets and
/// an approximation otherwise.
Eigen::MatrixXcd psk_covariance(const ChannelEstimate& estimate,
                                const SystemConfig& cfg, int ap);

/// Throws std::runtime_error when sigma is not positive definite.
WhitenedLocal whiten(const Eigen::MatrixXcd& sigma, const Eigen::VectorXcd& y,
                     const Eigen::MatrixXcd& h_hat);

/// One fusion step: fold AP-local whitened quantities into the running
/// statistics. Throws std::invalid_argument on non-finite input.
ApStatistics local_update(const ApStatistics& prev, const WhitenedLocal& local,
                          const Eigen::MatrixXcd& sigma);

/// Sequential pass over APs 1..L with the hypothesis-independent covariance
/// (one whitening per AP). Exact for constant-modulus alphabets.
ApStatistics run_chain_simplified(const ChannelEstimate& estimate,
                                  const std::vector<Eigen::VectorXcd>& y,
                                  const SystemConfig& cfg);

/// Sequential pass maintaining per-hypothesis statistics with the
/// conditional covariance, plus the log-domain determinant recursion.
HypothesisStatistics run_chain_exact(const ChannelEstimate& estimate,
                                     const std::vector<Eigen::VectorXcd>& y,
                                     const SystemConfig& cfg,
                                     const HypothesisSet& hypotheses);

}  // namespace stripesim
