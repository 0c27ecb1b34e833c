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

#include "stripesim/statistics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "stripesim/linalg.hpp"

namespace stripesim {

ApStatistics ApStatistics::zero(int num_ue) {
  ApStatistics st;
  st.gram = Eigen::MatrixXcd::Zero(num_ue, num_ue);
  st.matched = Eigen::VectorXcd::Zero(num_ue);
  return st;
}

std::vector<Eigen::VectorXcd> uplink_receive(const ChannelRealization& realization,
                                             const Eigen::VectorXcd& s,
                                             const SystemConfig& cfg, Rng& rng) {
  const double sigma = std::sqrt(cfg.noise_power);
  std::vector<Eigen::VectorXcd> y(realization.H.size());
  for (std::size_t l = 0; l < realization.H.size(); ++l)
    y[l] = realization.H[l] * s + sigma * randcn_vector(rng, cfg.antennas_per_ap);
  return y;
}

Eigen::MatrixXcd conditional_covariance(const Eigen::VectorXcd& s,
                                        const ChannelEstimate& estimate,
                                        const SystemConfig& cfg, int ap) {
  Eigen::MatrixXcd sigma = cfg.noise_power *
      Eigen::MatrixXcd::Identity(estimate.antennas, estimate.antennas);
  for (int i = 0; i < estimate.num_ue; ++i)
    sigma += std::norm(s(i)) * estimate.R_tilde(i, ap);
  return sigma;
}

Eigen::MatrixXcd psk_covariance(const ChannelEstimate& estimate,
                                const SystemConfig& cfg, int ap) {
  Eigen::MatrixXcd sigma = cfg.noise_power *
      Eigen::MatrixXcd::Identity(estimate.antennas, estimate.antennas);
  for (int i = 0; i < estimate.num_ue; ++i)
    sigma += cfg.ue_powers[i] * estimate.R_tilde(i, ap);
  return sigma;
}

WhitenedLocal whiten(const Eigen::MatrixXcd& sigma, const Eigen::VectorXcd& y,
                     const Eigen::MatrixXcd& h_hat) {
  Eigen::LLT<Eigen::MatrixXcd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("whitening failed: covariance not positive definite");
  WhitenedLocal out;
  out.r = llt.matrixL().solve(y);
  out.C_hat = llt.matrixL().solve(h_hat);
  return out;
}

ApStatistics local_update(const ApStatistics& prev, const WhitenedLocal& local,
                          const Eigen::MatrixXcd& sigma) {
  if (!local.r.allFinite() || !local.C_hat.allFinite())
    throw std::invalid_argument("non-finite whitened quantities");

  ApStatistics out = prev;
  out.whitened_energy += local.r.squaredNorm();
  out.gram += local.C_hat.adjoint() * local.C_hat;
  out.matched += local.C_hat.adjoint() * local.r;
  out.log_det_sum += log_det_hermitian_pd(sigma);
  return out;
}

ApStatistics run_chain_simplified(const ChannelEstimate& estimate,
                                  const std::vector<Eigen::VectorXcd>& y,
                                  const SystemConfig& cfg) {
  ApStatistics st = ApStatistics::zero(estimate.num_ue);
  for (int l = 0; l < estimate.num_ap; ++l) {
    const Eigen::MatrixXcd sigma = psk_covariance(estimate, cfg, l);
    st = local_update(st, whiten(sigma, y[l], estimate.H_hat[l]), sigma);
  }
  return st;
}

HypothesisStatistics run_chain_exact(const ChannelEstimate& estimate,
                                     const std::vector<Eigen::VectorXcd>& y,
                                     const SystemConfig& cfg,
                                     const HypothesisSet& hypotheses) {
  HypothesisStatistics out;
  out.stats.assign(hypotheses.size(), ApStatistics::zero(estimate.num_ue));
  out.log_det_scale.assign(hypotheses.size(), 0.0);

  for (std::size_t j = 0; j < hypotheses.size(); ++j) {
    ApStatistics st = ApStatistics::zero(estimate.num_ue);
    double log_scale = 0.0;
    for (int l = 0; l < estimate.num_ap; ++l) {
      const Eigen::MatrixXcd sigma =
          conditional_covariance(hypotheses.symbols[j], estimate, cfg, l);
      st = local_update(st, whiten(sigma, y[l], estimate.H_hat[l]), sigma);
      // d_{l|s} = d_{l-1|s} / det(Sigma), carried in log domain; the
      // determinant is computed by LU on purpose so the log_det_scale ==
      // -log_det_sum identity is a genuine cross-check of two routes.
      log_scale -= std::log(std::abs(sigma.determinant()));
    }
    out.stats[j] = std::move(st);
    out.log_det_scale[j] = log_scale;
  }
  return out;
}

}  // namespace stripesim
