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

#include "stripesim/model.hpp"
#include "stripesim/rng.hpp"

namespace stripesim {

/// Per-(UE, AP) spatial correlation matrices R_kl (N x N, Hermitian PSD,
/// trace N * beta_kl). `factors` caches A_kl with A A^H = R for fast channel
/// draws; it may be left empty, in which case draw_channel factorizes on the
/// fly.
struct SpatialProfile {
  int num_ue = 0;
  int num_ap = 0;
  int antennas = 0;
  std::vector<Eigen::MatrixXcd> corr;     // size K*L, index k*L + l
  std::vector<Eigen::MatrixXcd> factors;  // same indexing when present

  const Eigen::MatrixXcd& R(int k, int l) const { return corr[idx(k, l)]; }
  int idx(int k, int l) const { return k * num_ap + l; }
};

SpatialProfile build_profile(const SystemConfig& cfg);

/// Fills profile.factors; throws std::runtime_error on non-PSD input.
void factorize_profile(SpatialProfile& profile);

/// One coherence block of channels. H[l] is N x K with column k = h_kl.
struct ChannelRealization {
  std::vector<Eigen::MatrixXcd> H;
};

/// h_kl = A_kl z, z ~ CN(0, I); independent across (k, l), drawn UE-major.
ChannelRealization draw_channel(const SpatialProfile& profile, Rng& rng);

struct PilotAssignment {
  std::vector<int> pilot_of_ue;             // t_k, 0-based
  std::vector<std::vector<int>> coset;      // S_k = { i : t_i = t_k }
  std::vector<int> used_pilots;             // sorted distinct pilot indices
  std::vector<std::vector<int>> ues_of_pilot;  // aligned with used_pilots

  int pilot_slot(int t) const;  // position of pilot t in used_pilots
};

/// Round-robin: t_k = k mod tau_p.
PilotAssignment assign_pilots(int num_ue, int pilot_len);

/// Despread pilot observations y_tl, kept only for pilots actually in use.
struct DespreadPilots {
  std::vector<int> pilots;                          // = assignment.used_pilots
  std::vector<std::vector<Eigen::VectorXcd>> y;     // [pilot slot][ap]

  const Eigen::VectorXcd& at(int slot, int l) const { return y[slot][l]; }
};

/// y_tl = sum_{i: t_i = t} sqrt(p_i tau_p) h_il + n_tl, n_tl ~ CN(0, s^2 I).
/// Pilot sequences are never materialized; the despread statistic is
/// generated directly (bit-exact equivalent). Noise is drawn pilot-major,
/// then AP-major.
DespreadPilots pilot_phase(const ChannelRealization& realization,
                           const PilotAssignment& assignment,
                           const SystemConfig& cfg, Rng& rng);

/// MMSE channel estimate with both covariance splits.
struct ChannelEstimate {
  int num_ue = 0;
  int num_ap = 0;
  int antennas = 0;
  std::vector<Eigen::MatrixXcd> H_hat;    // per AP, N x K
  std::vector<Eigen::MatrixXcd> est_cov;  // R_hat_kl, index k*L + l
  std::vector<Eigen::MatrixXcd> err_cov;  // R_tilde_kl = R_kl - R_hat_kl
  std::vector<int> pilots;                // used pilots
  std::vector<Eigen::MatrixXcd> despread_cov;  // Psi_tl, [pilot slot * L + l]

  int idx(int k, int l) const { return k * num_ap + l; }
  const Eigen::MatrixXcd& R_hat(int k, int l) const { return est_cov[idx(k, l)]; }
  const Eigen::MatrixXcd& R_tilde(int k, int l) const { return err_cov[idx(k, l)]; }
};

/// h_hat_kl = sqrt(p_k tau_p) R_kl Psi_tl^{-1} y_tl with Psi solved by
/// Cholesky. Throws std::runtime_error (with the condition number) when a
/// despread covariance cannot be factorized.
ChannelEstimate mmse_estimate(const DespreadPilots& despread,
                              const SpatialProfile& profile,
                              const PilotAssignment& assignment,
                              const SystemConfig& cfg);

/// Perfect-CSI stand-in: H_hat = H, est_cov = R, err_cov = 0.
ChannelEstimate perfect_estimate(const ChannelRealization& realization,
                                 const SpatialProfile& profile,
                                 const PilotAssignment& assignment,
                                 const SystemConfig& cfg);

}  // namespace stripesim
