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

#include "stripesim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "stripesim/linalg.hpp"

namespace stripesim {

SpatialProfile build_profile(const SystemConfig& cfg) {
  const int n = cfg.antennas_per_ap;
  if (cfg.correlation == CorrelationKind::Exponential &&
      !(cfg.corr_decay >= 0.0 && cfg.corr_decay < 1.0))
    throw std::invalid_argument("corr_decay must lie in [0, 1)");
  if (cfg.beta.rows() != cfg.num_ue || cfg.beta.cols() != cfg.num_ap)
    throw std::invalid_argument("beta must be a num_ue x num_ap table");

  Eigen::MatrixXcd base(n, n);
  if (cfg.correlation == CorrelationKind::Identity) {
    base = Eigen::MatrixXcd::Identity(n, n);
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        base(a, b) = std::pow(cfg.corr_decay, std::abs(a - b));
  }

  SpatialProfile profile;
  profile.num_ue = cfg.num_ue;
  profile.num_ap = cfg.num_ap;
  profile.antennas = n;
  profile.corr.resize(static_cast<std::size_t>(cfg.num_ue) * cfg.num_ap);
  for (int k = 0; k < cfg.num_ue; ++k)
    for (int l = 0; l < cfg.num_ap; ++l)
      profile.corr[profile.idx(k, l)] = cfg.beta(k, l) * base;

  factorize_profile(profile);
  return profile;
}

void factorize_profile(SpatialProfile& profile) {
  profile.factors.resize(profile.corr.size());
  for (std::size_t i = 0; i < profile.corr.size(); ++i)
    profile.factors[i] = psd_factor(profile.corr[i]);
}

ChannelRealization draw_channel(const SpatialProfile& profile, Rng& rng) {
  const bool cached = profile.factors.size() == profile.corr.size();
  ChannelRealization out;
  out.H.assign(profile.num_ap,
               Eigen::MatrixXcd(profile.antennas, profile.num_ue));
  for (int k = 0; k < profile.num_ue; ++k) {
    for (int l = 0; l < profile.num_ap; ++l) {
      const Eigen::MatrixXcd factor = cached
                                          ? profile.factors[profile.idx(k, l)]
                                          : psd_factor(profile.R(k, l));
      out.H[l].col(k) = factor * randcn_vector(rng, profile.antennas);
    }
  }
  return out;
}

int PilotAssignment::pilot_slot(int t) const {
  const auto it = std::find(used_pilots.begin(), used_pilots.end(), t);
  if (it == used_pilots.end()) throw std::invalid_argument("pilot not in use");
  return static_cast<int>(it - used_pilots.begin());
}

PilotAssignment assign_pilots(int num_ue, int pilot_len) {
  if (num_ue < 1 || pilot_len < 1)
    throw std::invalid_argument("num_ue and pilot_len must be >= 1");

  PilotAssignment pa;
  pa.pilot_of_ue.resize(num_ue);
  for (int k = 0; k < num_ue; ++k) pa.pilot_of_ue[k] = k % pilot_len;

  pa.coset.resize(num_ue);
  for (int k = 0; k < num_ue; ++k)
    for (int i = 0; i < num_ue; ++i)
      if (pa.pilot_of_ue[i] == pa.pilot_of_ue[k]) pa.coset[k].push_back(i);

  const int used = std::min(num_ue, pilot_len);
  pa.used_pilots.resize(used);
  pa.ues_of_pilot.resize(used);
  for (int t = 0; t < used; ++t) {
    pa.used_pilots[t] = t;
    for (int i = 0; i < num_ue; ++i)
      if (pa.pilot_of_ue[i] == t) pa.ues_of_pilot[t].push_back(i);
  }
  return pa;
}

DespreadPilots pilot_phase(const ChannelRealization& realization,
                           const PilotAssignment& assignment,
                           const SystemConfig& cfg, Rng& rng) {
  const int n = cfg.antennas_per_ap;
  const double sigma = std::sqrt(cfg.noise_power);
  const double tau_p = static_cast<double>(cfg.pilot_len);

  DespreadPilots out;
  out.pilots = assignment.used_pilots;
  out.y.resize(out.pilots.size());
  for (std::size_t slot = 0; slot < out.pilots.size(); ++slot) {
    out.y[slot].resize(cfg.num_ap);
    for (int l = 0; l < cfg.num_ap; ++l) {
      Eigen::VectorXcd y = sigma * randcn_vector(rng, n);
      for (int i : assignment.ues_of_pilot[slot])
        y += std::sqrt(cfg.ue_powers[i] * tau_p) * realization.H[l].col(i);
      out.y[slot][l] = std::move(y);
    }
  }
  return out;
}

namespace {

std::string condition_report(const Eigen::MatrixXcd& psi) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(psi);
  std::ostringstream os;
  os << "despread covariance not positive definite";
  if (eig.info() == Eigen::Success) {
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    os << " (eigenvalue range [" << lo << ", " << hi << "], condition "
       << (lo != 0.0 ? hi / std::abs(lo) : std::numeric_limits<double>::infinity())
       << ")";
  }
  return os.str();
}

}  // namespace

ChannelEstimate mmse_estimate(const DespreadPilots& despread,
                              const SpatialProfile& profile,
                              const PilotAssignment& assignment,
                              const SystemConfig& cfg) {
  const int n = cfg.antennas_per_ap;
  const int num_ue = cfg.num_ue;
  const int num_ap = cfg.num_ap;
  const double tau_p = static_cast<double>(cfg.pilot_len);
  const Eigen::MatrixXcd noise_eye =
      cfg.noise_power * Eigen::MatrixXcd::Identity(n, n);

  ChannelEstimate est;
  est.num_ue = num_ue;
  est.num_ap = num_ap;
  est.antennas = n;
  est.H_hat.assign(num_ap, Eigen::MatrixXcd::Zero(n, num_ue));
  est.est_cov.resize(static_cast<std::size_t>(num_ue) * num_ap);
  est.err_cov.resize(est.est_cov.size());
  est.pilots = assignment.used_pilots;
  est.despread_cov.resize(est.pilots.size() * num_ap);

  // One Cholesky of Psi_tl per (pilot, AP); every UE on that pilot reuses it.
  for (std::size_t slot = 0; slot < est.pilots.size(); ++slot) {
    const auto& ues = assignment.ues_of_pilot[slot];
    for (int l = 0; l < num_ap; ++l) {
      Eigen::MatrixXcd psi = noise_eye;
      for (int i : ues) psi += tau_p * cfg.ue_powers[i] * profile.R(i, l);
      est.despread_cov[slot * num_ap + l] = psi;

      Eigen::LLT<Eigen::MatrixXcd> llt(psi);
      if (llt.info() != Eigen::Success)
        throw std::runtime_error(condition_report(psi));

      const Eigen::VectorXcd solved_y = llt.solve(despread.at(slot, l));
      for (int k : ues) {
        const double scale = std::sqrt(cfg.ue_powers[k] * tau_p);
        const Eigen::MatrixXcd& r = profile.R(k, l);
        est.H_hat[l].col(k) = scale * (r * solved_y);

        Eigen::MatrixXcd r_hat =
            cfg.ue_powers[k] * tau_p * (r * llt.solve(r));
        r_hat = 0.5 * (r_hat + r_hat.adjoint()).eval();  // round-off hygiene
        est.err_cov[est.idx(k, l)] = r - r_hat;
        est.est_cov[est.idx(k, l)] = std::move(r_hat);
      }
    }
  }
  return est;
}

ChannelEstimate perfect_estimate(const ChannelRealization& realization,
                                 const SpatialProfile& profile,
                                 const PilotAssignment& assignment,
                                 const SystemConfig& cfg) {
  const int n = cfg.antennas_per_ap;
  const double tau_p = static_cast<double>(cfg.pilot_len);

  ChannelEstimate est;
  est.num_ue = cfg.num_ue;
  est.num_ap = cfg.num_ap;
  est.antennas = n;
  est.H_hat = realization.H;
  est.est_cov.resize(static_cast<std::size_t>(cfg.num_ue) * cfg.num_ap);
  est.err_cov.resize(est.est_cov.size());
  for (int k = 0; k < cfg.num_ue; ++k)
    for (int l = 0; l < cfg.num_ap; ++l) {
      est.est_cov[est.idx(k, l)] = profile.R(k, l);
      est.err_cov[est.idx(k, l)] = Eigen::MatrixXcd::Zero(n, n);
    }

  est.pilots = assignment.used_pilots;
  est.despread_cov.resize(est.pilots.size() * cfg.num_ap);
  for (std::size_t slot = 0; slot < est.pilots.size(); ++slot)
    for (int l = 0; l < cfg.num_ap; ++l) {
      Eigen::MatrixXcd psi =
          cfg.noise_power * Eigen::MatrixXcd::Identity(n, n);
      for (int i : assignment.ues_of_pilot[slot])
        psi += tau_p * cfg.ue_powers[i] * profile.R(i, l);
      est.despread_cov[slot * cfg.num_ap + l] = std::move(psi);
    }
  return est;
}

}  // namespace stripesim
