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

#include "stripesim/detect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stripesim/linalg.hpp"

namespace stripesim {

namespace {

// s^H M s - 2 Re{a^H s}; real by Hermitian symmetry of M.
double quadratic_cost(const Eigen::VectorXcd& s, const ApStatistics& st) {
  const double quad = s.dot(st.gram * s).real();
  return quad - 2.0 * st.matched.dot(s).real();
}

DetectionResult pick_minimum(const std::vector<double>& cost,
                             const HypothesisSet& hypotheses) {
  if (cost.empty()) throw std::invalid_argument("empty hypothesis set");
  std::size_t best = 0;
  for (std::size_t j = 1; j < cost.size(); ++j)
    if (cost[j] < cost[best]) best = j;
  return {hypotheses.symbols[best], best, cost[best]};
}

// LLR_i = reduce over {s : b_i = 1} minus reduce over {s : b_i = 0}.
LlrVector per_bit_ratio(const std::vector<double>& terms,
                        const HypothesisSet& hypotheses, bool use_max) {
  const int mk = hypotheses.num_bits();
  LlrVector out;
  out.values.resize(mk);
  std::vector<double> set1, set0;
  set1.reserve(terms.size() / 2);
  set0.reserve(terms.size() / 2);
  for (int i = 0; i < mk; ++i) {
    set1.clear();
    set0.clear();
    for (std::size_t j = 0; j < terms.size(); ++j)
      (hypotheses.bit(j, i) ? set1 : set0).push_back(terms[j]);
    if (set1.empty() || set0.empty())
      throw std::invalid_argument("bit partition is degenerate");
    if (use_max) {
      out.values[i] = *std::max_element(set1.begin(), set1.end()) -
                      *std::max_element(set0.begin(), set0.end());
    } else {
      out.values[i] = log_sum_exp(set1) - log_sum_exp(set0);
    }
  }
  return out;
}

std::vector<double> simplified_terms(const ApStatistics& stats,
                                     const HypothesisSet& hypotheses) {
  std::vector<double> terms(hypotheses.size());
  for (std::size_t j = 0; j < hypotheses.size(); ++j)
    terms[j] = -quadratic_cost(hypotheses.symbols[j], stats);
  return terms;
}

std::vector<double> exact_terms(const HypothesisStatistics& stats,
                                const HypothesisSet& hypotheses) {
  std::vector<double> terms(hypotheses.size());
  for (std::size_t j = 0; j < hypotheses.size(); ++j)
    terms[j] = stats.log_det_scale[j] - stats.stats[j].whitened_energy -
               quadratic_cost(hypotheses.symbols[j], stats.stats[j]);
  return terms;
}

}  // namespace

DetectionResult map_simplified(const ApStatistics& stats,
                               const HypothesisSet& hypotheses) {
  std::vector<double> cost(hypotheses.size());
  for (std::size_t j = 0; j < hypotheses.size(); ++j)
    cost[j] = quadratic_cost(hypotheses.symbols[j], stats);
  return pick_minimum(cost, hypotheses);
}

DetectionResult map_exact(const HypothesisStatistics& stats,
                          const HypothesisSet& hypotheses) {
  std::vector<double> cost(hypotheses.size());
  for (std::size_t j = 0; j < hypotheses.size(); ++j) {
    const ApStatistics& st = stats.stats[j];
    cost[j] = st.whitened_energy + quadratic_cost(hypotheses.symbols[j], st) +
              st.log_det_sum;
  }
  return pick_minimum(cost, hypotheses);
}

LlrVector llr_exact(const HypothesisStatistics& stats,
                    const HypothesisSet& hypotheses) {
  return per_bit_ratio(exact_terms(stats, hypotheses), hypotheses, false);
}

LlrVector llr_simplified(const ApStatistics& stats,
                         const HypothesisSet& hypotheses) {
  return per_bit_ratio(simplified_terms(stats, hypotheses), hypotheses, false);
}

LlrVector llr_maxlog(const ApStatistics& stats, const HypothesisSet& hypotheses) {
  return per_bit_ratio(simplified_terms(stats, hypotheses), hypotheses, true);
}

LlrVector llr_maxlog(const HypothesisStatistics& stats,
                     const HypothesisSet& hypotheses) {
  return per_bit_ratio(exact_terms(stats, hypotheses), hypotheses, true);
}

StackedModel stack_model(const ChannelEstimate& estimate,
                         const std::vector<Eigen::VectorXcd>& y) {
  const int n = estimate.antennas;
  StackedModel m;
  m.z.resize(n * estimate.num_ap);
  m.G_hat.resize(n * estimate.num_ap, estimate.num_ue);
  for (int l = 0; l < estimate.num_ap; ++l) {
    m.z.segment(l * n, n) = y[l];
    m.G_hat.middleRows(l * n, n) = estimate.H_hat[l];
  }
  return m;
}

CentralizedDensities centralized_log_densities(const StackedModel& model,
                                               const ChannelEstimate& estimate,
                                               const SystemConfig& cfg,
                                               const HypothesisSet& hypotheses,
                                               CovarianceMode mode) {
  const int n = estimate.antennas;
  const int total = n * estimate.num_ap;

  Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(total, total);
  if (mode == CovarianceMode::ConstantModulus)
    for (int l = 0; l < estimate.num_ap; ++l)
      cov.block(l * n, l * n, n, n) = psk_covariance(estimate, cfg, l);

  CentralizedDensities out;
  out.log_f.resize(hypotheses.size());
  for (std::size_t j = 0; j < hypotheses.size(); ++j) {
    if (mode == CovarianceMode::PerHypothesis)
      for (int l = 0; l < estimate.num_ap; ++l)
        cov.block(l * n, l * n, n, n) =
            conditional_covariance(hypotheses.symbols[j], estimate, cfg, l);

    Eigen::LLT<Eigen::MatrixXcd> llt(cov);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("stacked covariance not positive definite");

    double log_det = 0.0;
    for (int i = 0; i < total; ++i) log_det += std::log(llt.matrixLLT()(i, i).real());
    log_det *= 2.0;

    const Eigen::VectorXcd resid = model.z - model.G_hat * hypotheses.symbols[j];
    const double quad = resid.dot(llt.solve(resid)).real();
    out.log_f[j] = -total * std::log(std::numbers::pi) - log_det - quad;
  }
  return out;
}

LlrVector llr_centralized_oracle(const CentralizedDensities& densities,
                                 const HypothesisSet& hypotheses) {
  return per_bit_ratio(densities.log_f, hypotheses, false);
}

DetectionResult map_centralized_oracle(const CentralizedDensities& densities,
                                       const HypothesisSet& hypotheses) {
  // argmax of the density == argmin of quadratic + log det; the reported
  // objective is -log_f, i.e. that cost shifted by the constant NL ln pi.
  std::vector<double> cost(densities.log_f.size());
  for (std::size_t j = 0; j < cost.size(); ++j) cost[j] = -densities.log_f[j];
  return pick_minimum(cost, hypotheses);
}

LlrVector maxlog_centralized_oracle(const CentralizedDensities& densities,
                                    const HypothesisSet& hypotheses) {
  return per_bit_ratio(densities.log_f, hypotheses, true);
}

LlrVector llr_centralized_oracle(const StackedModel& model,
                                 const ChannelEstimate& estimate,
                                 const SystemConfig& cfg,
                                 const HypothesisSet& hypotheses) {
  return llr_centralized_oracle(
      centralized_log_densities(model, estimate, cfg, hypotheses,
                                CovarianceMode::PerHypothesis),
      hypotheses);
}

std::vector<double> apriori_llr(const std::vector<double>& priors) {
  std::vector<double> out(priors.size());
  for (std::size_t i = 0; i < priors.size(); ++i) {
    if (!(priors[i] > 0.0 && priors[i] < 1.0))
      throw std::invalid_argument("bit priors must lie strictly inside (0, 1)");
    out[i] = std::log(priors[i] / (1.0 - priors[i]));
  }
  return out;
}

}  // namespace stripesim
