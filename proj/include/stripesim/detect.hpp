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
#include "stripesim/statistics.hpp"

namespace stripesim {

/// Per-bit posterior log-likelihood ratios ln P(b=1|z) / P(b=0|z), one per
/// transmitted bit (mK values, UE-major order matching HypothesisSet).
struct LlrVector {
  std::vector<double> values;
};

struct DetectionResult {
  Eigen::VectorXcd s_hat;
  std::size_t hypothesis_index = 0;
  double objective = 0.0;  // minimized cost at the decision
};

/// Exhaustive minimizer of s^H M s - 2 Re{a^H s} over the hypothesis set.
/// Ties break toward the lowest hypothesis index.
DetectionResult map_simplified(const ApStatistics& stats,
                               const HypothesisSet& hypotheses);

/// Exhaustive minimizer of the full per-hypothesis cost
/// b + s^H M s - 2 Re{a^H s} + c.
DetectionResult map_exact(const HypothesisStatistics& stats,
                          const HypothesisSet& hypotheses);

/// Posterior LLRs from per-hypothesis statistics; all arithmetic in log
/// domain (term = ln d - b - s^H M s + 2 Re{a^H s}, reduced by logsumexp).
LlrVector llr_exact(const HypothesisStatistics& stats,
                    const HypothesisSet& hypotheses);

/// Posterior LLRs from hypothesis-independent statistics
/// (term = -s^H M s + 2 Re{a^H s}); exact for constant-modulus alphabets.
LlrVector llr_simplified(const ApStatistics& stats,
                         const HypothesisSet& hypotheses);

/// Max-log variants: logsumexp replaced by max over the same terms.
LlrVector llr_maxlog(const ApStatistics& stats, const HypothesisSet& hypotheses);
LlrVector llr_maxlog(const HypothesisStatistics& stats,
                     const HypothesisSet& hypotheses);

/// Which noise covariance the centralized reference uses.
enum class CovarianceMode {
  PerHypothesis,    // conditional (exact) covariance per hypothesis
  ConstantModulus,  // hypothesis-independent covariance
};

/// Stacked single-receiver view of the whole chain: z = [y_1; ...; y_L],
/// G_hat = [H_hat_1; ...; H_hat_L].
struct StackedModel {
  Eigen::VectorXcd z;
  Eigen::MatrixXcd G_hat;
};

StackedModel stack_model(const ChannelEstimate& estimate,
                         const std::vector<Eigen::VectorXcd>& y);

/// Reference path: per-hypothesis Gaussian log densities ln f(z | s, G_hat)
/// evaluated directly on the stacked model with one dense Cholesky per
/// hypothesis. No sequential structure; this is the benchmark the chain is
/// tested against.
struct CentralizedDensities {
  std::vector<double> log_f;
};

CentralizedDensities centralized_log_densities(const StackedModel& model,
                                               const ChannelEstimate& estimate,
                                               const SystemConfig& cfg,
                                               const HypothesisSet& hypotheses,
                                               CovarianceMode mode);

LlrVector llr_centralized_oracle(const CentralizedDensities& densities,
                                 const HypothesisSet& hypotheses);
DetectionResult map_centralized_oracle(const CentralizedDensities& densities,
                                       const HypothesisSet& hypotheses);
LlrVector maxlog_centralized_oracle(const CentralizedDensities& densities,
                                    const HypothesisSet& hypotheses);

/// Convenience overload building the densities with the exact covariance.
LlrVector llr_centralized_oracle(const StackedModel& model,
                                 const ChannelEstimate& estimate,
                                 const SystemConfig& cfg,
                                 const HypothesisSet& hypotheses);

/// ln(P(b=1)/P(b=0)) per bit. Throws std::invalid_argument unless every
/// prior lies strictly inside (0, 1).
std::vector<double> apriori_llr(const std::vector<double>& priors);

}  // namespace stripesim
