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

#include "stripesim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stripesim {

Eigen::MatrixXcd psd_factor(const Eigen::MatrixXcd& r) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition of correlation matrix failed");

  Eigen::VectorXd lam = eig.eigenvalues();
  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -1e-12 * scale)
      throw std::runtime_error("correlation matrix is not positive semidefinite");
    lam(i) = std::max(lam(i), 0.0);
  }
  return eig.eigenvectors() * lam.cwiseSqrt().asDiagonal();
}

double log_det_hermitian_pd(const Eigen::MatrixXcd& m) {
  Eigen::LLT<Eigen::MatrixXcd> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("Cholesky failed: matrix is not positive definite");
  double acc = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < m.rows(); ++i) acc += std::log(l(i, i).real());
  return 2.0 * acc;
}

double log_sum_exp(const std::vector<double>& terms) {
  if (terms.empty()) throw std::invalid_argument("log_sum_exp of empty set");
  const double mx = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(mx)) return mx;  // all -inf, or a NaN/inf input
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - mx);
  return mx + std::log(acc);
}

}  // namespace stripesim
