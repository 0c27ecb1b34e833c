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

namespace stripesim {

/// Factor A with A A^H = R for Hermitian PSD R, via eigendecomposition.
/// Eigenvalues in [-1e-12 * scale, 0) are clamped to zero; anything more
/// negative throws std::runtime_error (input is not PSD).
Eigen::MatrixXcd psd_factor(const Eigen::MatrixXcd& r);

/// ln det of a Hermitian positive definite matrix via Cholesky.
/// Throws std::runtime_error when the factorization fails.
double log_det_hermitian_pd(const Eigen::MatrixXcd& m);

/// Stable log(sum(exp(terms))); terms must be nonempty.
double log_sum_exp(const std::vector<double>& terms);

}  // namespace stripesim
