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

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace stripesim {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; bijective 64-bit mixing.
std::uint64_t splitmix64(std::uint64_t z);

/// Seed for substream `counter` of a master seed. Substreams are the unit of
/// parallelism: trial t of an experiment always uses derive_seed(master, t),
/// so results do not depend on scheduling or on which trials actually run.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

Rng make_rng(std::uint64_t master, std::uint64_t counter);

/// One CN(0,1) sample: unit total variance, split evenly over re/im.
std::complex<double> randcn(Rng& rng);

/// n i.i.d. CN(0,1) entries, drawn in index order.
Eigen::VectorXcd randcn_vector(Rng& rng, Eigen::Index n);

/// rows x cols i.i.d. CN(0,1) entries, drawn column by column.
Eigen::MatrixXcd randcn_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

}  // namespace stripesim
