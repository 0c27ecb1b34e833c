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

#include "stripesim/rng.hpp"

namespace stripesim {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  // Counter-based split: jump the SplitMix64 stream seeded by `master` to
  // position `counter` and mix once more through the finalizer.
  return splitmix64(splitmix64(master) + counter * 0x9E3779B97F4A7C15ULL);
}

Rng make_rng(std::uint64_t master, std::uint64_t counter) {
  return Rng(derive_seed(master, counter));
}

std::complex<double> randcn(Rng& rng) {
  static constexpr double kHalfSqrt2 = 0.7071067811865476;  // 1/sqrt(2)
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double re = gauss(rng);
  const double im = gauss(rng);
  return {re * kHalfSqrt2, im * kHalfSqrt2};
}

Eigen::VectorXcd randcn_vector(Rng& rng, Eigen::Index n) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = randcn(rng);
  return v;
}

Eigen::MatrixXcd randcn_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = randcn(rng);
  return m;
}

}  // namespace stripesim
