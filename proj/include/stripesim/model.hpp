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
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace stripesim {

enum class ConstellationId { BPSK, QPSK, QAM16 };

enum class CorrelationKind { Identity, Exponential };

ConstellationId constellation_from_name(const std::string& name);
std::string constellation_name(ConstellationId id);

/// Full scenario description. Immutable once validated; shared freely across
/// Monte Carlo workers.
struct SystemConfig {
  int num_ap = 1;          // L: access points on the chain
  int antennas_per_ap = 1; // N
  int num_ue = 1;          // K
  int coherence_len = 1;   // tau_c, channel uses per coherence block
  int pilot_len = 1;       // tau_p, channel uses spent on pilots
  double noise_power = 1.0;         // sigma^2, linear scale
  std::vector<double> ue_powers;    // p_k, linear scale, size K
  ConstellationId constellation = ConstellationId::QPSK;
  CorrelationKind correlation = CorrelationKind::Identity;
  double corr_decay = 0.0;          // rho of the exponential model
  Eigen::MatrixXd beta;             // K x L large-scale gains
  std::uint64_t seed = 0;
  // Exhaustive enumeration guard: M^K above this is refused.
  std::uint64_t hypothesis_cap = std::uint64_t(1) << 20;

  /// Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

/// Unit-average-energy symbol alphabet. `points` is indexed by bit label:
/// points[label] is the symbol whose bits_per_symbol-bit Gray label equals
/// `label` read MSB-first, so the label bijection is the index map itself.
struct Constellation {
  std::vector<std::complex<double>> points;
  int bits_per_symbol = 0;
  bool constant_modulus = false;

  int size() const { return static_cast<int>(points.size()); }
  std::complex<double> symbol(std::uint32_t label) const { return points[label]; }
};

/// Labeling convention, fixed once for reproducible LLR signs:
/// bit 0 maps to the most positive coordinate, Gray code per I/Q axis,
/// the first bit of a symbol's group steers the real axis.
Constellation build_constellation(ConstellationId id);

/// All M^K transmit vectors with per-UE sqrt(p_k) scaling applied. The
/// hypothesis index IS the stacked mK-bit pattern (UE 0's bits first, each
/// symbol label MSB-first), so index j carries its bit pattern b(j) and
/// every pattern occurs exactly once by construction.
struct HypothesisSet {
  std::vector<Eigen::VectorXcd> symbols;  // size M^K, entry = K-vector
  int bits_per_symbol = 0;
  int num_ue = 0;

  std::size_t size() const { return symbols.size(); }
  int num_bits() const { return bits_per_symbol * num_ue; }

  /// Bit i (0-based, UE-major, MSB-first within a symbol) of hypothesis j.
  int bit(std::size_t j, int i) const {
    return static_cast<int>((j >> (num_bits() - 1 - i)) & 1u);
  }

  std::vector<std::uint8_t> bits(std::size_t j) const;
};

/// Throws std::invalid_argument when M^K exceeds `cap`; exact-mode detection
/// is then unavailable and callers must fall back to simplified/max-log
/// processing on smaller subproblems.
HypothesisSet enumerate_hypotheses(const Constellation& c, int num_ue,
                                   const std::vector<double>& ue_powers,
                                   std::uint64_t cap = std::uint64_t(1) << 20);

/// Inverse of the labeling used by HypothesisSet: UE k's symbol is
/// sqrt(p_k) * points[label of bits [k*m, (k+1)*m)].
Eigen::VectorXcd bits_to_symbol_vector(const std::vector<std::uint8_t>& bits,
                                       const Constellation& c,
                                       const std::vector<double>& ue_powers);

}  // namespace stripesim
