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

#include "stripesim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace stripesim {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;
constexpr double kInvSqrt10 = 0.31622776601683794;

// 2-bit Gray code over descending amplitude: +3 <-> 00, +1 <-> 01,
// -1 <-> 11, -3 <-> 10. Index = label, value = 4-PAM level (unnormalized).
constexpr double kPam4Level[4] = {+3.0, +1.0, -3.0, -1.0};

}  // namespace

ConstellationId constellation_from_name(const std::string& name) {
  if (name == "BPSK") return ConstellationId::BPSK;
  if (name == "QPSK") return ConstellationId::QPSK;
  if (name == "16QAM" || name == "QAM16") return ConstellationId::QAM16;
  throw std::invalid_argument("unsupported constellation: " + name);
}

std::string constellation_name(ConstellationId id) {
  switch (id) {
    case ConstellationId::BPSK: return "BPSK";
    case ConstellationId::QPSK: return "QPSK";
    case ConstellationId::QAM16: return "16QAM";
  }
  throw std::invalid_argument("unsupported constellation id");
}

void SystemConfig::validate() const {
  if (num_ap < 1) throw std::invalid_argument("num_ap must be >= 1");
  if (antennas_per_ap < 1) throw std::invalid_argument("antennas_per_ap must be >= 1");
  if (num_ue < 1) throw std::invalid_argument("num_ue must be >= 1");
  if (coherence_len < 1) throw std::invalid_argument("coherence_len must be >= 1");
  if (pilot_len < 1) throw std::invalid_argument("pilot_len must be >= 1");
  if (pilot_len > coherence_len)
    throw std::invalid_argument("pilot_len must not exceed coherence_len");
  if (!(noise_power > 0.0)) throw std::invalid_argument("noise_power must be > 0");
  if (static_cast<int>(ue_powers.size()) != num_ue)
    throw std::invalid_argument("ue_powers must have one entry per UE");
  for (double p : ue_powers)
    if (!(p >= 0.0) || !std::isfinite(p))
      throw std::invalid_argument("ue_powers entries must be finite and >= 0");
  if (correlation == CorrelationKind::Exponential &&
      !(corr_decay >= 0.0 && corr_decay < 1.0))
    throw std::invalid_argument("corr_decay must lie in [0, 1)");
  if (beta.rows() != num_ue || beta.cols() != num_ap)
    throw std::invalid_argument("beta must be a num_ue x num_ap table");
  if (!(beta.array() > 0.0).all())
    throw std::invalid_argument("all large-scale gains beta must be > 0");
  if (hypothesis_cap < 1) throw std::invalid_argument("hypothesis_cap must be >= 1");
}

Constellation build_constellation(ConstellationId id) {
  Constellation c;
  switch (id) {
    case ConstellationId::BPSK:
      c.points = {{+1.0, 0.0}, {-1.0, 0.0}};
      c.bits_per_symbol = 1;
      c.constant_modulus = true;
      break;
    case ConstellationId::QPSK:
      // First bit steers I, second steers Q; bit 0 -> positive axis.
      c.points.resize(4);
      for (int label = 0; label < 4; ++label) {
        const double re = (label & 2) ? -kInvSqrt2 : +kInvSqrt2;
        const double im = (label & 1) ? -kInvSqrt2 : +kInvSqrt2;
        c.points[label] = {re, im};
      }
      c.bits_per_symbol = 2;
      c.constant_modulus = true;
      break;
    case ConstellationId::QAM16:
      // Bits (b0 b1 b2 b3): (b0 b1) Gray-label the I axis, (b2 b3) the Q axis.
      c.points.resize(16);
      for (int label = 0; label < 16; ++label) {
        const int i_label = (label >> 2) & 3;
        const int q_label = label & 3;
        c.points[label] = {kPam4Level[i_label] * kInvSqrt10,
                           kPam4Level[q_label] * kInvSqrt10};
      }
      c.bits_per_symbol = 4;
      c.constant_modulus = false;
      break;
    default:
      throw std::invalid_argument("unsupported constellation id");
  }
  return c;
}

std::vector<std::uint8_t> HypothesisSet::bits(std::size_t j) const {
  std::vector<std::uint8_t> out(num_bits());
  for (int i = 0; i < num_bits(); ++i) out[i] = static_cast<std::uint8_t>(bit(j, i));
  return out;
}

HypothesisSet enumerate_hypotheses(const Constellation& c, int num_ue,
                                   const std::vector<double>& ue_powers,
                                   std::uint64_t cap) {
  if (num_ue < 1) throw std::invalid_argument("num_ue must be >= 1");
  if (static_cast<int>(ue_powers.size()) != num_ue)
    throw std::invalid_argument("ue_powers must have one entry per UE");

  const std::uint64_t m_sz = static_cast<std::uint64_t>(c.size());
  std::uint64_t total = 1;
  for (int k = 0; k < num_ue; ++k) {
    if (total > cap / m_sz) {
      throw std::invalid_argument(
          "hypothesis count M^K exceeds the enumeration cap; exact-mode "
          "detection is infeasible here, use the simplified or max-log "
          "detectors (or raise hypothesis_cap)");
    }
    total *= m_sz;
  }

  const int m = c.bits_per_symbol;
  const int mk = m * num_ue;

  std::vector<double> amp(num_ue);
  for (int k = 0; k < num_ue; ++k) amp[k] = std::sqrt(ue_powers[k]);

  HypothesisSet set;
  set.bits_per_symbol = m;
  set.num_ue = num_ue;
  set.symbols.resize(total);
  for (std::uint64_t j = 0; j < total; ++j) {
    Eigen::VectorXcd s(num_ue);
    for (int k = 0; k < num_ue; ++k) {
      const auto label =
          static_cast<std::uint32_t>((j >> (mk - (k + 1) * m)) & ((1u << m) - 1));
      s(k) = amp[k] * c.symbol(label);
    }
    set.symbols[j] = std::move(s);
  }
  return set;
}

Eigen::VectorXcd bits_to_symbol_vector(const std::vector<std::uint8_t>& bits,
                                       const Constellation& c,
                                       const std::vector<double>& ue_powers) {
  const int m = c.bits_per_symbol;
  const int num_ue = static_cast<int>(ue_powers.size());
  if (static_cast<int>(bits.size()) != m * num_ue)
    throw std::invalid_argument("bit vector length must equal bits_per_symbol * K");

  Eigen::VectorXcd s(num_ue);
  for (int k = 0; k < num_ue; ++k) {
    std::uint32_t label = 0;
    for (int b = 0; b < m; ++b) label = (label << 1) | (bits[k * m + b] & 1u);
    s(k) = std::sqrt(ue_powers[k]) * c.symbol(label);
  }
  return s;
}

}  // namespace stripesim
