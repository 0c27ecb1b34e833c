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

#include <cstdint>

#include "stripesim/model.hpp"

namespace stripesim {

/// Real symbols crossing the AP-L <-> CPU link per coherence block.
/// The sequential count matches the published accounting exactly: the two
/// scalars (energy, log-det) our chain also forwards are NOT included; they
/// appear separately as chain_scalars_excluded.
struct FronthaulReport {
  std::int64_t centralized_load = 0;   // 2 N L tau_c
  std::int64_t sequential_load = 0;    // 2 K (tau_c - tau_p) + K^2
  double saving_percent = 0.0;         // 100 (1 - sequential/centralized)
  std::int64_t breakdown_data = 0;     // centralized: y_l, data channel uses
  std::int64_t breakdown_pilots = 0;   // centralized: pilot forwarding
  std::int64_t breakdown_matched = 0;  // sequential: a_L, 2K per channel use
  std::int64_t breakdown_gram = 0;     // sequential: M_L, K^2 once per block
  int chain_scalars_excluded = 2;      // b_L, c_L per block, not counted
  // Per-hypothesis statistics {b, M, a, c, d} in exact mode, informational:
  // M^K (K^2 + 2K + 4) real symbols, saturating on overflow.
  std::uint64_t exact_mode_overhead = 0;
};

std::int64_t centralized_load(const SystemConfig& cfg);
std::int64_t sequential_load(const SystemConfig& cfg);
FronthaulReport saving_report(const SystemConfig& cfg);

}  // namespace stripesim
