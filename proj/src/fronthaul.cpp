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

#include "stripesim/fronthaul.hpp"

#include <limits>
#include <stdexcept>

namespace stripesim {

std::int64_t centralized_load(const SystemConfig& cfg) {
  return 2LL * cfg.antennas_per_ap * cfg.num_ap * cfg.coherence_len;
}

std::int64_t sequential_load(const SystemConfig& cfg) {
  const std::int64_t k = cfg.num_ue;
  return 2LL * k * (cfg.coherence_len - cfg.pilot_len) + k * k;
}

FronthaulReport saving_report(const SystemConfig& cfg) {
  FronthaulReport rep;
  rep.centralized_load = centralized_load(cfg);
  rep.sequential_load = sequential_load(cfg);
  if (rep.centralized_load <= 0)
    throw std::invalid_argument("centralized load must be positive");
  rep.saving_percent =
      100.0 * (1.0 - static_cast<double>(rep.sequential_load) /
                         static_cast<double>(rep.centralized_load));

  const std::int64_t k = cfg.num_ue;
  rep.breakdown_data =
      2LL * cfg.antennas_per_ap * cfg.num_ap * (cfg.coherence_len - cfg.pilot_len);
  rep.breakdown_pilots = 2LL * cfg.antennas_per_ap * cfg.num_ap * cfg.pilot_len;
  rep.breakdown_matched = 2LL * k * (cfg.coherence_len - cfg.pilot_len);
  rep.breakdown_gram = k * k;

  const std::uint64_t per_hyp = static_cast<std::uint64_t>(k) * k + 2ULL * k + 4ULL;
  const std::uint64_t m =
      static_cast<std::uint64_t>(build_constellation(cfg.constellation).size());
  std::uint64_t hyp_count = 1;
  bool saturated = false;
  for (int i = 0; i < cfg.num_ue; ++i) {
    if (hyp_count > std::numeric_limits<std::uint64_t>::max() / m) {
      saturated = true;
      break;
    }
    hyp_count *= m;
  }
  rep.exact_mode_overhead =
      (saturated ||
       hyp_count > std::numeric_limits<std::uint64_t>::max() / per_hyp)
          ? std::numeric_limits<std::uint64_t>::max()
          : hyp_count * per_hyp;
  return rep;
}

}  // namespace stripesim
