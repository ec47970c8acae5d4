// SPDX-License-Identifier: Apache-2.0
//
// csdsim - multi-point wireless energy transmission simulator
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
// ------------------------------------------------------------------------

#include "csdsim/regulatory.hpp"
#include "csdsim/units.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace csdsim
{
    RegulatoryProfile RegulatoryProfile::japan_920mhz()
    {
        return {"japan-920mhz-a", 4.0, 1.0, 915.8e6, 921.4e6, 200e3, false};
    }

    std::vector<RegulatoryViolation> validate_regulatory(const Scenario &scenario, const RegulatoryProfile &profile)
    {
        std::vector<RegulatoryViolation> out;
        const auto txs = scenario.active_transmitters();
        // EIRP exactly at the ceiling is compliant
        constexpr double slack = 1e-12;

        double f_lo = txs.empty() ? 0.0 : txs.front().carrier_frequency_hz;
        double f_hi = f_lo;
        for (std::size_t i = 0; i < txs.size(); ++i)
        {
            const auto &tx = txs[i];
            std::string who = fmt::format("tx[{}]", i);
            double eirp = tx.tx_power_w * tx.antenna_gain;
            if (eirp > profile.max_eirp_w * (1.0 + slack))
                out.push_back({who, fmt::format("EIRP {:.2f} dBm exceeds limit {:.2f} dBm", watts_to_dbm(eirp),
                                                watts_to_dbm(profile.max_eirp_w))});
            if (profile.max_tx_power_w > 0.0 && tx.tx_power_w > profile.max_tx_power_w * (1.0 + slack))
                out.push_back({who, fmt::format("transmit power {:.2f} dBm exceeds limit {:.2f} dBm",
                                                watts_to_dbm(tx.tx_power_w), watts_to_dbm(profile.max_tx_power_w))});
            if (tx.carrier_frequency_hz < profile.band_min_hz || tx.carrier_frequency_hz > profile.band_max_hz)
                out.push_back({who, fmt::format("carrier {:.4f} MHz outside band [{:.4f}, {:.4f}] MHz",
                                                tx.carrier_frequency_hz / 1e6, profile.band_min_hz / 1e6,
                                                profile.band_max_hz / 1e6)});
            f_lo = std::min(f_lo, tx.carrier_frequency_hz);
            f_hi = std::max(f_hi, tx.carrier_frequency_hz);
        }
        if (profile.channel_bandwidth_hz > 0.0 && f_hi - f_lo >= profile.channel_bandwidth_hz)
            out.push_back({"subcarriers", fmt::format("carrier spread {:.1f} kHz does not fit a {:.1f} kHz channel",
                                                      (f_hi - f_lo) / 1e3, profile.channel_bandwidth_hz / 1e3)});
        if (profile.carrier_sense_required)
            out.push_back({"profile", "continuous energy transmission is not allowed where carrier sensing is required"});
        return out;
    }
}
