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

#ifndef CSDSIM_REGULATORY_HPP
#define CSDSIM_REGULATORY_HPP

#include "csdsim/coverage.hpp"

#include <string>
#include <vector>

namespace csdsim
{
    struct RegulatoryProfile
    {
        std::string name;
        double max_eirp_w = 0.0;
        double max_tx_power_w = 0.0;        // 0: unrestricted
        double band_min_hz = 0.0;
        double band_max_hz = 0.0;
        double channel_bandwidth_hz = 0.0;  // subcarriers must fit in one channel; 0: unchecked
        bool carrier_sense_required = false;

        // Japanese 920 MHz band, high-power passive tag category without
        // listen-before-talk: 1 W conducted, 4 W EIRP, 200 kHz channels.
        static RegulatoryProfile japan_920mhz();
    };

    struct RegulatoryViolation
    {
        std::string subject;   // e.g. "tx[1]"
        std::string message;
    };

    // Empty result means compliant. Checks the transmitters radiating under
    // the scenario's scheme.
    std::vector<RegulatoryViolation> validate_regulatory(const Scenario &scenario, const RegulatoryProfile &profile);
}

#endif
