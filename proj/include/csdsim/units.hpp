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

#ifndef CSDSIM_UNITS_HPP
#define CSDSIM_UNITS_HPP

#include <cmath>
#include <numbers>

namespace csdsim
{
    inline constexpr double speed_of_light = 299792458.0; // m/s

    inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1e3); }
    inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

    inline double wavelength_of(double frequency_hz) { return speed_of_light / frequency_hz; }
}

#endif
