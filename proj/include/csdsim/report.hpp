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

#ifndef CSDSIM_REPORT_HPP
#define CSDSIM_REPORT_HPP

#include "csdsim/coverage.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace csdsim
{
    // 9 significant digits, shortest of fixed/scientific; "inf" for unbounded.
    std::string format_number(double value);

    // position_m,avg_power_w,avg_power_dbm,active
    void emit_field_csv(const CoverageReport &report, std::ostream &out);
    // Throws std::runtime_error when the path cannot be written.
    void emit_field_csv(const CoverageReport &report, const std::filesystem::path &path);

    // required_power_w,required_power_dbm,coverage
    void emit_sweep_csv(const std::vector<CurvePoint> &curve, std::ostream &out);

    // time_s,voltage_v
    void emit_trajectory_csv(const std::vector<std::pair<double, double>> &trajectory, std::ostream &out);

    // Opens `path` for writing or throws std::runtime_error.
    void write_file(const std::filesystem::path &path, const std::string &contents);
}

#endif
