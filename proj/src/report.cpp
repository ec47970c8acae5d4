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

#include "csdsim/report.hpp"
#include "csdsim/units.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace csdsim
{
    std::string format_number(double value)
    {
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        if (value == 0.0)
            return "0"; // no "-0"
        return fmt::format("{:.9g}", value);
    }

    void emit_field_csv(const CoverageReport &report, std::ostream &out)
    {
        if (report.positions.empty())
            throw std::invalid_argument("coverage report is empty");
        out << "position_m,avg_power_w,avg_power_dbm,active\n";
        for (std::size_t k = 0; k < report.positions.size(); ++k)
        {
            double p = report.avg_power_w[k];
            out << format_number(report.positions[k]) << ',' << format_number(p) << ','
                << format_number(p > 0.0 ? watts_to_dbm(p) : -std::numeric_limits<double>::infinity()) << ','
                << (report.active[k] ? 1 : 0) << '\n';
        }
    }

    void emit_field_csv(const CoverageReport &report, const std::filesystem::path &path)
    {
        std::ostringstream ss;
        emit_field_csv(report, ss);
        write_file(path, ss.str());
    }

    void emit_sweep_csv(const std::vector<CurvePoint> &curve, std::ostream &out)
    {
        out << "required_power_w,required_power_dbm,coverage\n";
        for (const auto &pt : curve)
            out << format_number(pt.required_power_w) << ',' << format_number(watts_to_dbm(pt.required_power_w)) << ','
                << format_number(pt.coverage) << '\n';
    }

    void emit_trajectory_csv(const std::vector<std::pair<double, double>> &trajectory, std::ostream &out)
    {
        out << "time_s,voltage_v\n";
        for (const auto &[t, v] : trajectory)
            out << format_number(t) << ',' << format_number(v) << '\n';
    }

    void write_file(const std::filesystem::path &path, const std::string &contents)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot write '" + path.string() + "'");
        f << contents;
        if (!f)
            throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}
