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

#ifndef CSDSIM_SCENARIO_FILE_HPP
#define CSDSIM_SCENARIO_FILE_HPP

#include "csdsim/coverage.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace csdsim
{
    struct SweepSpec
    {
        double start_w = 1e-6;   // -30 dBm
        double stop_w = 1e-2;    // +10 dBm
        std::size_t points = 81;

        std::vector<double> powers() const;
        bool operator==(const SweepSpec &) const = default;
    };

    struct OutputPaths
    {
        std::string field_csv;
        std::string sweep_csv;
        std::string trajectory_csv;
        bool operator==(const OutputPaths &) const = default;
    };

    // Everything a scenario document can hold.
    struct ScenarioFile
    {
        Scenario scenario = Scenario::defaults();
        std::optional<SweepSpec> sweep;
        OutputPaths output;

        bool operator==(const ScenarioFile &) const = default;
    };

    // Carries every problem found in a document, not just the first.
    class ScenarioError : public std::runtime_error
    {
    public:
        explicit ScenarioError(std::vector<std::string> errors);
        const std::vector<std::string> &errors() const { return errors_; }

    private:
        std::vector<std::string> errors_;
    };

    /// Parses a JSON scenario document. Omitted fields take the default
    /// two-transmitter values; with "use_defaults": false the
    /// transmitters, geometry and scheme must be given explicitly. Unknown
    /// keys are rejected. Throws ScenarioError.
    ScenarioFile parse_scenario(const std::string &text);

    ScenarioFile load_scenario(const std::filesystem::path &path);

    // Fully explicit document that parses back to an equal ScenarioFile.
    std::string serialize_scenario(const ScenarioFile &file);
}

#endif
