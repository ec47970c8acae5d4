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

#ifndef CSDSIM_CLI_HPP
#define CSDSIM_CLI_HPP

#include <ostream>

namespace csdsim
{
    inline constexpr int exit_ok = 0;
    inline constexpr int exit_validation = 1;
    inline constexpr int exit_usage = 2;

    // Subcommands: coverage, field, node-sim, design, sweep, validate.
    // Summaries go to `out` as "key: value" lines; diagnostics to `err`.
    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}

#endif
