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

#ifndef CSDSIM_COVERAGE_HPP
#define CSDSIM_COVERAGE_HPP

#include "csdsim/node.hpp"
#include "csdsim/propagation.hpp"
#include "csdsim/rectifier.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace csdsim
{
    /// Energy transmission scheme.
    ///  SP1, SP2 : only the first (second) transmitter radiates
    ///  MP       : all transmitters on one carrier, phase offset on the first
    ///  MPCSD    : transmitter i on carrier f_ref + i * frequency_offset
    enum class Scheme
    {
        SP1,
        SP2,
        MP,
        MPCSD,
    };

    std::string_view to_string(Scheme scheme);
    Scheme scheme_from_string(std::string_view name); // sp1 | sp2 | mp | mpcsd, case-insensitive

    /// Antenna gains for the default scenario: exact dB conversions of 6 dBi
    /// and 2.15 dBi, or the rounded linear values 4 and 1.6.
    enum class GainConvention
    {
        DbExact,
        Rounded,
    };

    struct Scenario
    {
        Geometry geometry;
        LinkBudget budget;
        std::vector<Transmitter> transmitters; // base sources on the reference carrier
        Scheme scheme = Scheme::MPCSD;
        double frequency_offset_hz = 1e3;      // used by MPCSD only
        double phase_difference_rad = 0.0;     // theta_1 - theta_2
        RectifierModel rectifier;
        NodeConfig node;
        double consumed_power_w = default_consumed_power_w;   // P_csp used for activation
        std::optional<double> required_power_w;                // when set, activation thresholds avg power directly

        // Two 1 W transmitters 6 m apart, 6 dBi / 2.15 dBi, 916.8 MHz, 1 kHz
        // offset, 400 uW required power, 3 cm sampling grid.
        static Scenario defaults(GainConvention gains = GainConvention::DbExact);

        // Every violated invariant; empty when valid.
        std::vector<std::string> validation_errors() const;
        // Throws std::invalid_argument with all violations joined.
        void validate() const;

        // Carrier offset in effect: zero for every scheme but MPCSD.
        double effective_frequency_offset() const;

        // Transmitters radiating under the scheme, with carriers and phases filled in.
        std::vector<Transmitter> active_transmitters() const;

        bool operator==(const Scenario &) const = default;
    };

    // Capacitor-averaged received power at a position for the scenario's
    // scheme; +inf on a transmitter.
    double average_power(const Scenario &scenario, double position_m);

    // Rectified DC power with zero output for non-positive input.
    double rectified_power(const RectifierModel &rectifier, double input_power_w);

    // dc_output(avg_power) >= P_csp, with 1e-12 relative slack for rounding at
    // the calibration anchor.
    bool activation(double avg_power_w, const RectifierModel &rectifier, double consumed_power_w);

    // Smallest input power whose DC output exceeds consumed_power_w (to well
    // under 1e-9 W). Throws std::domain_error when unreachable.
    double required_power(const RectifierModel &rectifier, double consumed_power_w);

    struct CoverageReport
    {
        Scheme scheme = Scheme::MPCSD;
        std::vector<double> positions;
        std::vector<double> avg_power_w;
        std::vector<bool> active;
        std::vector<bool> singular;       // sample lies on a transmitter (power unbounded)
        double coverage = 0.0;            // singular samples count as active
        double coverage_excluding_singular = 0.0;
        double threshold_power_w = 0.0;   // average power at which activation starts
        bool lower_bound = false;         // MPCSD: Jensen makes this a lower bound of true activation
    };

    CoverageReport compute_coverage(const Scenario &scenario);

    // Coverage as the measured fraction of [guard, L - guard] where the
    // activation condition holds; boundaries located by bisection.
    double coverage_integral(const Scenario &scenario);

    struct CurvePoint
    {
        double required_power_w;
        double coverage;
    };

    // Threshold the grid power field at each required power. Input must be
    // positive and ascending; throws std::invalid_argument otherwise.
    std::vector<CurvePoint> coverage_curve(const Scenario &scenario, const std::vector<double> &required_powers_w);

    // Logarithmically spaced required powers between two dBm levels.
    std::vector<double> log_spaced_powers(double start_dbm, double stop_dbm, std::size_t points);

    // Largest transmitter spacing with full coverage: lambda/(4 pi) sqrt(P_t^e / P_req)
    // for SP, 2 sqrt(2) times that for MPCSD. Throws std::invalid_argument for MP.
    double max_spacing(Scheme scheme, const LinkBudget &budget, double equivalent_tx_power_w, double required_power_w);

    // Capacitor-averaged MPCSD power midway between two equal transmitters L apart.
    double mpcsd_midpoint_power(const LinkBudget &budget, double equivalent_tx_power_w, double spacing_m);

    enum class CoverageMethod
    {
        Grid,
        Integral,
    };

    struct PhaseSpread
    {
        double min_coverage = 0.0;
        double max_coverage = 0.0;
        double spread() const { return max_coverage - min_coverage; }
    };

    // Sweeps the phase difference over `samples` uniform values in [0, 2 pi).
    PhaseSpread coverage_phase_sensitivity(const Scenario &scenario, std::size_t samples,
                                           CoverageMethod method = CoverageMethod::Integral);

    struct JensenCheck
    {
        double mean_dc_w = 0.0;      // time mean of dc_output(P(t))
        double dc_of_mean_w = 0.0;   // dc_output(time mean of P(t))
    };

    // Both sides over one fading period of the scenario's transmitters,
    // sampled at `samples` uniform instants.
    JensenCheck jensen_check(const Scenario &scenario, double position_m, std::size_t samples = 1000);

    struct TimeDomainCheck
    {
        std::vector<double> positions;
        std::vector<bool> analytic_active;
        std::vector<bool> simulated_active;
        std::vector<double> delta_v;
        std::size_t skipped_singular = 0;

        std::size_t disagreements() const;
    };

    // Runs the node's judgment window at every non-singular grid sample with
    // the rectified instantaneous power as input and compares with the
    // analytic verdict. Positions are evaluated in parallel; results are in
    // grid order.
    TimeDomainCheck verify_activation_time_domain(const Scenario &scenario, const IntegrationOptions &opts = {});
}

#endif
