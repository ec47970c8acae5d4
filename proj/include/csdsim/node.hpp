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

#ifndef CSDSIM_NODE_HPP
#define CSDSIM_NODE_HPP

#include "csdsim/rectifier.hpp"

#include <functional>
#include <string_view>
#include <utility>
#include <vector>

namespace csdsim
{
    /// Duty-cycled battery-less node. Each cycle of length duty_cycle_s is a
    /// sleep slice (sensor powered, MCU and radio asleep) followed by a
    /// transmit slice of tx_duration_s. Consumption does not depend on the
    /// capacitor voltage.
    struct NodeConfig
    {
        double sleep_power_w = 4.23e-6;
        double tx_power_consumption_w = 13.8e-3;
        double duty_cycle_s = 1.0;
        double tx_duration_s = 10e-3;
        double capacitance_f = 50e-3;
        double typical_voltage_v = 2.3;   // pre-charge and restart voltage
        double min_voltage_v = 2.2;       // brown-out
        double sensor_init_time_s = 15.0;
        double judgment_window_s = 20.0;

        double sleep_duration_s() const { return duty_cycle_s - tx_duration_s; }

        // Throws std::invalid_argument listing the first violated constraint.
        void validate() const;

        bool operator==(const NodeConfig &) const = default;
    };

    /// Measured consumption levels. case0 sleeps both MCU and radio; case1
    /// sleeps neither; case2 sleeps only the MCU; case3 only the radio;
    /// case4 is case0 with the data transmission raised to 13 dBm.
    enum class ConsumptionCase
    {
        case0,
        case1,
        case2,
        case3,
        case4,
    };

    NodeConfig node_preset(ConsumptionCase which);
    ConsumptionCase consumption_case_from_string(std::string_view name);
    std::string_view to_string(ConsumptionCase which);

    enum class NodeMode
    {
        SleepSensorOnly,
        TxActive,
        Dead,
    };

    std::string_view to_string(NodeMode mode);

    struct NodeState
    {
        NodeMode mode = NodeMode::SleepSensorOnly;
        double capacitor_voltage_v = 0.0;
        double clock_s = 0.0;
        double cycle_time_s = 0.0;        // position inside the current duty cycle
        double init_remaining_s = 0.0;    // sensor warm-up still pending; no Tx while > 0

        // Pre-charged to V_typ at the start of a duty cycle, sensor ready.
        static NodeState warm(const NodeConfig &cfg);
        // Pre-charged to V_typ with the sensor warm-up still to run.
        static NodeState cold(const NodeConfig &cfg);
    };

    // Instantaneous consumption: P_s for (t mod T_d) in (0, T_s], P_Tx otherwise.
    double consumed_power_at(const NodeConfig &cfg, double time_s);

    // (P_s T_s + P_Tx T_Tx) / T_d
    double average_consumed_power(const NodeConfig &cfg);

    // 2 T_Tx (P_Tx - P_csp) / (V_typ^2 - V_min^2), P_csp = P_req * Gamma(P_req).
    // Throws std::domain_error when V_typ <= V_min.
    double min_capacitance(const NodeConfig &cfg, double required_power_w, double efficiency_at_required);

    // Power drawn in the given state's mode.
    double mode_power(const NodeConfig &cfg, const NodeState &state);

    // Advances timers by dt and applies mode transitions; does not touch the
    // voltage. Dead is left only once the voltage has recovered to V_typ, and
    // the sensor warm-up restarts at that point.
    NodeState step_state_machine(const NodeConfig &cfg, const NodeState &state, double dt_s);

    using PowerSource = std::function<double(double time_s)>;

    struct SimulationResult
    {
        NodeState final_state;
        std::vector<std::pair<double, double>> trajectory; // (t, V)
        double min_voltage_v = 0.0;
        bool died = false;
        double energy_in_j = 0.0;
        double energy_consumed_j = 0.0;
    };

    struct IntegrationOptions
    {
        double step_s = 0.0;              // 0 -> T_Tx / 100
        double record_interval_s = 10e-3; // trajectory sampling
    };

    /// Fixed-step integration of C/2 dV^2/dt = dc_input(t) - consumption(t).
    /// The DC input is integrated with the trapezoidal rule; the piecewise
    /// constant consumption is integrated exactly within each step.
    /// Throws std::invalid_argument if the step exceeds T_Tx / 10.
    SimulationResult integrate(const NodeConfig &cfg, const NodeState &initial, const PowerSource &dc_input,
                               double duration_s, const IntegrationOptions &opts = {});

    struct ActivationVerdict
    {
        bool active = false;
        double delta_v = 0.0;
        double window_start_v = 0.0;
        double window_end_v = 0.0;
        bool died = false;
        std::vector<std::pair<double, double>> trajectory;
    };

    // Runs for duration_s and judges over its final judgment_window_s: active
    // when the voltage did not fall over the window and the node never browned out.
    ActivationVerdict simulate(const NodeConfig &cfg, const NodeState &initial, const PowerSource &dc_input,
                               double duration_s, const IntegrationOptions &opts = {});

    // Bench procedure: pre-charge to V_typ, wait out the sensor warm-up when
    // starting cold, set the capacitor back to V_typ and judge over the window.
    ActivationVerdict run_activation_protocol(const NodeConfig &cfg, const PowerSource &dc_input, bool cold_start,
                                              const IntegrationOptions &opts = {});

    // Constant-input charging run with the node held asleep, as used to
    // measure rectifier efficiency.
    EfficiencyTrace measure_efficiency_trace(const RectifierModel &rectifier, double input_power_w,
                                             double capacitance_f, double sleep_power_w, double v_start,
                                             double duration_s, double step_s);
}

#endif
