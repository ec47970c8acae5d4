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

#include "csdsim/node.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace csdsim
{
    namespace
    {
        // Timer comparisons tolerate accumulated rounding of this size.
        double timing_eps(const NodeConfig &cfg) { return 1e-9 * cfg.duty_cycle_s; }

        // Level of the measured consumption cases, solved for the sleep-slice
        // power so that the cycle average matches.
        NodeConfig with_average(double average_w)
        {
            NodeConfig cfg;
            cfg.sleep_power_w = (average_w * cfg.duty_cycle_s - cfg.tx_power_consumption_w * cfg.tx_duration_s) /
                                cfg.sleep_duration_s();
            return cfg;
        }

        // Energy drawn by a running (not dead, not warming up) node over the
        // cycle-time interval [c0, c0 + h].
        double cycle_energy(const NodeConfig &cfg, double c0, double h)
        {
            const double ts = cfg.sleep_duration_s();
            const double td = cfg.duty_cycle_s;
            double tx_overlap = 0.0;
            double c1 = c0 + h;
            for (double k = std::floor(c0 / td); k * td < c1; k += 1.0)
            {
                double a = std::max(c0, k * td + ts);
                double b = std::min(c1, (k + 1.0) * td);
                if (b > a)
                    tx_overlap += b - a;
            }
            return cfg.sleep_power_w * h + (cfg.tx_power_consumption_w - cfg.sleep_power_w) * tx_overlap;
        }

        // Energy drawn over the next dt seconds starting from the given state.
        double step_energy(const NodeConfig &cfg, const NodeState &s, double dt)
        {
            if (s.mode == NodeMode::Dead)
                return 0.0;
            if (s.init_remaining_s > 0.0)
            {
                double warm = std::min(dt, s.init_remaining_s);
                double e = cfg.sleep_power_w * warm;
                if (dt > warm)
                    e += cycle_energy(cfg, 0.0, dt - warm);
                return e;
            }
            return cycle_energy(cfg, s.cycle_time_s, dt);
        }
    }

    void NodeConfig::validate() const
    {
        if (!(duty_cycle_s > 0.0))
            throw std::invalid_argument("duty_cycle must be positive");
        if (!(tx_duration_s > 0.0 && tx_duration_s < duty_cycle_s))
            throw std::invalid_argument("tx_duration must lie in (0, duty_cycle)");
        if (!(sleep_power_w >= 0.0))
            throw std::invalid_argument("sleep_power must be >= 0");
        if (!(sleep_power_w < tx_power_consumption_w))
            throw std::invalid_argument("sleep_power must be below tx_power_consumption");
        if (!(capacitance_f > 0.0))
            throw std::invalid_argument("capacitance must be positive");
        if (!(min_voltage_v >= 0.0 && min_voltage_v < typical_voltage_v))
            throw std::invalid_argument("min_voltage must lie in [0, typical_voltage)");
        if (!(sensor_init_time_s >= 0.0))
            throw std::invalid_argument("sensor_init_time must be >= 0");
        if (!(judgment_window_s > 0.0))
            throw std::invalid_argument("judgment_window must be positive");
    }

    NodeConfig node_preset(ConsumptionCase which)
    {
        switch (which)
        {
        case ConsumptionCase::case0:
            return NodeConfig{};
        case ConsumptionCase::case1:
            return with_average(5.89e-3);
        case ConsumptionCase::case2:
            return with_average(2.35e-3);
        case ConsumptionCase::case3:
            return with_average(3.72e-3);
        case ConsumptionCase::case4:
        {
            // Transmit current rises from ~10 mA to ~45 mA at 2.3 V for the
            // 4 ms data burst inside the 10 ms Tx slice.
            NodeConfig cfg;
            cfg.tx_power_consumption_w += (45e-3 - 10e-3) * 2.3 * (4e-3 / cfg.tx_duration_s);
            return cfg;
        }
        }
        throw std::invalid_argument("unknown consumption case");
    }

    ConsumptionCase consumption_case_from_string(std::string_view name)
    {
        for (auto c : {ConsumptionCase::case0, ConsumptionCase::case1, ConsumptionCase::case2, ConsumptionCase::case3,
                       ConsumptionCase::case4})
            if (to_string(c) == name)
                return c;
        throw std::invalid_argument("unknown consumption preset '" + std::string(name) + "'");
    }

    std::string_view to_string(ConsumptionCase which)
    {
        switch (which)
        {
        case ConsumptionCase::case0: return "case0";
        case ConsumptionCase::case1: return "case1";
        case ConsumptionCase::case2: return "case2";
        case ConsumptionCase::case3: return "case3";
        case ConsumptionCase::case4: return "case4";
        }
        return "?";
    }

    std::string_view to_string(NodeMode mode)
    {
        switch (mode)
        {
        case NodeMode::SleepSensorOnly: return "sleep";
        case NodeMode::TxActive: return "tx";
        case NodeMode::Dead: return "dead";
        }
        return "?";
    }

    NodeState NodeState::warm(const NodeConfig &cfg)
    {
        NodeState s;
        s.capacitor_voltage_v = cfg.typical_voltage_v;
        return s;
    }

    NodeState NodeState::cold(const NodeConfig &cfg)
    {
        NodeState s = warm(cfg);
        s.init_remaining_s = cfg.sensor_init_time_s;
        return s;
    }

    double consumed_power_at(const NodeConfig &cfg, double time_s)
    {
        double phase = std::fmod(time_s, cfg.duty_cycle_s);
        if (phase > 0.0 && phase <= cfg.sleep_duration_s())
            return cfg.sleep_power_w;
        return cfg.tx_power_consumption_w;
    }

    double average_consumed_power(const NodeConfig &cfg)
    {
        return (cfg.sleep_power_w * cfg.sleep_duration_s() + cfg.tx_power_consumption_w * cfg.tx_duration_s) /
               cfg.duty_cycle_s;
    }

    double min_capacitance(const NodeConfig &cfg, double required_power_w, double efficiency_at_required)
    {
        double dv2 = cfg.typical_voltage_v * cfg.typical_voltage_v - cfg.min_voltage_v * cfg.min_voltage_v;
        if (!(cfg.typical_voltage_v > cfg.min_voltage_v))
            throw std::domain_error("typical voltage must exceed minimum voltage");
        double consumed = required_power_w * efficiency_at_required;
        return 2.0 * cfg.tx_duration_s * (cfg.tx_power_consumption_w - consumed) / dv2;
    }

    double mode_power(const NodeConfig &cfg, const NodeState &state)
    {
        switch (state.mode)
        {
        case NodeMode::SleepSensorOnly: return cfg.sleep_power_w;
        case NodeMode::TxActive: return cfg.tx_power_consumption_w;
        case NodeMode::Dead: return 0.0;
        }
        return 0.0;
    }

    NodeState step_state_machine(const NodeConfig &cfg, const NodeState &state, double dt_s)
    {
        const double eps = timing_eps(cfg);
        NodeState s = state;
        s.clock_s += dt_s;

        if (s.mode == NodeMode::Dead)
        {
            if (s.capacitor_voltage_v >= cfg.typical_voltage_v)
            {
                s.mode = NodeMode::SleepSensorOnly;
                s.init_remaining_s = cfg.sensor_init_time_s;
                s.cycle_time_s = 0.0;
            }
            return s;
        }
        if (s.capacitor_voltage_v < cfg.min_voltage_v)
        {
            s.mode = NodeMode::Dead;
            return s;
        }

        double dt = dt_s;
        if (s.init_remaining_s > 0.0)
        {
            double warm = std::min(dt, s.init_remaining_s);
            s.init_remaining_s -= warm;
            dt -= warm;
            if (s.init_remaining_s <= eps)
            {
                s.init_remaining_s = 0.0;
                s.cycle_time_s = 0.0;
            }
            else
            {
                s.mode = NodeMode::SleepSensorOnly;
                return s;
            }
        }

        s.cycle_time_s += dt;
        while (s.cycle_time_s >= cfg.duty_cycle_s - eps)
            s.cycle_time_s -= cfg.duty_cycle_s;
        if (std::abs(s.cycle_time_s) <= eps)
            s.cycle_time_s = 0.0;

        s.mode = s.cycle_time_s >= cfg.sleep_duration_s() - eps ? NodeMode::TxActive : NodeMode::SleepSensorOnly;
        return s;
    }

    SimulationResult integrate(const NodeConfig &cfg, const NodeState &initial, const PowerSource &dc_input,
                               double duration_s, const IntegrationOptions &opts)
    {
        cfg.validate();
        double step = opts.step_s > 0.0 ? opts.step_s : cfg.tx_duration_s / 100.0;
        if (step > cfg.tx_duration_s / 10.0 * (1.0 + 1e-12))
            throw std::invalid_argument("integration step must not exceed tx_duration / 10");
        if (!(duration_s >= 0.0))
            throw std::invalid_argument("duration must be >= 0");

        auto n = static_cast<std::size_t>(std::llround(std::ceil(duration_s / step - 1e-9)));
        double h = n > 0 ? duration_s / static_cast<double>(n) : 0.0;
        std::size_t record_every = 1;
        if (n > 0 && opts.record_interval_s > h)
            record_every = static_cast<std::size_t>(std::llround(opts.record_interval_s / h));

        SimulationResult out;
        NodeState s = initial;
        // A state handed in mid-cycle has its mode derived from the timers.
        if (s.mode != NodeMode::Dead)
            s = step_state_machine(cfg, s, 0.0);
        const double t0 = s.clock_s;
        double v2 = s.capacitor_voltage_v * s.capacitor_voltage_v;
        out.min_voltage_v = s.capacitor_voltage_v;
        out.trajectory.emplace_back(t0, s.capacitor_voltage_v);

        double p_prev = dc_input(t0);
        for (std::size_t k = 1; k <= n; ++k)
        {
            double t = t0 + static_cast<double>(k) * h;
            double p_next = dc_input(t);
            double e_in = 0.5 * (p_prev + p_next) * h;
            double e_out = step_energy(cfg, s, h);
            p_prev = p_next;

            v2 += 2.0 * (e_in - e_out) / cfg.capacitance_f;
            v2 = std::max(v2, 0.0);
            out.energy_in_j += e_in;
            out.energy_consumed_j += e_out;

            s.capacitor_voltage_v = std::sqrt(v2);
            s = step_state_machine(cfg, s, h);
            s.clock_s = t;
            if (s.mode == NodeMode::Dead)
                out.died = true;
            out.min_voltage_v = std::min(out.min_voltage_v, s.capacitor_voltage_v);
            if (k % record_every == 0 || k == n)
                out.trajectory.emplace_back(t, s.capacitor_voltage_v);
        }
        out.final_state = s;
        return out;
    }

    ActivationVerdict simulate(const NodeConfig &cfg, const NodeState &initial, const PowerSource &dc_input,
                               double duration_s, const IntegrationOptions &opts)
    {
        cfg.validate();
        double window = cfg.judgment_window_s;
        if (duration_s < window * (1.0 - 1e-12))
            throw std::invalid_argument("duration shorter than the judgment window");

        ActivationVerdict verdict;
        NodeState s = initial;
        double lead = duration_s - window;
        if (lead > 0.0)
        {
            auto pre = integrate(cfg, s, dc_input, lead, opts);
            s = pre.final_state;
            verdict.trajectory = std::move(pre.trajectory);
            verdict.trajectory.pop_back(); // repeated as the first window sample
        }
        auto run = integrate(cfg, s, dc_input, window, opts);
        verdict.trajectory.insert(verdict.trajectory.end(), run.trajectory.begin(), run.trajectory.end());
        verdict.window_start_v = s.capacitor_voltage_v;
        verdict.window_end_v = run.final_state.capacitor_voltage_v;
        verdict.delta_v = verdict.window_end_v - verdict.window_start_v;
        verdict.died = run.died;
        verdict.active = verdict.delta_v >= 0.0 && !run.died;
        return verdict;
    }

    ActivationVerdict run_activation_protocol(const NodeConfig &cfg, const PowerSource &dc_input, bool cold_start,
                                              const IntegrationOptions &opts)
    {
        cfg.validate();
        NodeState s = cold_start ? NodeState::cold(cfg) : NodeState::warm(cfg);
        std::vector<std::pair<double, double>> lead_trajectory;
        if (cold_start && cfg.sensor_init_time_s > 0.0)
        {
            auto warmup = integrate(cfg, s, dc_input, cfg.sensor_init_time_s, opts);
            s = warmup.final_state;
            lead_trajectory = std::move(warmup.trajectory);
            // voltage set-up before the judged run
            s.capacitor_voltage_v = cfg.typical_voltage_v;
            if (s.mode == NodeMode::Dead)
                s = step_state_machine(cfg, s, 0.0);
        }
        auto verdict = simulate(cfg, s, dc_input, cfg.judgment_window_s, opts);
        if (!lead_trajectory.empty())
            verdict.trajectory.insert(verdict.trajectory.begin(), lead_trajectory.begin(), lead_trajectory.end());
        return verdict;
    }

    EfficiencyTrace measure_efficiency_trace(const RectifierModel &rectifier, double input_power_w,
                                             double capacitance_f, double sleep_power_w, double v_start,
                                             double duration_s, double step_s)
    {
        if (!(capacitance_f > 0.0) || !(duration_s > 0.0) || !(step_s > 0.0))
            throw std::invalid_argument("capacitance, duration and step must be positive");
        auto n = static_cast<std::size_t>(std::ceil(duration_s / step_s - 1e-9));
        double h = duration_s / static_cast<double>(n);
        double net = rectifier.dc_output(input_power_w) - sleep_power_w;

        double v2 = v_start * v_start;
        for (std::size_t k = 0; k < n; ++k)
            v2 = std::max(0.0, v2 + 2.0 * net * h / capacitance_f);

        return EfficiencyTrace{capacitance_f, duration_s, v_start, std::sqrt(v2), sleep_power_w, input_power_w};
    }
}
