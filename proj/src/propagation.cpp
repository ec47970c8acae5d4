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

#include "csdsim/propagation.hpp"
#include "csdsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace csdsim
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;

        double distance_to(const Transmitter &tx, double position_m)
        {
            double d = std::abs(position_m - tx.position_m);
            if (d == 0.0)
                throw std::domain_error("position " + std::to_string(position_m) +
                                        " m coincides with a transmitter (zero distance)");
            return d;
        }

        void require_nonempty(std::span<const Transmitter> txs)
        {
            if (txs.empty())
                throw std::domain_error("transmitter list is empty");
        }

        // Fractional distance of x from the nearest integer.
        double off_integer(double x) { return std::abs(x - std::round(x)); }
    }

    void validate(const Transmitter &tx, double line_length_m)
    {
        if (!(tx.tx_power_w > 0.0))
            throw std::invalid_argument("tx_power must be positive");
        if (!(tx.antenna_gain > 0.0))
            throw std::invalid_argument("antenna_gain must be positive");
        if (!(tx.carrier_frequency_hz > 0.0))
            throw std::invalid_argument("carrier_frequency must be positive");
        if (tx.position_m < 0.0 || tx.position_m > line_length_m)
            throw std::invalid_argument("transmitter position outside [0, L]");
    }

    LinkBudget LinkBudget::from_frequency(double reference_frequency_hz, double rx_gain)
    {
        if (!(reference_frequency_hz > 0.0))
            throw std::invalid_argument("reference frequency must be positive");
        if (!(rx_gain > 0.0))
            throw std::invalid_argument("rx_gain must be positive");
        return {rx_gain, reference_frequency_hz, wavelength_of(reference_frequency_hz)};
    }

    void Geometry::validate() const
    {
        if (!(line_length_m > 0.0))
            throw std::invalid_argument("line_length must be positive");
        if (!(sample_interval_m > 0.0 && sample_interval_m < line_length_m))
            throw std::invalid_argument("sample_interval must lie in (0, L)");
        if (!(guard_band_m >= 0.0) || 2.0 * guard_band_m >= line_length_m)
            throw std::invalid_argument("guard_band must be >= 0 and leave a nonempty range");
    }

    std::size_t Geometry::sample_count() const
    {
        // Relative slack so that e.g. 6 / 0.03 lands on 200 and not 199.99999.
        double cells = (line_length_m - 2.0 * guard_band_m) / sample_interval_m;
        return static_cast<std::size_t>(std::floor(cells + 1e-9)) + 1;
    }

    std::vector<double> Geometry::sample_positions() const
    {
        validate();
        std::size_t n = sample_count();
        std::vector<double> out(n);
        for (std::size_t k = 0; k < n; ++k)
            out[k] = guard_band_m + static_cast<double>(k) * sample_interval_m;
        // snap the far end so an on-grid endpoint lands exactly on L - guard
        if (std::abs(out.back() - range_end()) < 1e-9 * sample_interval_m)
            out.back() = range_end();
        return out;
    }

    ComplexGain channel_gain(const Transmitter &tx, double position_m, const LinkBudget &budget)
    {
        double d = distance_to(tx, position_m);
        double lambda = budget.wavelength_m;
        double phase = std::fmod(-two_pi * d / lambda, two_pi);
        if (phase < 0.0)
            phase += two_pi;
        if (phase >= two_pi)
            phase = 0.0;
        return {lambda / (4.0 * std::numbers::pi * d), phase};
    }

    double received_power_single(const Transmitter &tx, double position_m, const LinkBudget &budget)
    {
        double d = distance_to(tx, position_m);
        double a = budget.wavelength_m / (4.0 * std::numbers::pi * d);
        return budget.equivalent_tx_power(tx) * a * a;
    }

    double instantaneous_power(std::span<const Transmitter> txs, double position_m, double time_s,
                               const LinkBudget &budget)
    {
        require_nonempty(txs);
        const double f_ref = txs.front().carrier_frequency_hz;
        std::complex<double> sum{0.0, 0.0};
        for (const auto &tx : txs)
        {
            double d = distance_to(tx, position_m);
            double amplitude = budget.wavelength_m / (4.0 * std::numbers::pi * d) *
                               std::sqrt(budget.equivalent_tx_power(tx));
            double phase = -two_pi * d / budget.wavelength_m +
                           two_pi * (tx.carrier_frequency_hz - f_ref) * time_s + tx.initial_phase_rad;
            sum += std::polar(amplitude, phase);
        }
        return std::norm(sum);
    }

    double received_power_mp(std::span<const Transmitter> txs, double position_m, const LinkBudget &budget)
    {
        require_nonempty(txs);
        for (const auto &tx : txs)
            if (tx.carrier_frequency_hz != txs.front().carrier_frequency_hz)
                throw std::domain_error("same-frequency power requested for transmitters with a carrier offset");
        return instantaneous_power(txs, position_m, 0.0, budget);
    }

    double mean_power_mpcsd(std::span<const Transmitter> txs, double position_m, const LinkBudget &budget)
    {
        require_nonempty(txs);
        for (std::size_t i = 0; i < txs.size(); ++i)
            for (std::size_t j = i + 1; j < txs.size(); ++j)
                if (txs[i].carrier_frequency_hz == txs[j].carrier_frequency_hz)
                    throw std::domain_error("carrier shift diversity needs pairwise distinct carriers");
        double sum = 0.0;
        for (const auto &tx : txs)
            sum += received_power_single(tx, position_m, budget);
        return sum;
    }

    double shortest_fading_period(std::span<const Transmitter> txs)
    {
        double max_offset = 0.0;
        for (std::size_t i = 0; i < txs.size(); ++i)
            for (std::size_t j = i + 1; j < txs.size(); ++j)
                max_offset = std::max(max_offset,
                                      std::abs(txs[i].carrier_frequency_hz - txs[j].carrier_frequency_hz));
        return max_offset > 0.0 ? 1.0 / max_offset : 0.0;
    }

    TimeAverage time_averaged_power(std::span<const Transmitter> txs, double position_m, double duration_s,
                                    double step_s, const LinkBudget &budget)
    {
        require_nonempty(txs);
        if (!(duration_s > 0.0) || !(step_s > 0.0))
            throw std::domain_error("duration and step must be positive");

        double fading = shortest_fading_period(txs);
        if (fading > 0.0 && step_s > fading / 100.0 * (1.0 + 1e-12))
            throw std::domain_error("time step exceeds 1/100 of the fading period");

        TimeAverage out;
        for (std::size_t i = 0; i < txs.size(); ++i)
            for (std::size_t j = i + 1; j < txs.size(); ++j)
            {
                double offset = std::abs(txs[i].carrier_frequency_hz - txs[j].carrier_frequency_hz);
                if (offset > 0.0 && off_integer(duration_s * offset) > 1e-9)
                    out.period_aligned = false;
            }

        auto n = static_cast<std::size_t>(std::ceil(duration_s / step_s - 1e-9));
        n = std::max<std::size_t>(n, 1);
        double h = duration_s / static_cast<double>(n);

        double acc = 0.5 * (instantaneous_power(txs, position_m, 0.0, budget) +
                            instantaneous_power(txs, position_m, duration_s, budget));
        for (std::size_t k = 1; k < n; ++k)
            acc += instantaneous_power(txs, position_m, static_cast<double>(k) * h, budget);
        out.power_w = acc * h / duration_s;
        return out;
    }

    bool is_singular(std::span<const Transmitter> txs, double position_m)
    {
        return std::any_of(txs.begin(), txs.end(),
                           [&](const Transmitter &tx) { return tx.position_m == position_m; });
    }
}
