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

#ifndef CSDSIM_PROPAGATION_HPP
#define CSDSIM_PROPAGATION_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace csdsim
{
    // One continuous-wave energy source on the deployment line.
    struct Transmitter
    {
        double position_m = 0.0;
        double tx_power_w = 1.0;
        double antenna_gain = 1.0;           // linear
        double carrier_frequency_hz = 916.8e6;
        double initial_phase_rad = 0.0;

        bool operator==(const Transmitter &) const = default;
    };

    // Throws std::invalid_argument when a field is out of range. Position is
    // checked against [0, line_length_m].
    void validate(const Transmitter &tx, double line_length_m);

    // 1-D link budget shared by all transmitters. A single wavelength is used
    // for every source; carrier offsets of a few kHz do not change it measurably.
    struct LinkBudget
    {
        double rx_gain = 1.0;                 // linear
        double reference_frequency_hz = 916.8e6;
        double wavelength_m = 0.0;

        static LinkBudget from_frequency(double reference_frequency_hz, double rx_gain);

        // P_t * G_t * G_r
        double equivalent_tx_power(const Transmitter &tx) const
        {
            return tx.tx_power_w * tx.antenna_gain * rx_gain;
        }

        bool operator==(const LinkBudget &) const = default;
    };

    // Sampling of the segment between the outermost transmitters.
    struct Geometry
    {
        double line_length_m = 6.0;
        double sample_interval_m = 0.03;
        double guard_band_m = 0.0;            // excluded at each end

        void validate() const;

        // floor((L - 2 guard) / interval) + 1
        std::size_t sample_count() const;

        // guard, guard + interval, ... ; ordered, endpoints included when on-grid
        std::vector<double> sample_positions() const;

        double range_begin() const { return guard_band_m; }
        double range_end() const { return line_length_m - guard_band_m; }

        bool operator==(const Geometry &) const = default;
    };

    struct ComplexGain
    {
        double amplitude = 0.0;
        double phase_rad = 0.0;               // in [0, 2 pi)

        std::complex<double> value() const { return std::polar(amplitude, phase_rad); }
    };

    // Free-space channel lambda/(4 pi d) * exp(-j 2 pi d / lambda).
    // Throws std::domain_error at zero distance.
    ComplexGain channel_gain(const Transmitter &tx, double position_m, const LinkBudget &budget);

    // P_t^e (lambda / 4 pi d)^2
    double received_power_single(const Transmitter &tx, double position_m, const LinkBudget &budget);

    // |sum_i h_i s_i|^2 at time t. Carrier phases are taken relative to the
    // first transmitter's frequency so that large t does not lose precision.
    double instantaneous_power(std::span<const Transmitter> txs, double position_m, double time_s,
                               const LinkBudget &budget);

    // Same-frequency superposition (time independent). Throws std::domain_error
    // if the transmitters do not share one carrier.
    double received_power_mp(std::span<const Transmitter> txs, double position_m, const LinkBudget &budget);

    // Capacitor-averaged power under carrier shift diversity: the cross terms
    // vanish and the result is the sum of single-transmitter powers. Throws
    // std::domain_error if two transmitters share a carrier.
    double mean_power_mpcsd(std::span<const Transmitter> txs, double position_m, const LinkBudget &budget);

    struct TimeAverage
    {
        double power_w = 0.0;
        bool period_aligned = true;           // false: duration is not a multiple of every fading period
    };

    // Trapezoidal time mean of instantaneous_power over [0, duration]. The step
    // is shrunk so an integer number of steps spans the duration exactly.
    // Throws std::domain_error if step exceeds 1/100 of the shortest fading period.
    TimeAverage time_averaged_power(std::span<const Transmitter> txs, double position_m, double duration_s,
                                    double step_s, const LinkBudget &budget);

    // Shortest artificial fading period 1/max|f_i - f_j|; 0 when all carriers coincide.
    double shortest_fading_period(std::span<const Transmitter> txs);

    // True when the position coincides with a transmitter.
    bool is_singular(std::span<const Transmitter> txs, double position_m);
}

#endif
