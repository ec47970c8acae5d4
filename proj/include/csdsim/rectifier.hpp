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

#ifndef CSDSIM_RECTIFIER_HPP
#define CSDSIM_RECTIFIER_HPP

#include <variant>
#include <vector>

namespace csdsim
{
    /// Threshold-diode efficiency curve
    ///     Gamma(P) = max(0, peak * (1 - threshold / P))
    /// The DC output is zero up to the threshold and linear above it, so it is
    /// convex everywhere.
    struct ParametricRectifier
    {
        double peak_efficiency = 0.55;
        double threshold_power_w = 0.0;

        bool operator==(const ParametricRectifier &) const = default;
    };

    /// Measured (P_in, Gamma) anchors. The DC output P * Gamma is interpolated
    /// linearly between anchors, extended through the origin below the first
    /// anchor and with constant Gamma above the last.
    struct TabulatedRectifier
    {
        struct Point
        {
            double input_power_w;
            double efficiency;
            bool operator==(const Point &) const = default;
        };
        std::vector<Point> points;

        bool operator==(const TabulatedRectifier &) const = default;
    };

    class RectifierModel
    {
    public:
        RectifierModel(); // default calibration, see default_model()

        static RectifierModel parametric(double peak_efficiency, double threshold_power_w);

        // Solve the threshold from the anchor dc_output(required) == consumed.
        static RectifierModel calibrated(double peak_efficiency, double required_power_w, double consumed_power_w);

        static RectifierModel tabulated(std::vector<TabulatedRectifier::Point> points);

        // peak 0.55, calibrated so that 400 uW of RF yields 142 uW of DC.
        static RectifierModel default_model();

        // Throws std::domain_error for input_power_w <= 0.
        double efficiency(double input_power_w) const;
        double dc_output(double input_power_w) const;

        bool is_parametric() const { return std::holds_alternative<ParametricRectifier>(form_); }
        const ParametricRectifier *as_parametric() const { return std::get_if<ParametricRectifier>(&form_); }
        const TabulatedRectifier *as_tabulated() const { return std::get_if<TabulatedRectifier>(&form_); }

        // Largest input power with zero output (P_th for the parametric form, 0 otherwise).
        double dead_zone_edge() const;

        bool operator==(const RectifierModel &) const = default;

    private:
        explicit RectifierModel(std::variant<ParametricRectifier, TabulatedRectifier> form) : form_(std::move(form)) {}
        std::variant<ParametricRectifier, TabulatedRectifier> form_;
    };

    inline constexpr double default_peak_efficiency = 0.55;
    inline constexpr double default_required_power_w = 400e-6;
    inline constexpr double default_consumed_power_w = 142e-6;
    inline constexpr double convex_region_upper_w = 1e-3;

    // Capacitor voltage trace from a constant-input charging run with the node
    // held in sleep mode.
    struct EfficiencyTrace
    {
        double capacitance_f = 50e-3;
        double duration_s = 20.0;
        double v_start = 0.0;
        double v_end = 0.0;
        double sleep_power_w = 0.0;
        double input_power_w = 0.0;
    };

    struct RecoveredEfficiency
    {
        double efficiency = 0.0;
        bool consistent = true; // false when outside [0, 1.05]
    };

    // Gamma = ((C / 2T)(V_end^2 - V_start^2) + P_s) / P_in
    // Throws std::invalid_argument for a malformed trace.
    RecoveredEfficiency recover_efficiency(const EfficiencyTrace &trace);

    struct ConvexityCheck
    {
        bool convex = true;
        double max_violation_w = 0.0;  // most negative second difference, as a positive number
        double violation_at_w = 0.0;   // input power where it occurs
    };

    // Second differences of dc_output on a uniform grid over [lo, hi].
    ConvexityCheck check_convex_output(const RectifierModel &model, double lo_w, double hi_w,
                                       std::size_t samples = 4001);
}

#endif
