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

#include "csdsim/rectifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csdsim
{
    namespace
    {
        constexpr double convexity_tolerance_w = 1e-12;

        struct DcOutput
        {
            double p;

            double operator()(const ParametricRectifier &m) const
            {
                return p <= m.threshold_power_w ? 0.0 : m.peak_efficiency * (p - m.threshold_power_w);
            }

            double operator()(const TabulatedRectifier &m) const
            {
                const auto &pts = m.points;
                if (p <= pts.front().input_power_w)
                    return p * pts.front().efficiency;
                if (p >= pts.back().input_power_w)
                    return p * pts.back().efficiency;
                auto hi = std::upper_bound(pts.begin(), pts.end(), p,
                                           [](double v, const TabulatedRectifier::Point &pt) { return v < pt.input_power_w; });
                auto lo = std::prev(hi);
                double y0 = lo->input_power_w * lo->efficiency;
                double y1 = hi->input_power_w * hi->efficiency;
                double w = (p - lo->input_power_w) / (hi->input_power_w - lo->input_power_w);
                return y0 + w * (y1 - y0);
            }
        };
    }

    RectifierModel::RectifierModel() : RectifierModel(default_model()) {}

    RectifierModel RectifierModel::parametric(double peak_efficiency, double threshold_power_w)
    {
        if (!(peak_efficiency > 0.0 && peak_efficiency <= 1.0))
            throw std::invalid_argument("peak efficiency must lie in (0, 1]");
        if (!(threshold_power_w >= 0.0))
            throw std::invalid_argument("threshold power must be >= 0");
        return RectifierModel(ParametricRectifier{peak_efficiency, threshold_power_w});
    }

    RectifierModel RectifierModel::calibrated(double peak_efficiency, double required_power_w, double consumed_power_w)
    {
        if (!(required_power_w > 0.0) || !(consumed_power_w >= 0.0))
            throw std::invalid_argument("calibration anchor must be positive");
        double threshold = required_power_w - consumed_power_w / peak_efficiency;
        if (threshold < 0.0)
            throw std::invalid_argument("calibration anchor unreachable with this peak efficiency");
        return parametric(peak_efficiency, threshold);
    }

    RectifierModel RectifierModel::tabulated(std::vector<TabulatedRectifier::Point> points)
    {
        if (points.empty())
            throw std::invalid_argument("tabulated rectifier needs at least one point");
        for (std::size_t k = 0; k < points.size(); ++k)
        {
            const auto &pt = points[k];
            if (!(pt.input_power_w > 0.0))
                throw std::invalid_argument("tabulated input powers must be positive");
            if (!(pt.efficiency >= 0.0 && pt.efficiency <= 1.0))
                throw std::invalid_argument("tabulated efficiencies must lie in [0, 1]");
            if (k > 0)
            {
                const auto &prev = points[k - 1];
                if (!(pt.input_power_w > prev.input_power_w))
                    throw std::invalid_argument("tabulated input powers must be strictly increasing");
                if (pt.input_power_w * pt.efficiency < prev.input_power_w * prev.efficiency)
                    throw std::invalid_argument("tabulated DC output must be nondecreasing");
            }
        }
        return RectifierModel(TabulatedRectifier{std::move(points)});
    }

    RectifierModel RectifierModel::default_model()
    {
        return calibrated(default_peak_efficiency, default_required_power_w, default_consumed_power_w);
    }

    double RectifierModel::dc_output(double input_power_w) const
    {
        if (!(input_power_w > 0.0))
            throw std::domain_error("rectifier input power must be positive");
        if (std::isinf(input_power_w))
            return input_power_w;
        return std::visit(DcOutput{input_power_w}, form_);
    }

    double RectifierModel::efficiency(double input_power_w) const
    {
        if (std::isinf(input_power_w))
        {
            if (const auto *p = as_parametric())
                return p->peak_efficiency;
            return as_tabulated()->points.back().efficiency;
        }
        return dc_output(input_power_w) / input_power_w;
    }

    double RectifierModel::dead_zone_edge() const
    {
        if (const auto *p = as_parametric())
            return p->threshold_power_w;
        return 0.0;
    }

    RecoveredEfficiency recover_efficiency(const EfficiencyTrace &trace)
    {
        if (!(trace.capacitance_f > 0.0) || !(trace.duration_s > 0.0))
            throw std::invalid_argument("trace capacitance and duration must be positive");
        if (trace.v_start < 0.0 || trace.v_end < 0.0 || trace.sleep_power_w < 0.0)
            throw std::invalid_argument("trace voltages and sleep power must be >= 0");
        if (!(trace.input_power_w > 0.0))
            throw std::invalid_argument("trace input power must be positive");

        double stored = trace.capacitance_f / (2.0 * trace.duration_s) *
                        (trace.v_end * trace.v_end - trace.v_start * trace.v_start);
        RecoveredEfficiency out;
        out.efficiency = (stored + trace.sleep_power_w) / trace.input_power_w;
        out.consistent = out.efficiency >= 0.0 && out.efficiency <= 1.05;
        return out;
    }

    ConvexityCheck check_convex_output(const RectifierModel &model, double lo_w, double hi_w, std::size_t samples)
    {
        if (!(lo_w > 0.0) || !(hi_w > lo_w))
            throw std::invalid_argument("convexity region must satisfy 0 < lo < hi");
        samples = std::max<std::size_t>(samples, 3);

        double h = (hi_w - lo_w) / static_cast<double>(samples - 1);
        std::vector<double> y(samples);
        for (std::size_t k = 0; k < samples; ++k)
            y[k] = model.dc_output(lo_w + static_cast<double>(k) * h);

        ConvexityCheck out;
        for (std::size_t k = 1; k + 1 < samples; ++k)
        {
            double second = y[k - 1] - 2.0 * y[k] + y[k + 1];
            if (-second > out.max_violation_w)
            {
                out.max_violation_w = -second;
                out.violation_at_w = lo_w + static_cast<double>(k) * h;
            }
        }
        out.convex = out.max_violation_w <= convexity_tolerance_w;
        return out;
    }
}
