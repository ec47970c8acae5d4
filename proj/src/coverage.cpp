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

#include "csdsim/coverage.hpp"
#include "csdsim/units.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace csdsim
{
    namespace
    {
        constexpr double activation_slack = 1e-12;
        constexpr double infinity = std::numeric_limits<double>::infinity();

        // Decides activation for one average power, either by thresholding the
        // RF power directly or through the rectifier.
        struct ActivationRule
        {
            const Scenario &scenario;

            bool operator()(double avg_power_w) const
            {
                if (std::isinf(avg_power_w))
                    return true;
                if (scenario.required_power_w)
                    return avg_power_w >= *scenario.required_power_w * (1.0 - activation_slack);
                return activation(avg_power_w, scenario.rectifier, scenario.consumed_power_w);
            }

            double threshold() const
            {
                if (scenario.required_power_w)
                    return *scenario.required_power_w;
                return required_power(scenario.rectifier, scenario.consumed_power_w);
            }
        };

        double power_for(const Scenario &scenario, const std::vector<Transmitter> &txs, double position_m)
        {
            if (is_singular(txs, position_m))
                return infinity;
            switch (scenario.scheme)
            {
            case Scheme::SP1:
            case Scheme::SP2:
                return received_power_single(txs.front(), position_m, scenario.budget);
            case Scheme::MP:
                return received_power_mp(txs, position_m, scenario.budget);
            case Scheme::MPCSD:
                return mean_power_mpcsd(txs, position_m, scenario.budget);
            }
            return 0.0;
        }

        // Active length of [a, b] for a predicate on position, sampling at
        // `cell` and bisecting each sign change.
        template <typename Pred>
        double active_length(double a, double b, double cell, Pred &&is_active)
        {
            auto n = static_cast<std::size_t>(std::ceil((b - a) / cell));
            n = std::max<std::size_t>(n, 1);
            double h = (b - a) / static_cast<double>(n);

            double total = 0.0;
            double x0 = a;
            bool s0 = is_active(x0);
            double run_start = s0 ? a : 0.0;
            for (std::size_t k = 1; k <= n; ++k)
            {
                double x1 = k == n ? b : a + static_cast<double>(k) * h;
                bool s1 = is_active(x1);
                if (s1 != s0)
                {
                    double lo = x0, hi = x1;
                    for (int it = 0; it < 60 && hi - lo > 1e-13; ++it)
                    {
                        double mid = 0.5 * (lo + hi);
                        (is_active(mid) == s0 ? lo : hi) = mid;
                    }
                    double edge = 0.5 * (lo + hi);
                    if (s0)
                        total += edge - run_start;
                    else
                        run_start = edge;
                }
                x0 = x1;
                s0 = s1;
            }
            if (s0)
                total += b - run_start;
            return total;
        }

        template <typename Fn>
        void parallel_for(std::size_t count, Fn &&fn)
        {
            std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
            workers = std::min(workers, count);
            if (workers <= 1)
            {
                for (std::size_t i = 0; i < count; ++i)
                    fn(i);
                return;
            }
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    for (std::size_t i = w; i < count; i += workers)
                        fn(i);
                });
        }
    }

    std::string_view to_string(Scheme scheme)
    {
        switch (scheme)
        {
        case Scheme::SP1: return "sp1";
        case Scheme::SP2: return "sp2";
        case Scheme::MP: return "mp";
        case Scheme::MPCSD: return "mpcsd";
        }
        return "?";
    }

    Scheme scheme_from_string(std::string_view name)
    {
        std::string lower(name);
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
        for (auto s : {Scheme::SP1, Scheme::SP2, Scheme::MP, Scheme::MPCSD})
            if (to_string(s) == lower)
                return s;
        throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected sp1, sp2, mp or mpcsd)");
    }

    Scenario Scenario::defaults(GainConvention gains)
    {
        const bool exact = gains == GainConvention::DbExact;
        const double tx_gain = exact ? db_to_linear(6.0) : 4.0;
        const double rx_gain = exact ? db_to_linear(2.15) : 1.6;

        Scenario s;
        s.geometry = Geometry{6.0, 0.03, 0.0};
        s.budget = LinkBudget::from_frequency(916.8e6, rx_gain);
        s.transmitters = {
            Transmitter{0.0, 1.0, tx_gain, 916.8e6, 0.0},
            Transmitter{6.0, 1.0, tx_gain, 916.8e6, 0.0},
        };
        s.scheme = Scheme::MPCSD;
        s.frequency_offset_hz = 1e3;
        s.phase_difference_rad = 0.0;
        s.rectifier = RectifierModel::default_model();
        s.node = NodeConfig{};
        s.consumed_power_w = default_consumed_power_w;
        s.required_power_w = default_required_power_w;
        return s;
    }

    std::vector<std::string> Scenario::validation_errors() const
    {
        std::vector<std::string> errors;
        auto check = [&](auto &&fn) {
            try
            {
                fn();
            }
            catch (const std::exception &e)
            {
                errors.emplace_back(e.what());
            }
        };

        check([&] { geometry.validate(); });
        if (!(budget.rx_gain > 0.0))
            errors.emplace_back("rx_gain must be positive");
        if (!(budget.reference_frequency_hz > 0.0))
            errors.emplace_back("carrier_frequency must be positive");
        else if (std::abs(budget.wavelength_m - wavelength_of(budget.reference_frequency_hz)) >
                 1e-12 * budget.wavelength_m)
            errors.emplace_back("wavelength does not match the reference carrier");

        for (std::size_t i = 0; i < transmitters.size(); ++i)
            check([&] {
                try
                {
                    csdsim::validate(transmitters[i], geometry.line_length_m);
                }
                catch (const std::exception &e)
                {
                    throw std::invalid_argument("transmitters[" + std::to_string(i) + "]: " + e.what());
                }
            });

        std::size_t needed = scheme == Scheme::SP1 ? 1 : 2;
        if (transmitters.size() < needed)
            errors.emplace_back("scheme " + std::string(to_string(scheme)) + " needs at least " +
                                std::to_string(needed) + " transmitter(s)");

        if (scheme == Scheme::MPCSD && !(frequency_offset_hz > 0.0))
            errors.emplace_back("scheme mpcsd requires a positive frequency offset");
        if (!std::isfinite(phase_difference_rad))
            errors.emplace_back("phase difference must be finite");

        check([&] { node.validate(); });
        if (!(consumed_power_w >= 0.0))
            errors.emplace_back("consumed power must be >= 0");
        if (required_power_w && !(*required_power_w > 0.0))
            errors.emplace_back("required power must be positive");
        return errors;
    }

    void Scenario::validate() const
    {
        auto errors = validation_errors();
        if (errors.empty())
            return;
        std::string msg = "invalid scenario:";
        for (const auto &e : errors)
            msg += "\n  - " + e;
        throw std::invalid_argument(msg);
    }

    double Scenario::effective_frequency_offset() const
    {
        return scheme == Scheme::MPCSD ? frequency_offset_hz : 0.0;
    }

    std::vector<Transmitter> Scenario::active_transmitters() const
    {
        std::vector<Transmitter> out;
        const double f_ref = budget.reference_frequency_hz;
        switch (scheme)
        {
        case Scheme::SP1:
            out.push_back(transmitters.at(0));
            break;
        case Scheme::SP2:
            out.push_back(transmitters.at(1));
            break;
        case Scheme::MP:
        case Scheme::MPCSD:
            out = transmitters;
            break;
        }
        for (std::size_t i = 0; i < out.size(); ++i)
        {
            out[i].carrier_frequency_hz = f_ref + static_cast<double>(i) * effective_frequency_offset();
            if (scheme == Scheme::SP1 || scheme == Scheme::SP2)
                out[i].carrier_frequency_hz = f_ref;
        }
        if (scheme == Scheme::MP || scheme == Scheme::MPCSD)
            out.front().initial_phase_rad += phase_difference_rad;
        return out;
    }

    double average_power(const Scenario &scenario, double position_m)
    {
        return power_for(scenario, scenario.active_transmitters(), position_m);
    }

    double rectified_power(const RectifierModel &rectifier, double input_power_w)
    {
        return input_power_w > 0.0 ? rectifier.dc_output(input_power_w) : 0.0;
    }

    bool activation(double avg_power_w, const RectifierModel &rectifier, double consumed_power_w)
    {
        if (!(avg_power_w > 0.0))
            return consumed_power_w <= 0.0;
        return rectifier.dc_output(avg_power_w) >= consumed_power_w * (1.0 - activation_slack);
    }

    double required_power(const RectifierModel &rectifier, double consumed_power_w)
    {
        if (consumed_power_w < 0.0)
            throw std::domain_error("consumed power must be >= 0");
        constexpr double ceiling_w = 1e3;
        double hi = 1e-9;
        while (!(rectifier.dc_output(hi) > consumed_power_w))
        {
            hi *= 2.0;
            if (hi > ceiling_w)
                throw std::domain_error("consumed power unreachable by the rectifier");
        }
        double lo = 0.0;
        for (int it = 0; it < 200 && hi - lo > 1e-18; ++it)
        {
            double mid = 0.5 * (lo + hi);
            if (mid > 0.0 && rectifier.dc_output(mid) > consumed_power_w)
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    }

    CoverageReport compute_coverage(const Scenario &scenario)
    {
        scenario.validate();
        const auto txs = scenario.active_transmitters();
        const ActivationRule rule{scenario};

        CoverageReport r;
        r.scheme = scenario.scheme;
        r.positions = scenario.geometry.sample_positions();
        r.lower_bound = scenario.scheme == Scheme::MPCSD;
        r.threshold_power_w = rule.threshold();

        std::size_t n = r.positions.size();
        r.avg_power_w.resize(n);
        r.active.resize(n);
        r.singular.resize(n);
        std::size_t active = 0, regular = 0, regular_active = 0;
        for (std::size_t k = 0; k < n; ++k)
        {
            double l = r.positions[k];
            r.singular[k] = is_singular(txs, l);
            r.avg_power_w[k] = power_for(scenario, txs, l);
            r.active[k] = rule(r.avg_power_w[k]);
            active += r.active[k];
            if (!r.singular[k])
            {
                ++regular;
                regular_active += r.active[k];
            }
        }
        r.coverage = static_cast<double>(active) / static_cast<double>(n);
        r.coverage_excluding_singular =
            regular > 0 ? static_cast<double>(regular_active) / static_cast<double>(regular) : 0.0;
        return r;
    }

    double coverage_integral(const Scenario &scenario)
    {
        scenario.validate();
        const auto txs = scenario.active_transmitters();
        const ActivationRule rule{scenario};
        const double a = scenario.geometry.range_begin();
        const double b = scenario.geometry.range_end();
        // 100 samples per interference fringe (period lambda / 2)
        const double cell = scenario.budget.wavelength_m / 200.0;
        double len = active_length(a, b, cell, [&](double l) { return rule(power_for(scenario, txs, l)); });
        return len / (b - a);
    }

    std::vector<CurvePoint> coverage_curve(const Scenario &scenario, const std::vector<double> &required_powers_w)
    {
        for (std::size_t k = 0; k < required_powers_w.size(); ++k)
        {
            if (!(required_powers_w[k] > 0.0))
                throw std::invalid_argument("required powers must be positive");
            if (k > 0 && !(required_powers_w[k] > required_powers_w[k - 1]))
                throw std::invalid_argument("required powers must be strictly ascending");
        }
        Scenario base = scenario;
        base.required_power_w = required_powers_w.empty() ? 1.0 : required_powers_w.front();
        auto field = compute_coverage(base);

        std::vector<CurvePoint> out;
        out.reserve(required_powers_w.size());
        const double n = static_cast<double>(field.avg_power_w.size());
        for (double p_req : required_powers_w)
        {
            auto count = std::count_if(field.avg_power_w.begin(), field.avg_power_w.end(),
                                       [&](double p) { return p >= p_req * (1.0 - activation_slack); });
            out.push_back({p_req, static_cast<double>(count) / n});
        }
        return out;
    }

    std::vector<double> log_spaced_powers(double start_dbm, double stop_dbm, std::size_t points)
    {
        if (points < 2 || !(stop_dbm > start_dbm))
            throw std::invalid_argument("sweep needs at least two points and stop > start");
        std::vector<double> out(points);
        for (std::size_t k = 0; k < points; ++k)
        {
            double dbm = start_dbm + (stop_dbm - start_dbm) * static_cast<double>(k) / static_cast<double>(points - 1);
            out[k] = dbm_to_watts(dbm);
        }
        return out;
    }

    double max_spacing(Scheme scheme, const LinkBudget &budget, double equivalent_tx_power_w, double required_power_w)
    {
        if (!(required_power_w > 0.0) || !(equivalent_tx_power_w > 0.0))
            throw std::invalid_argument("powers must be positive");
        double sp = budget.wavelength_m / (4.0 * std::numbers::pi) * std::sqrt(equivalent_tx_power_w / required_power_w);
        switch (scheme)
        {
        case Scheme::SP1:
        case Scheme::SP2:
            return sp;
        case Scheme::MPCSD:
            return 2.0 * std::numbers::sqrt2 * sp;
        case Scheme::MP:
            break;
        }
        throw std::invalid_argument("no closed-form spacing for scheme mp");
    }

    double mpcsd_midpoint_power(const LinkBudget &budget, double equivalent_tx_power_w, double spacing_m)
    {
        double a = budget.wavelength_m / (4.0 * std::numbers::pi);
        return equivalent_tx_power_w * a * a * (8.0 / (spacing_m * spacing_m));
    }

    PhaseSpread coverage_phase_sensitivity(const Scenario &scenario, std::size_t samples, CoverageMethod method)
    {
        if (samples == 0)
            throw std::invalid_argument("need at least one phase sample");
        PhaseSpread out{1.0, 0.0};
        Scenario s = scenario;
        for (std::size_t k = 0; k < samples; ++k)
        {
            s.phase_difference_rad = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
            double c = method == CoverageMethod::Grid ? compute_coverage(s).coverage : coverage_integral(s);
            out.min_coverage = std::min(out.min_coverage, c);
            out.max_coverage = std::max(out.max_coverage, c);
        }
        return out;
    }

    JensenCheck jensen_check(const Scenario &scenario, double position_m, std::size_t samples)
    {
        const auto txs = scenario.active_transmitters();
        double offset = scenario.effective_frequency_offset();
        double period = offset > 0.0 ? 1.0 / offset : 1.0;
        samples = std::max<std::size_t>(samples, 1);

        double mean_p = 0.0, mean_dc = 0.0;
        for (std::size_t k = 0; k < samples; ++k)
        {
            double t = period * static_cast<double>(k) / static_cast<double>(samples);
            double p = instantaneous_power(txs, position_m, t, scenario.budget);
            mean_p += p;
            mean_dc += rectified_power(scenario.rectifier, p);
        }
        mean_p /= static_cast<double>(samples);
        mean_dc /= static_cast<double>(samples);
        return {mean_dc, rectified_power(scenario.rectifier, mean_p)};
    }

    std::size_t TimeDomainCheck::disagreements() const
    {
        std::size_t n = 0;
        for (std::size_t k = 0; k < positions.size(); ++k)
            n += analytic_active[k] != simulated_active[k];
        return n;
    }

    TimeDomainCheck verify_activation_time_domain(const Scenario &scenario, const IntegrationOptions &opts)
    {
        auto report = compute_coverage(scenario);
        const auto txs = scenario.active_transmitters();

        TimeDomainCheck out;
        for (std::size_t k = 0; k < report.positions.size(); ++k)
        {
            if (report.singular[k])
            {
                ++out.skipped_singular;
                continue;
            }
            out.positions.push_back(report.positions[k]);
            out.analytic_active.push_back(report.active[k]);
        }
        std::size_t n = out.positions.size();
        std::vector<char> sim(n, 0);
        out.delta_v.resize(n);

        parallel_for(n, [&](std::size_t i) {
            double l = out.positions[i];
            PowerSource dc = [&, l](double t) {
                return rectified_power(scenario.rectifier, instantaneous_power(txs, l, t, scenario.budget));
            };
            auto verdict = simulate(scenario.node, NodeState::warm(scenario.node), dc,
                                    scenario.node.judgment_window_s, opts);
            sim[i] = verdict.active;
            out.delta_v[i] = verdict.delta_v;
        });
        out.simulated_active.assign(sim.begin(), sim.end());
        return out;
    }
}
