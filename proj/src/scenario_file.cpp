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

#include "csdsim/scenario_file.hpp"
#include "csdsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

namespace csdsim
{
    using nlohmann::json;

    namespace
    {
        std::string join_errors(const std::vector<std::string> &errors)
        {
            std::string msg = "invalid scenario file:";
            for (const auto &e : errors)
                msg += "\n  - " + e;
            return msg;
        }

        // Typed access to one JSON object; records problems instead of
        // throwing and reports keys that were never asked for.
        class ObjectReader
        {
        public:
            ObjectReader(const json &obj, std::string path, std::vector<std::string> &errors)
                : obj_(obj), path_(std::move(path)), errors_(errors)
            {
            }

            bool has(const std::string &key)
            {
                seen_.insert(key);
                return obj_.contains(key);
            }

            std::string where(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

            std::optional<double> number(const std::string &key)
            {
                if (!has(key))
                    return std::nullopt;
                const auto &v = obj_.at(key);
                if (!v.is_number())
                {
                    errors_.push_back(fmt::format("field '{}': expected a number", where(key)));
                    return std::nullopt;
                }
                return v.get<double>();
            }

            std::optional<std::string> string(const std::string &key)
            {
                if (!has(key))
                    return std::nullopt;
                const auto &v = obj_.at(key);
                if (!v.is_string())
                {
                    errors_.push_back(fmt::format("field '{}': expected a string", where(key)));
                    return std::nullopt;
                }
                return v.get<std::string>();
            }

            std::optional<bool> boolean(const std::string &key)
            {
                if (!has(key))
                    return std::nullopt;
                const auto &v = obj_.at(key);
                if (!v.is_boolean())
                {
                    errors_.push_back(fmt::format("field '{}': expected true or false", where(key)));
                    return std::nullopt;
                }
                return v.get<bool>();
            }

            const json *object(const std::string &key)
            {
                if (!has(key))
                    return nullptr;
                const auto &v = obj_.at(key);
                if (!v.is_object())
                {
                    errors_.push_back(fmt::format("field '{}': expected an object", where(key)));
                    return nullptr;
                }
                return &v;
            }

            const json *array(const std::string &key)
            {
                if (!has(key))
                    return nullptr;
                const auto &v = obj_.at(key);
                if (!v.is_array())
                {
                    errors_.push_back(fmt::format("field '{}': expected an array", where(key)));
                    return nullptr;
                }
                return &v;
            }

            void reject_unknown()
            {
                for (const auto &[key, value] : obj_.items())
                    if (!seen_.contains(key))
                        errors_.push_back(fmt::format("unknown key '{}'", where(key)));
            }

            std::vector<std::string> &errors() { return errors_; }

        private:
            const json &obj_;
            std::string path_;
            std::vector<std::string> &errors_;
            std::set<std::string> seen_;
        };

        template <typename T>
        void assign(std::optional<T> v, T &target)
        {
            if (v)
                target = *v;
        }

        std::size_t line_of(const std::string &text, std::size_t byte)
        {
            byte = std::min(byte, text.size());
            return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
        }

        void read_geometry(ObjectReader &r, Geometry &g)
        {
            assign(r.number("line_length_m"), g.line_length_m);
            assign(r.number("sample_interval_m"), g.sample_interval_m);
            assign(r.number("guard_band_m"), g.guard_band_m);
            r.reject_unknown();
        }

        void read_rectifier(ObjectReader &r, RectifierModel &model)
        {
            auto form = r.string("form").value_or("parametric");
            auto peak = r.number("peak_efficiency");
            auto threshold = r.number("threshold_power_w");
            auto anchor_req = r.number("anchor_required_power_w");
            auto anchor_csp = r.number("anchor_consumed_power_w");
            const json *points = r.array("points");
            r.reject_unknown();

            try
            {
                if (form == "parametric")
                {
                    if (points)
                        throw std::invalid_argument("parametric rectifier does not take 'points'");
                    double eta = peak.value_or(default_peak_efficiency);
                    if (threshold && (anchor_req || anchor_csp))
                        throw std::invalid_argument("give either threshold_power_w or a calibration anchor, not both");
                    if (threshold)
                        model = RectifierModel::parametric(eta, *threshold);
                    else
                        model = RectifierModel::calibrated(eta, anchor_req.value_or(default_required_power_w),
                                                           anchor_csp.value_or(default_consumed_power_w));
                }
                else if (form == "tabulated")
                {
                    if (!points)
                        throw std::invalid_argument("tabulated rectifier needs 'points'");
                    if (peak || threshold || anchor_req || anchor_csp)
                        throw std::invalid_argument("tabulated rectifier takes only 'points'");
                    std::vector<TabulatedRectifier::Point> pts;
                    std::size_t idx = 0;
                    for (const auto &p : *points)
                    {
                        std::string path = fmt::format("rectifier.points[{}]", idx++);
                        if (!p.is_object())
                        {
                            r.errors().push_back(fmt::format("field '{}': expected an object", path));
                            continue;
                        }
                        ObjectReader pr(p, path, r.errors());
                        auto in = pr.number("input_power_w");
                        auto eff = pr.number("efficiency");
                        pr.reject_unknown();
                        if (!in || !eff)
                        {
                            r.errors().push_back(fmt::format("field '{}': needs input_power_w and efficiency", path));
                            continue;
                        }
                        pts.push_back({*in, *eff});
                    }
                    model = RectifierModel::tabulated(std::move(pts));
                }
                else
                    throw std::invalid_argument("unknown form '" + form + "' (expected parametric or tabulated)");
            }
            catch (const std::invalid_argument &e)
            {
                r.errors().push_back(std::string("rectifier: ") + e.what());
            }
        }

        void read_node(ObjectReader &r, NodeConfig &cfg)
        {
            if (auto preset = r.string("preset"))
            {
                try
                {
                    cfg = node_preset(consumption_case_from_string(*preset));
                }
                catch (const std::invalid_argument &e)
                {
                    r.errors().push_back(std::string("node: ") + e.what());
                }
            }
            assign(r.number("sleep_power_w"), cfg.sleep_power_w);
            assign(r.number("tx_power_consumption_w"), cfg.tx_power_consumption_w);
            assign(r.number("duty_cycle_s"), cfg.duty_cycle_s);
            assign(r.number("tx_duration_s"), cfg.tx_duration_s);
            assign(r.number("capacitance_f"), cfg.capacitance_f);
            assign(r.number("typical_voltage_v"), cfg.typical_voltage_v);
            assign(r.number("min_voltage_v"), cfg.min_voltage_v);
            assign(r.number("sensor_init_time_s"), cfg.sensor_init_time_s);
            assign(r.number("judgment_window_s"), cfg.judgment_window_s);
            r.reject_unknown();
        }
    }

    std::vector<double> SweepSpec::powers() const
    {
        if (!(start_w > 0.0) || !(stop_w > start_w) || points < 2)
            throw std::invalid_argument("sweep needs 0 < start < stop and at least two points");
        return log_spaced_powers(watts_to_dbm(start_w), watts_to_dbm(stop_w), points);
    }

    ScenarioError::ScenarioError(std::vector<std::string> errors)
        : std::runtime_error(join_errors(errors)), errors_(std::move(errors))
    {
    }

    ScenarioFile parse_scenario(const std::string &text)
    {
        json doc;
        bool blank = std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
        if (blank)
            doc = json::object();
        else
        {
            try
            {
                doc = json::parse(text);
            }
            catch (const json::parse_error &e)
            {
                throw ScenarioError({fmt::format("line {}: parse error: {}", line_of(text, e.byte), e.what())});
            }
        }
        if (!doc.is_object())
            throw ScenarioError({"line 1: top level must be an object"});

        std::vector<std::string> errors;
        ObjectReader root(doc, "", errors);
        ScenarioFile file;

        bool defaults = root.boolean("use_defaults").value_or(true);
        auto convention = root.string("gain_convention").value_or("db_exact");
        GainConvention gains = GainConvention::DbExact;
        if (convention == "rounded")
            gains = GainConvention::Rounded;
        else if (convention != "db_exact")
            errors.push_back("field 'gain_convention': expected db_exact or rounded");

        Scenario &s = file.scenario;
        s = Scenario::defaults(gains);

        if (!defaults)
            for (const char *key : {"transmitters", "geometry", "scheme"})
                if (!doc.contains(key))
                    errors.push_back(fmt::format("missing '{}' (required when use_defaults is false)", key));

        double f_ref = root.number("carrier_frequency_hz").value_or(s.budget.reference_frequency_hz);
        double rx_gain = root.number("rx_gain").value_or(s.budget.rx_gain);
        try
        {
            s.budget = LinkBudget::from_frequency(f_ref, rx_gain);
        }
        catch (const std::invalid_argument &e)
        {
            errors.push_back(e.what());
        }

        if (const json *txs = root.array("transmitters"))
        {
            s.transmitters.clear();
            std::size_t idx = 0;
            for (const auto &t : *txs)
            {
                std::string path = fmt::format("transmitters[{}]", idx++);
                if (!t.is_object())
                {
                    errors.push_back(fmt::format("field '{}': expected an object", path));
                    continue;
                }
                ObjectReader tr(t, path, errors);
                Transmitter tx{0.0, 1.0, gains == GainConvention::DbExact ? db_to_linear(6.0) : 4.0, f_ref, 0.0};
                auto pos = tr.number("position_m");
                if (!pos)
                    errors.push_back(fmt::format("field '{}.position_m': required", path));
                tx.position_m = pos.value_or(0.0);
                assign(tr.number("tx_power_w"), tx.tx_power_w);
                assign(tr.number("antenna_gain"), tx.antenna_gain);
                tr.reject_unknown();
                s.transmitters.push_back(tx);
            }
        }
        for (auto &tx : s.transmitters)
            tx.carrier_frequency_hz = f_ref;

        if (const json *g = root.object("geometry"))
        {
            ObjectReader gr(*g, "geometry", errors);
            read_geometry(gr, s.geometry);
        }

        if (auto scheme = root.string("scheme"))
        {
            try
            {
                s.scheme = scheme_from_string(*scheme);
            }
            catch (const std::invalid_argument &e)
            {
                errors.push_back(std::string("field 'scheme': ") + e.what());
            }
        }
        assign(root.number("frequency_offset_hz"), s.frequency_offset_hz);
        assign(root.number("phase_difference_rad"), s.phase_difference_rad);

        if (const json *rect = root.object("rectifier"))
        {
            ObjectReader rr(*rect, "rectifier", errors);
            read_rectifier(rr, s.rectifier);
        }

        if (const json *node = root.object("node"))
        {
            ObjectReader nr(*node, "node", errors);
            read_node(nr, s.node);
        }

        if (const json *act = root.object("activation"))
        {
            ObjectReader ar(*act, "activation", errors);
            assign(ar.number("consumed_power_w"), s.consumed_power_w);
            if (ar.has("required_power_w"))
            {
                if (act->at("required_power_w").is_null())
                    s.required_power_w.reset();
                else
                    s.required_power_w = ar.number("required_power_w");
            }
            ar.reject_unknown();
        }

        if (const json *sw = root.object("sweep"))
        {
            ObjectReader sr(*sw, "sweep", errors);
            SweepSpec spec;
            assign(sr.number("start_w"), spec.start_w);
            assign(sr.number("stop_w"), spec.stop_w);
            if (auto pts = sr.number("points"))
            {
                if (*pts < 2 || std::floor(*pts) != *pts)
                    errors.push_back("field 'sweep.points': expected an integer >= 2");
                else
                    spec.points = static_cast<std::size_t>(*pts);
            }
            sr.reject_unknown();
            if (!(spec.start_w > 0.0) || !(spec.stop_w > spec.start_w))
                errors.push_back("sweep: need 0 < start_w < stop_w");
            file.sweep = spec;
        }

        if (const json *out = root.object("output"))
        {
            ObjectReader orr(*out, "output", errors);
            assign(orr.string("field_csv"), file.output.field_csv);
            assign(orr.string("sweep_csv"), file.output.sweep_csv);
            assign(orr.string("trajectory_csv"), file.output.trajectory_csv);
            orr.reject_unknown();
        }

        root.reject_unknown();

        for (auto &e : s.validation_errors())
            errors.push_back(std::move(e));
        if (!errors.empty())
            throw ScenarioError(std::move(errors));
        return file;
    }

    ScenarioFile load_scenario(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ScenarioError({"cannot open scenario file '" + path.string() + "'"});
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_scenario(ss.str());
    }

    std::string serialize_scenario(const ScenarioFile &file)
    {
        const Scenario &s = file.scenario;
        json doc;
        doc["use_defaults"] = false;
        doc["carrier_frequency_hz"] = s.budget.reference_frequency_hz;
        doc["rx_gain"] = s.budget.rx_gain;

        json txs = json::array();
        for (const auto &tx : s.transmitters)
            txs.push_back({{"position_m", tx.position_m}, {"tx_power_w", tx.tx_power_w}, {"antenna_gain", tx.antenna_gain}});
        doc["transmitters"] = txs;

        doc["geometry"] = {{"line_length_m", s.geometry.line_length_m},
                           {"sample_interval_m", s.geometry.sample_interval_m},
                           {"guard_band_m", s.geometry.guard_band_m}};
        doc["scheme"] = std::string(to_string(s.scheme));
        doc["frequency_offset_hz"] = s.frequency_offset_hz;
        doc["phase_difference_rad"] = s.phase_difference_rad;

        if (const auto *p = s.rectifier.as_parametric())
            doc["rectifier"] = {{"form", "parametric"},
                                {"peak_efficiency", p->peak_efficiency},
                                {"threshold_power_w", p->threshold_power_w}};
        else
        {
            json pts = json::array();
            for (const auto &pt : s.rectifier.as_tabulated()->points)
                pts.push_back({{"input_power_w", pt.input_power_w}, {"efficiency", pt.efficiency}});
            doc["rectifier"] = {{"form", "tabulated"}, {"points", pts}};
        }

        const NodeConfig &n = s.node;
        doc["node"] = {{"sleep_power_w", n.sleep_power_w},
                       {"tx_power_consumption_w", n.tx_power_consumption_w},
                       {"duty_cycle_s", n.duty_cycle_s},
                       {"tx_duration_s", n.tx_duration_s},
                       {"capacitance_f", n.capacitance_f},
                       {"typical_voltage_v", n.typical_voltage_v},
                       {"min_voltage_v", n.min_voltage_v},
                       {"sensor_init_time_s", n.sensor_init_time_s},
                       {"judgment_window_s", n.judgment_window_s}};

        json act = {{"consumed_power_w", s.consumed_power_w}};
        act["required_power_w"] = s.required_power_w ? json(*s.required_power_w) : json(nullptr);
        doc["activation"] = act;

        if (file.sweep)
            doc["sweep"] = {{"start_w", file.sweep->start_w},
                            {"stop_w", file.sweep->stop_w},
                            {"points", file.sweep->points}};
        doc["output"] = {{"field_csv", file.output.field_csv},
                         {"sweep_csv", file.output.sweep_csv},
                         {"trajectory_csv", file.output.trajectory_csv}};
        return doc.dump(2) + "\n";
    }
}
