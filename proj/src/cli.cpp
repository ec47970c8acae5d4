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

#include "csdsim/cli.hpp"
#include "csdsim/coverage.hpp"
#include "csdsim/regulatory.hpp"
#include "csdsim/report.hpp"
#include "csdsim/scenario_file.hpp"
#include "csdsim/units.hpp"

#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include <fmt/format.h>

namespace csdsim
{
    namespace
    {
        struct CommonOptions
        {
            std::string scenario_path;
            std::string scheme;
            std::optional<double> grid_m;
            std::optional<double> guard_m;
            std::optional<double> preq_w;
            std::string out_path;
        };

        struct SweepOptions
        {
            std::string range; // start,stop,points
        };

        struct NodeSimOptions
        {
            std::optional<double> position_m;
            std::optional<double> dc_input_w;
            bool cold = false;
        };

        void add_common(CLI::App *cmd, CommonOptions &o)
        {
            cmd->add_option("--scenario", o.scenario_path, "Scenario file (JSON); default two-transmitter setup when omitted")
                ->check(CLI::ExistingFile);
            cmd->add_option("--scheme", o.scheme, "sp1 | sp2 | mp | mpcsd")
                ->check(CLI::IsMember({"sp1", "sp2", "mp", "mpcsd"}, CLI::ignore_case));
            cmd->add_option("--grid", o.grid_m, "Sample interval in meters")->check(CLI::PositiveNumber);
            cmd->add_option("--guard", o.guard_m, "Guard band at each end in meters")->check(CLI::NonNegativeNumber);
            cmd->add_option("--preq", o.preq_w, "Required RF power in watts")->check(CLI::PositiveNumber);
            cmd->add_option("--out", o.out_path, "Output CSV path");
        }

        ScenarioFile load(const CommonOptions &o)
        {
            ScenarioFile file = o.scenario_path.empty() ? ScenarioFile{} : load_scenario(o.scenario_path);
            Scenario &s = file.scenario;
            if (!o.scheme.empty())
                s.scheme = scheme_from_string(o.scheme);
            if (o.grid_m)
                s.geometry.sample_interval_m = *o.grid_m;
            if (o.guard_m)
                s.geometry.guard_band_m = *o.guard_m;
            if (o.preq_w)
                s.required_power_w = *o.preq_w;
            auto errors = s.validation_errors();
            if (!errors.empty())
                throw ScenarioError(std::move(errors));
            return file;
        }

        void print(std::ostream &out, const std::string &key, const std::string &value)
        {
            out << key << ": " << value << '\n';
        }

        std::string fraction(double v) { return fmt::format("{:.3f}", v); }

        // Writes to the path when given, otherwise to `out`.
        template <typename Emit>
        void emit_to(const std::string &path, std::ostream &out, Emit &&emit)
        {
            if (path.empty())
            {
                emit(out);
                return;
            }
            std::ostringstream ss;
            emit(ss);
            write_file(path, ss.str());
        }

        int cmd_coverage(const CommonOptions &o, bool time_domain, std::ostream &out)
        {
            auto file = load(o);
            const Scenario &s = file.scenario;
            auto report = compute_coverage(s);
            std::size_t active = 0;
            for (bool a : report.active)
                active += a;

            print(out, "scheme", std::string(to_string(s.scheme)));
            print(out, "range_m", fmt::format("[{}, {}]", format_number(s.geometry.range_begin()),
                                              format_number(s.geometry.range_end())));
            print(out, "positions", std::to_string(report.positions.size()));
            print(out, "active", std::to_string(active));
            print(out, "coverage", fraction(report.coverage));
            print(out, "coverage_excluding_singular", fraction(report.coverage_excluding_singular));
            print(out, "coverage_integral", fraction(coverage_integral(s)));
            print(out, "threshold_power_w", format_number(report.threshold_power_w));
            print(out, "lower_bound", report.lower_bound ? "true" : "false");
            if (time_domain)
            {
                auto check = verify_activation_time_domain(s);
                print(out, "time_domain_positions", std::to_string(check.positions.size()));
                print(out, "time_domain_disagreements", std::to_string(check.disagreements()));
            }

            std::string path = o.out_path.empty() ? file.output.field_csv : o.out_path;
            if (!path.empty())
                emit_field_csv(report, std::filesystem::path(path));
            return exit_ok;
        }

        int cmd_field(const CommonOptions &o, std::ostream &out)
        {
            auto file = load(o);
            auto report = compute_coverage(file.scenario);
            std::string path = o.out_path.empty() ? file.output.field_csv : o.out_path;
            emit_to(path, out, [&](std::ostream &os) { emit_field_csv(report, os); });
            return exit_ok;
        }

        int cmd_node_sim(const CommonOptions &o, const NodeSimOptions &n, std::ostream &out)
        {
            auto file = load(o);
            const Scenario &s = file.scenario;
            const auto txs = s.active_transmitters();
            double position = n.position_m.value_or(0.5 * s.geometry.line_length_m);

            PowerSource source;
            double avg_rf = 0.0;
            if (n.dc_input_w)
            {
                double dc = *n.dc_input_w;
                source = [dc](double) { return dc; };
            }
            else
            {
                if (is_singular(txs, position))
                    throw std::invalid_argument("node position coincides with a transmitter");
                avg_rf = average_power(s, position);
                source = [&s, txs, position](double t) {
                    return rectified_power(s.rectifier, instantaneous_power(txs, position, t, s.budget));
                };
            }

            auto verdict = run_activation_protocol(s.node, source, n.cold);
            if (!n.dc_input_w)
            {
                print(out, "position_m", format_number(position));
                print(out, "avg_power_w", format_number(avg_rf));
                print(out, "analytic_active", activation(avg_rf, s.rectifier, s.consumed_power_w) ? "true" : "false");
            }
            else
                print(out, "dc_input_w", format_number(*n.dc_input_w));
            print(out, "consumed_power_w", format_number(average_consumed_power(s.node)));
            print(out, "window_start_v", format_number(verdict.window_start_v));
            print(out, "window_end_v", format_number(verdict.window_end_v));
            print(out, "delta_v", format_number(verdict.delta_v));
            print(out, "died", verdict.died ? "true" : "false");
            print(out, "verdict", verdict.active ? "active" : "inactive");

            std::string path = o.out_path.empty() ? file.output.trajectory_csv : o.out_path;
            if (!path.empty())
                emit_to(path, out, [&](std::ostream &os) { emit_trajectory_csv(verdict.trajectory, os); });
            return exit_ok;
        }

        int cmd_design(const CommonOptions &o, std::ostream &out)
        {
            auto file = load(o);
            const Scenario &s = file.scenario;
            double p_req = s.required_power_w.value_or(required_power(s.rectifier, s.consumed_power_w));
            double gamma = s.rectifier.efficiency(p_req);
            double p_te = s.budget.equivalent_tx_power(s.transmitters.front());
            double l_sp = max_spacing(Scheme::SP1, s.budget, p_te, p_req);
            double l_csd = max_spacing(Scheme::MPCSD, s.budget, p_te, p_req);

            print(out, "average_consumed_power_w", format_number(average_consumed_power(s.node)));
            print(out, "required_power_w", format_number(p_req));
            print(out, "required_power_dbm", format_number(watts_to_dbm(p_req)));
            print(out, "efficiency_at_required", format_number(gamma));
            print(out, "min_capacitance_f", format_number(min_capacitance(s.node, p_req, gamma)));
            print(out, "equivalent_tx_power_w", format_number(p_te));
            print(out, "wavelength_m", format_number(s.budget.wavelength_m));
            print(out, "max_spacing_sp_m", format_number(l_sp));
            print(out, "max_spacing_mpcsd_m", format_number(l_csd));
            print(out, "spacing_ratio", format_number(l_csd / l_sp));
            print(out, "midpoint_power_mpcsd_w",
                  format_number(mpcsd_midpoint_power(s.budget, p_te, s.geometry.line_length_m)));
            return exit_ok;
        }

        SweepSpec parse_sweep_range(const std::string &text)
        {
            std::vector<std::string> parts;
            std::stringstream ss(text);
            for (std::string item; std::getline(ss, item, ',');)
                parts.push_back(item);
            if (parts.size() != 3)
                throw CLI::ValidationError("--preq-sweep", "expected start,stop,points");
            try
            {
                SweepSpec spec{std::stod(parts[0]), std::stod(parts[1]), std::stoul(parts[2])};
                spec.powers(); // validates
                return spec;
            }
            catch (const std::exception &e)
            {
                throw CLI::ValidationError("--preq-sweep", e.what());
            }
        }

        int cmd_sweep(const CommonOptions &o, const SweepOptions &sw, std::ostream &out)
        {
            auto file = load(o);
            SweepSpec spec = file.sweep.value_or(SweepSpec{});
            if (!sw.range.empty())
                spec = parse_sweep_range(sw.range);
            auto curve = coverage_curve(file.scenario, spec.powers());
            std::string path = o.out_path.empty() ? file.output.sweep_csv : o.out_path;
            emit_to(path, out, [&](std::ostream &os) { emit_sweep_csv(curve, os); });
            return exit_ok;
        }

        int cmd_validate(const CommonOptions &o, std::ostream &out)
        {
            auto file = load(o);
            auto profile = RegulatoryProfile::japan_920mhz();
            auto violations = validate_regulatory(file.scenario, profile);
            print(out, "profile", profile.name);
            const auto txs = file.scenario.active_transmitters();
            for (std::size_t i = 0; i < txs.size(); ++i)
            {
                const auto &tx = txs[i];
                print(out, fmt::format("tx[{}].eirp_dbm", i), format_number(watts_to_dbm(tx.tx_power_w * tx.antenna_gain)));
            }
            print(out, "violations", std::to_string(violations.size()));
            for (const auto &v : violations)
                print(out, "violation", v.subject + ": " + v.message);
            print(out, "compliant", violations.empty() ? "yes" : "no");
            return violations.empty() ? exit_ok : exit_validation;
        }
    }

    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Multi-point wireless energy transmission simulator"};
        app.name("csdsim");
        app.require_subcommand(1);

        CommonOptions common;
        SweepOptions sweep;
        NodeSimOptions node;
        bool time_domain = false;

        auto *coverage = app.add_subcommand("coverage", "Activation coverage summary");
        add_common(coverage, common);
        coverage->add_flag("--verify-time-domain", time_domain, "Cross-check every sample with a node simulation");

        auto *field = app.add_subcommand("field", "Per-position average power CSV");
        add_common(field, common);

        auto *node_sim = app.add_subcommand("node-sim", "Capacitor voltage trajectory and activation verdict");
        add_common(node_sim, common);
        node_sim->add_option("--position", node.position_m, "Node position in meters (default L/2)");
        node_sim->add_option("--dc-input", node.dc_input_w, "Constant DC input in watts instead of the RF field")
            ->check(CLI::NonNegativeNumber);
        node_sim->add_flag("--cold", node.cold, "Include the sensor warm-up before the judged window");

        auto *design = app.add_subcommand("design", "Minimum capacitance and maximum transmitter spacing");
        add_common(design, common);

        auto *sweep_cmd = app.add_subcommand("sweep", "Coverage against required power CSV");
        add_common(sweep_cmd, common);
        sweep_cmd->add_option("--preq-sweep", sweep.range, "start_w,stop_w,points (log spaced)");

        auto *validate = app.add_subcommand("validate", "Regulatory compliance report");
        add_common(validate, common);

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help();
            return exit_ok;
        }
        catch (const CLI::CallForAllHelp &)
        {
            out << app.help("", CLI::AppFormatMode::All);
            return exit_ok;
        }
        catch (const CLI::ParseError &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_usage;
        }

        try
        {
            if (coverage->parsed())
                return cmd_coverage(common, time_domain, out);
            if (field->parsed())
                return cmd_field(common, out);
            if (node_sim->parsed())
                return cmd_node_sim(common, node, out);
            if (design->parsed())
                return cmd_design(common, out);
            if (sweep_cmd->parsed())
                return cmd_sweep(common, sweep, out);
            if (validate->parsed())
                return cmd_validate(common, out);
        }
        catch (const CLI::ValidationError &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_usage;
        }
        catch (const ScenarioError &e)
        {
            err << e.what() << '\n';
            return exit_validation;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_validation;
        }
        return exit_usage;
    }
}
