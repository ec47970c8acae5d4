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

#include "doctest.h"
#include "oracles.hpp"

#include "csdsim/coverage.hpp"
#include "csdsim/units.hpp"

#include <cmath>
#include <stdexcept>

using namespace csdsim;

namespace
{
    Scenario with_scheme(Scheme scheme, double guard = 0.0)
    {
        Scenario s = Scenario::defaults();
        s.scheme = scheme;
        s.geometry.guard_band_m = guard;
        return s;
    }

    // brute-force fraction of (a, b) where the closed-form power reaches 400 uW
    double oracle_coverage(Scheme scheme, double a, double b, double dtheta = 0.0)
    {
        const double L = 6.0;
        return oracle::dense_fraction(a, b, 400000, [&](double l) {
            double p = 0.0;
            switch (scheme)
            {
            case Scheme::SP1: p = oracle::sp_power(oracle::p_te, oracle::lambda, l); break;
            case Scheme::SP2: p = oracle::sp_power(oracle::p_te, oracle::lambda, L - l); break;
            case Scheme::MP: p = oracle::two_tx_power(oracle::p_te, oracle::lambda, L, l, dtheta, 0.0, 0.0); break;
            case Scheme::MPCSD: p = oracle::two_tx_mean(oracle::p_te, oracle::lambda, L, l); break;
            }
            return p >= 400e-6;
        });
    }
}

TEST_CASE("scheme names")
{
    for (auto s : {Scheme::SP1, Scheme::SP2, Scheme::MP, Scheme::MPCSD})
        CHECK(scheme_from_string(to_string(s)) == s);
    CHECK(scheme_from_string("MPCSD") == Scheme::MPCSD);
    CHECK_THROWS_AS(scheme_from_string("csd"), std::invalid_argument);
}

TEST_CASE("default scenario")
{
    auto s = Scenario::defaults();
    CHECK(s.validation_errors().empty());
    CHECK(s.transmitters.size() == 2);
    CHECK(s.budget.equivalent_tx_power(s.transmitters[0]) == doctest::Approx(6.531305526474723).epsilon(1e-14));
    auto rounded = Scenario::defaults(GainConvention::Rounded);
    CHECK(rounded.budget.equivalent_tx_power(rounded.transmitters[0]) == doctest::Approx(6.4));

    auto txs = s.active_transmitters();
    REQUIRE(txs.size() == 2);
    CHECK(txs[1].carrier_frequency_hz - txs[0].carrier_frequency_hz == doctest::Approx(1e3));

    s.scheme = Scheme::MP;
    s.phase_difference_rad = 0.7;
    txs = s.active_transmitters();
    CHECK(s.effective_frequency_offset() == 0.0);
    CHECK(txs[0].carrier_frequency_hz == txs[1].carrier_frequency_hz);
    CHECK(txs[0].initial_phase_rad - txs[1].initial_phase_rad == doctest::Approx(0.7));

    s.scheme = Scheme::SP2;
    txs = s.active_transmitters();
    REQUIRE(txs.size() == 1);
    CHECK(txs[0].position_m == 6.0);
}

TEST_CASE("scenario validation reports every problem")
{
    auto s = Scenario::defaults();
    s.geometry.sample_interval_m = -1.0;
    s.transmitters[1].position_m = 9.0;
    s.frequency_offset_hz = 0.0;
    s.node.capacitance_f = 0.0;
    s.required_power_w = -1.0;
    auto errors = s.validation_errors();
    CHECK(errors.size() == 5);
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    auto one = Scenario::defaults();
    one.transmitters.pop_back();
    CHECK_FALSE(one.validation_errors().empty());
    one.scheme = Scheme::SP1;
    CHECK(one.validation_errors().empty());
}

TEST_CASE("activation decision")
{
    auto m = RectifierModel::default_model();
    CHECK(activation(400e-6, m, 142e-6));
    CHECK_FALSE(activation(399e-6, m, 142e-6));
    CHECK_FALSE(activation(0.0, m, 142e-6));
    CHECK(activation(0.0, m, 0.0));
    CHECK(rectified_power(m, 0.0) == 0.0);
    CHECK(rectified_power(m, -1.0) == 0.0);

    double preq = required_power(m, 142e-6);
    CHECK(preq == doctest::Approx(400e-6).epsilon(1e-9));
    CHECK(required_power(m, 0.0) == doctest::Approx(m.dead_zone_edge()).epsilon(1e-9));
    CHECK_THROWS_AS(required_power(m, -1.0), std::domain_error);
    CHECK_THROWS_AS(required_power(RectifierModel::tabulated({{1e-4, 1e-9}}), 1e3), std::domain_error);
}

TEST_CASE("grid coverage against the brute-force oracle")
{
    struct Row
    {
        Scheme scheme;
        double guard;
        double tol;
    };
    // grid quantization of 3 cm is worth a fraction of a percent
    for (auto row : {Row{Scheme::SP1, 0.0, 0.004}, Row{Scheme::SP2, 0.0, 0.004}, Row{Scheme::MP, 0.0, 0.006},
                     Row{Scheme::SP1, 1.0, 0.004}, Row{Scheme::MP, 1.0, 0.006}})
    {
        auto s = with_scheme(row.scheme, row.guard);
        double expect = oracle_coverage(row.scheme, row.guard, 6.0 - row.guard);
        INFO(to_string(row.scheme) << " guard " << row.guard);
        CHECK(std::abs(compute_coverage(s).coverage - expect) < row.tol);
        CHECK(std::abs(coverage_integral(s) - expect) < 2e-5);
    }
    CHECK(compute_coverage(with_scheme(Scheme::MPCSD)).coverage == 1.0);
    CHECK(coverage_integral(with_scheme(Scheme::MPCSD)) == doctest::Approx(1.0));
}

TEST_CASE("coverage report contents")
{
    auto s = with_scheme(Scheme::SP1);
    auto r = compute_coverage(s);
    CHECK(r.positions.size() == 201);
    CHECK(r.avg_power_w.size() == 201);
    CHECK(r.singular[0]);
    CHECK(std::isinf(r.avg_power_w[0]));
    CHECK(r.active[0]);
    CHECK_FALSE(r.singular[200]);
    CHECK(r.threshold_power_w == 400e-6);
    CHECK_FALSE(r.lower_bound);

    std::size_t active = 0;
    for (bool a : r.active)
        active += a;
    CHECK(r.coverage == doctest::Approx(active / 201.0));
    CHECK(r.coverage_excluding_singular == doctest::Approx((active - 1) / 200.0));

    // SP2 mirrors SP1 on a symmetric grid
    auto r2 = compute_coverage(with_scheme(Scheme::SP2));
    CHECK(r2.coverage == r.coverage);

    auto csd = compute_coverage(with_scheme(Scheme::MPCSD));
    CHECK(csd.lower_bound);
}

TEST_CASE("rectifier path agrees with direct thresholding at the anchor")
{
    for (auto scheme : {Scheme::SP1, Scheme::MP, Scheme::MPCSD})
    {
        auto direct = with_scheme(scheme);
        auto via_rect = direct;
        via_rect.required_power_w.reset();
        CHECK(compute_coverage(direct).active == compute_coverage(via_rect).active);
    }
}

TEST_CASE("MPCSD dominance and CSD averaging (property)")
{
    auto sp1 = with_scheme(Scheme::SP1);
    auto sp2 = with_scheme(Scheme::SP2);
    auto csd = with_scheme(Scheme::MPCSD);
    for (int trial = 0; trial < 100; ++trial)
    {
        double l = oracle::uniform(0.01, 5.99);
        double p = average_power(csd, l);
        CHECK(p >= average_power(sp1, l));
        CHECK(p >= average_power(sp2, l));
        CHECK(p == doctest::Approx(average_power(sp1, l) + average_power(sp2, l)).epsilon(1e-13));
        CHECK(p == doctest::Approx(oracle::two_tx_mean(oracle::p_te, oracle::lambda, 6.0, l)).epsilon(1e-12));
    }
    CHECK(compute_coverage(csd).coverage >= compute_coverage(sp1).coverage);
}

TEST_CASE("MPCSD is insensitive to the phase difference")
{
    auto s = with_scheme(Scheme::MPCSD);
    auto base = compute_coverage(s);
    for (double th : {0.3, 1.7, 3.1, 5.9})
    {
        s.phase_difference_rad = th;
        auto r = compute_coverage(s);
        CHECK(r.avg_power_w == base.avg_power_w);
    }
}

TEST_CASE("MP coverage versus phase")
{
    auto s = with_scheme(Scheme::MP);
    auto integral = coverage_phase_sensitivity(s, 64);
    CHECK(integral.spread() < 0.01);
    auto grid = coverage_phase_sensitivity(s, 64, CoverageMethod::Grid);
    CHECK(grid.spread() >= integral.spread());
    CHECK(grid.min_coverage > 0.85);

    // spot-check one phase against the oracle
    s.phase_difference_rad = 2.0;
    CHECK(std::abs(coverage_integral(s) - oracle_coverage(Scheme::MP, 0.0, 6.0, 2.0)) < 2e-5);
    CHECK_THROWS_AS(coverage_phase_sensitivity(s, 0), std::invalid_argument);
}

TEST_CASE("coverage curve")
{
    auto s = with_scheme(Scheme::SP1);
    auto powers = log_spaced_powers(-30.0, 10.0, 81);
    REQUIRE(powers.size() == 81);
    CHECK(powers.front() == doctest::Approx(1e-6));
    CHECK(powers.back() == doctest::Approx(1e-2));
    auto curve = coverage_curve(s, powers);
    REQUIRE(curve.size() == 81);
    for (std::size_t k = 1; k < curve.size(); ++k)
        CHECK(curve[k].coverage <= curve[k - 1].coverage);
    CHECK(curve.front().coverage == 1.0);

    // the point at 400 uW matches the single-threshold report
    auto at = coverage_curve(s, {400e-6});
    CHECK(at[0].coverage == compute_coverage(s).coverage);

    CHECK_THROWS_AS(coverage_curve(s, {1e-3, 1e-4}), std::invalid_argument);
    CHECK_THROWS_AS(coverage_curve(s, {0.0, 1e-4}), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced_powers(0.0, 10.0, 1), std::invalid_argument);
}

TEST_CASE("maximum spacing")
{
    auto s = Scenario::defaults();
    double pte = s.budget.equivalent_tx_power(s.transmitters[0]);
    double sp = max_spacing(Scheme::SP1, s.budget, pte, 400e-6);
    double csd = max_spacing(Scheme::MPCSD, s.budget, pte, 400e-6);
    CHECK(sp == doctest::Approx(3.32511169649473).epsilon(1e-12));
    CHECK(csd / sp == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(mpcsd_midpoint_power(s.budget, pte, csd) == doctest::Approx(400e-6).epsilon(1e-9));
    CHECK(mpcsd_midpoint_power(s.budget, pte, 6.0) == doctest::Approx(9.827882483703166e-4).epsilon(1e-12));
    CHECK_THROWS_AS(max_spacing(Scheme::MP, s.budget, pte, 400e-6), std::invalid_argument);
    CHECK_THROWS_AS(max_spacing(Scheme::SP1, s.budget, pte, 0.0), std::invalid_argument);
}

TEST_CASE("Jensen inequality for the convex default rectifier (property)")
{
    auto s = with_scheme(Scheme::MPCSD);
    s.required_power_w.reset();
    for (int trial = 0; trial < 100; ++trial)
    {
        double l = oracle::uniform(0.01, 5.99);
        auto j = jensen_check(s, l);
        CHECK(j.mean_dc_w >= j.dc_of_mean_w * (1.0 - 1e-12));
    }
}

TEST_CASE("time-domain activation check on a coarse grid")
{
    auto s = with_scheme(Scheme::MPCSD);
    s.required_power_w.reset();
    s.geometry.sample_interval_m = 0.5;
    auto check = verify_activation_time_domain(s);
    CHECK(check.skipped_singular == 2);
    CHECK(check.positions.size() == 11);
    CHECK(check.disagreements() == 0);
    for (std::size_t k = 0; k < check.positions.size(); ++k)
        CHECK(check.simulated_active[k] == (check.delta_v[k] >= 0.0));
}
