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

#include "csdsim/node.hpp"
#include "csdsim/rectifier.hpp"
#include "csdsim/units.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace csdsim;

TEST_CASE("default rectifier calibration")
{
    auto m = RectifierModel::default_model();
    REQUIRE(m.is_parametric());
    CHECK(m.as_parametric()->peak_efficiency == 0.55);
    CHECK(m.as_parametric()->threshold_power_w == doctest::Approx(1.4181818181818186e-4).epsilon(1e-13));
    CHECK(m.dead_zone_edge() == doctest::Approx(1.4181818181818186e-4).epsilon(1e-13));

    // anchor: 400 uW in -> 142 uW out
    CHECK(m.dc_output(400e-6) == doctest::Approx(142e-6).epsilon(1e-12));
    CHECK(m.efficiency(400e-6) == doctest::Approx(0.355).epsilon(1e-12));
    CHECK(m.efficiency(800e-6) == doctest::Approx(0.4525).epsilon(1e-12));
    CHECK(m.dc_output(1e-3) == doctest::Approx(4.72e-4).epsilon(1e-12));

    CHECK(RectifierModel() == m);
}

TEST_CASE("parametric efficiency curve")
{
    auto m = RectifierModel::parametric(0.6, 1e-4);
    CHECK(m.dc_output(5e-5) == 0.0);
    CHECK(m.dc_output(1e-4) == 0.0);
    CHECK(m.efficiency(2e-4) == doctest::Approx(0.3));
    // approaches the peak from below
    CHECK(m.efficiency(1.0) < 0.6);
    CHECK(m.efficiency(1.0) > 0.5999);
    CHECK(m.efficiency(std::numeric_limits<double>::infinity()) == 0.6);
    CHECK(std::isinf(m.dc_output(std::numeric_limits<double>::infinity())));

    CHECK_THROWS_AS(m.dc_output(0.0), std::domain_error);
    CHECK_THROWS_AS(m.dc_output(-1e-3), std::domain_error);
    CHECK_THROWS_AS(m.efficiency(0.0), std::domain_error);

    CHECK_THROWS_AS(RectifierModel::parametric(0.0, 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(RectifierModel::parametric(1.2, 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(RectifierModel::parametric(0.5, -1e-4), std::invalid_argument);
    CHECK_THROWS_AS(RectifierModel::calibrated(0.1, 400e-6, 142e-6), std::invalid_argument);
}

TEST_CASE("efficiency is monotone and bounded (property)")
{
    auto m = RectifierModel::default_model();
    double prev_e = 0.0;
    double prev_dc = 0.0;
    for (double dbm = -30.0; dbm <= 20.0; dbm += 0.25)
    {
        double p = dbm_to_watts(dbm);
        double e = m.efficiency(p);
        double dc = m.dc_output(p);
        CHECK(e >= prev_e);
        CHECK(dc >= prev_dc);
        CHECK(e >= 0.0);
        CHECK(e <= 0.55);
        CHECK(dc <= p);
        prev_e = e;
        prev_dc = dc;
    }
}

TEST_CASE("tabulated rectifier")
{
    auto m = RectifierModel::tabulated({{1e-4, 0.2}, {4e-4, 0.35}, {1e-3, 0.45}});
    REQUIRE(m.as_tabulated() != nullptr);
    CHECK(m.dead_zone_edge() == 0.0);

    CHECK(m.dc_output(1e-4) == doctest::Approx(2e-5));
    CHECK(m.dc_output(4e-4) == doctest::Approx(1.4e-4));
    // linear in DC output between anchors
    CHECK(m.dc_output(2.5e-4) == doctest::Approx(0.5 * (2e-5 + 1.4e-4)));
    // through the origin below the first anchor
    CHECK(m.efficiency(5e-5) == doctest::Approx(0.2));
    // constant efficiency above the last
    CHECK(m.efficiency(5e-3) == doctest::Approx(0.45));

    CHECK_THROWS_AS(RectifierModel::tabulated({}), std::invalid_argument);
    CHECK_THROWS_AS(RectifierModel::tabulated({{1e-4, 0.2}, {1e-4, 0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(RectifierModel::tabulated({{2e-4, 0.2}, {1e-4, 0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(RectifierModel::tabulated({{1e-4, 1.2}}), std::invalid_argument);
    CHECK_THROWS_AS(RectifierModel::tabulated({{-1e-4, 0.2}}), std::invalid_argument);
    // DC output may not fall
    CHECK_THROWS_AS(RectifierModel::tabulated({{1e-4, 0.5}, {1.1e-4, 0.1}}), std::invalid_argument);
}

TEST_CASE("convexity of the DC output")
{
    auto def = check_convex_output(RectifierModel::default_model(), 1e-6, convex_region_upper_w);
    CHECK(def.convex);

    // rising efficiency table: convex
    auto rising = RectifierModel::tabulated({{1e-4, 0.1}, {4e-4, 0.3}, {1e-3, 0.5}});
    CHECK(check_convex_output(rising, 1e-5, 1e-3).convex);

    // efficiency collapses after a peak: concave kink is reported
    auto kinked = RectifierModel::tabulated({{1e-4, 0.1}, {3e-4, 0.5}, {1e-3, 0.16}});
    auto c = check_convex_output(kinked, 1e-5, 1e-3);
    CHECK_FALSE(c.convex);
    CHECK(c.violation_at_w == doctest::Approx(3e-4).epsilon(0.01));
    CHECK(c.max_violation_w > 0.0);

    CHECK_THROWS_AS(check_convex_output(rising, 0.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(check_convex_output(rising, 1e-3, 1e-4), std::invalid_argument);
}

TEST_CASE("efficiency recovery from a charging trace")
{
    SUBCASE("closed form")
    {
        EfficiencyTrace t{50e-3, 20.0, 2.0, 2.1, 4.23e-6, 1e-3};
        double expect = (50e-3 / 40.0 * (2.1 * 2.1 - 4.0) + 4.23e-6) / 1e-3;
        auto r = recover_efficiency(t);
        CHECK(r.efficiency == doctest::Approx(expect).epsilon(1e-14));
        CHECK(r.consistent);
    }
    SUBCASE("inconsistent traces are flagged")
    {
        EfficiencyTrace gain{50e-3, 20.0, 0.0, 3.0, 0.0, 1e-3};
        CHECK_FALSE(recover_efficiency(gain).consistent);
        EfficiencyTrace loss{50e-3, 20.0, 2.3, 1.0, 0.0, 1e-3};
        CHECK_FALSE(recover_efficiency(loss).consistent);
    }
    SUBCASE("malformed traces throw")
    {
        CHECK_THROWS_AS(recover_efficiency(EfficiencyTrace{0.0, 20.0, 0, 1, 0, 1e-3}), std::invalid_argument);
        CHECK_THROWS_AS(recover_efficiency(EfficiencyTrace{50e-3, 0.0, 0, 1, 0, 1e-3}), std::invalid_argument);
        CHECK_THROWS_AS(recover_efficiency(EfficiencyTrace{50e-3, 20.0, -1, 1, 0, 1e-3}), std::invalid_argument);
        CHECK_THROWS_AS(recover_efficiency(EfficiencyTrace{50e-3, 20.0, 0, 1, 0, 0.0}), std::invalid_argument);
    }
    SUBCASE("round trip through a simulated run")
    {
        auto m = RectifierModel::tabulated({{5e-5, 0.15}, {1e-4, 0.22}, {4e-4, 0.35}, {1e-3, 0.48}});
        for (double dbm : {-10.0, -4.0, 0.0})
        {
            double p = dbm_to_watts(dbm);
            auto trace = measure_efficiency_trace(m, p, 50e-3, 4.23e-6, 0.5, 20.0, 1e-3);
            CHECK(trace.v_end > trace.v_start);
            auto r = recover_efficiency(trace);
            CHECK(r.consistent);
            CHECK(std::abs(r.efficiency - m.efficiency(p)) <= 1e-3 * m.efficiency(p));
        }
    }
}
