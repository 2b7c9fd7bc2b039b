// SPDX-License-Identifier: Apache-2.0
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


#include "irs/closedform.hpp"
#include "irs/errors.hpp"
#include "irs/sweep.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <cstring>
#include <numbers>

using namespace irs;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0 || (std::isnan(a) && std::isnan(b)); }

} // namespace

TEST(Curve, ClosedFormOnlyIsMonotone)
{
    const OutageCurve c = run_curve(preset("fig2a"), 0, 7);
    ASSERT_EQ(c.rows.size(), 33u);
    EXPECT_EQ(c.rows.front().p_closed_form, 0.0);
    for (std::size_t i = 1; i < c.rows.size(); ++i) {
        EXPECT_GT(c.rows[i].xi, c.rows[i - 1].xi);
        EXPECT_GE(c.rows[i].p_closed_form, c.rows[i - 1].p_closed_form);
    }
    for (const auto& r : c.rows) {
        EXPECT_TRUE(std::isnan(r.p_mc));
        EXPECT_TRUE(std::isnan(r.std_err));
    }
    EXPECT_EQ(c.provenance.trials, 0u);
    EXPECT_EQ(c.provenance.scenario_hash, preset("fig2a").hash());
}

TEST(Curve, UniformRandomUsesRandomPhaseMoments)
{
    Scenario s = preset("fig2b");
    s.design = "uniform_random";
    const OutageCurve c = run_curve(s, 0, 7);
    const GammaParams gp = gamma_params_uniform_random(0.0, s.r_sr(), s.r_rd());
    for (const auto& r : c.rows) {
        EXPECT_EQ(r.k_a, gp.k_a);
        EXPECT_EQ(r.w_a, gp.w_a);
    }
    const GammaParams eq = gamma_params_equal_phase(0.0, s.r_sr(), s.r_rd());
    EXPECT_NE(gp.k_a, eq.k_a);
}

TEST(Curve, OptimalCsiHasNoClosedForm)
{
    Scenario s = preset("fig2b-n64");
    s.design = "optimal_csi";
    const OutageCurve c = run_curve(s, 1000, 1);
    for (const auto& r : c.rows) {
        EXPECT_TRUE(std::isnan(r.p_closed_form));
        EXPECT_FALSE(std::isnan(r.p_mc));
    }
}

TEST(Curve, Fig2aAgreesWithMonteCarlo)
{
    const OutageCurve c = run_curve(preset("fig2a"), 100000, 7);
    double worst = 0.0;
    for (const auto& r : c.rows) worst = std::max(worst, std::abs(r.p_closed_form - r.p_mc));
    EXPECT_LE(worst, 0.02);
}

TEST(Curve, RejectsNonIncreasingGrid)
{
    const Scenario s = preset("fig2a-n64");
    EXPECT_THROW(run_curve(s, {1.0, 0.5}, 0, 1), DomainError);
}

TEST(Csv, RoundTripIsExact)
{
    Scenario s = preset("fig2a-n64");
    s.xi_step = 0.5;
    const OutageCurve c = run_curve(s, 2000, 3);
    const std::string text = format_curve_csv(c);
    EXPECT_EQ(text.rfind("# scenario_hash=" + hex_hash(s.hash()), 0), 0u);
    const OutageCurve d = parse_curve_csv(text);
    EXPECT_EQ(d.provenance.scenario_hash, c.provenance.scenario_hash);
    EXPECT_EQ(d.provenance.seed, 3u);
    EXPECT_EQ(d.provenance.trials, 2000u);
    EXPECT_EQ(d.provenance.tool_version, tool_version());
    ASSERT_EQ(d.rows.size(), c.rows.size());
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        const auto& a = c.rows[i];
        const auto& b = d.rows[i];
        for (auto [x, y] : {std::pair{a.xi, b.xi}, {a.z, b.z}, {a.p_closed_form, b.p_closed_form}, {a.p_mc, b.p_mc},
                            {a.std_err, b.std_err}, {a.k_a, b.k_a}, {a.w_a, b.w_a}}) {
            EXPECT_TRUE(same_bits(x, y)) << x << " vs " << y;
        }
    }
    EXPECT_EQ(format_curve_csv(d), text);
}

TEST(Csv, NanRoundTrip)
{
    const OutageCurve c = run_curve(preset("fig2a-n64"), 0, 1);
    const OutageCurve d = parse_curve_csv(format_curve_csv(c));
    EXPECT_TRUE(std::isnan(d.rows[3].p_mc));
    EXPECT_THROW(parse_curve_csv("xi,z\n1,2\n"), DomainError);
    EXPECT_THROW(parse_curve_csv("xi,z,p_closed_form,p_mc,std_err,k_a,w_a\n1,2,3\n"), DomainError);
}

TEST(Surface, ExponentialPoint)
{
    const OutageSurface s = run_surface({1.0}, {2.0}, 2.0);
    EXPECT_NEAR(s.p[0][0], 0.6321205588, 1e-10);
    EXPECT_NEAR(s.p[0][0], 1.0 - std::exp(-1.0), 1e-12);
}

TEST(Surface, MonotoneAlongBothAxes)
{
    const auto axis = default_surface_axis();
    ASSERT_EQ(axis.size(), 16u);
    const OutageSurface s = run_surface(axis, axis, 2.0);
    for (std::size_t i = 0; i < axis.size(); ++i) {
        for (std::size_t j = 1; j < axis.size(); ++j) EXPECT_LT(s.p[i][j], s.p[i][j - 1]);
    }
    for (std::size_t j = 0; j < axis.size(); ++j) {
        for (std::size_t i = 1; i < axis.size(); ++i) EXPECT_LT(s.p[i][j], s.p[i - 1][j]);
    }
    const std::string csv = format_surface_csv(s);
    EXPECT_NE(csv.find("k_a\\w_a,0.25,0.5"), std::string::npos);
    EXPECT_THROW(run_surface({0.0}, {1.0}, 2.0), DomainError);
}

TEST(Compare, DirectLinkMakesModelsCoincide)
{
    Scenario blocked = preset("fig2c");
    Scenario present = blocked;
    present.beta_sd_db = -90.0;
    const std::vector<PhaseShiftDesign> eq{design::Equal{std::numbers::pi / 4}};
    const std::vector<CorrelationModel> models{CorrelationModel::Sinc, CorrelationModel::Exponential,
                                               CorrelationModel::Uncorrelated};
    auto gap = [](const std::vector<CompareCurve>& c) {
        double g = 0.0;
        for (std::size_t k = 0; k < c[0].curve.rows.size(); ++k) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                for (std::size_t j = 0; j < c.size(); ++j) {
                    g = std::max(g, std::abs(c[i].curve.rows[k].p_closed_form - c[j].curve.rows[k].p_closed_form));
                }
            }
        }
        return g;
    };
    const double gb = gap(run_compare_correlations(blocked, eq, models, 0, 1));
    const double gp = gap(run_compare_correlations(present, eq, models, 0, 1));
    EXPECT_LT(5 * gp, gb);
}

TEST(Compare, UncorrelatedIsPhaseInvariant)
{
    const Scenario s = preset("fig2c");
    const auto c = run_compare_correlations(s, {design::Equal{0.0}, design::Equal{std::numbers::pi / 4}},
                                            {CorrelationModel::Uncorrelated}, 0, 1);
    ASSERT_EQ(c.size(), 2u);
    for (std::size_t k = 0; k < c[0].curve.rows.size(); ++k) {
        EXPECT_EQ(c[0].curve.rows[k].p_closed_form, c[1].curve.rows[k].p_closed_form);
    }
}

TEST(Compare, LongCsvLayout)
{
    Scenario s = preset("fig2c");
    s.n_h = s.n_v = 4;
    s.xi_step = 4.0;
    const auto c = run_compare_correlations(s, {design::Equal{0.0}, design::UniformRandom{1}},
                                            {CorrelationModel::Sinc, CorrelationModel::Exponential}, 500, 2);
    const std::string csv = format_compare_csv(c);
    EXPECT_NE(csv.find("model,design,xi,z,p_closed_form,p_mc,std_err,k_a,w_a\n"), std::string::npos);
    EXPECT_NE(csv.find("\nexponential,uniform_random,8,"), std::string::npos);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4 + 1 + 4 * 3);
}
