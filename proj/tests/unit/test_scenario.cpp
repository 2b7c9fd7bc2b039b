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


#include "irs/errors.hpp"
#include "irs/scenario.hpp"
#include "irs/units.hpp"

#include <nlohmann/json.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <set>

using namespace irs;
using nlohmann::json;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

json base_json() { return json::parse(preset("fig2a").to_json()); }

std::string field_error(const json& j)
{
    try {
        parse_scenario(j.dump());
    } catch (const ScenarioError& e) {
        return e.field();
    }
    return "<no error>";
}

} // namespace

TEST(Units, SpotValues)
{
    EXPECT_LE(rel(units::db_to_linear(-90.0), 1e-9), 1e-12);
    EXPECT_LE(rel(units::dbm_to_watts(8.0), std::pow(10.0, 0.8) * 1e-3), 1e-12);
    EXPECT_LE(rel(units::dbm_to_watts(-94.0), std::pow(10.0, -12.4)), 1e-12);
    EXPECT_DOUBLE_EQ(units::dbm_to_watts(30.0), 1.0);
    EXPECT_LE(rel(units::wavelength_m(3.0), 0.0999308193333333), 1e-12);
}

TEST(Units, RoundTrip)
{
    for (double x = -200.0; x <= 100.0; x += 0.37) {
        EXPECT_LE(std::abs(units::linear_to_db(units::db_to_linear(x)) - x), 1e-12 * std::max(1.0, std::abs(x)));
        EXPECT_LE(std::abs(units::watts_to_dbm(units::dbm_to_watts(x)) - x), 1e-12 * std::max(1.0, std::abs(x)));
        const double w = units::db_to_linear(x);
        EXPECT_LE(rel(units::db_to_linear(units::linear_to_db(w)), w), 1e-12);
    }
    EXPECT_THROW(units::linear_to_db(0.0), DomainError);
    EXPECT_THROW(units::watts_to_dbm(-1.0), DomainError);
}

TEST(Preset, Fig2a)
{
    const Scenario s = preset("fig2a");
    EXPECT_EQ(s.size(), 196u);
    EXPECT_EQ(s.carrier_ghz, 3.0);
    EXPECT_EQ(s.rho_dbm, 8.0);
    EXPECT_EQ(s.sigma2_dbm, -94.0);
    EXPECT_EQ(s.spacing_over_lambda, 1.0 / 40.0);
    const ArrayGeometry g = s.geometry();
    EXPECT_LE(rel(g.d_h, g.lambda / 40), 1e-15);
    EXPECT_LE(rel(g.d_v, g.lambda / 40), 1e-15);
    EXPECT_LE(rel(s.beta_sd(), 1e-9), 1e-12);
    const SystemParameters p = s.parameters(2.0);
    EXPECT_LE(rel(p.beta_sr * g.d_h * g.d_v, std::pow(10.0, -8.4)), 1e-12);
    EXPECT_LE(rel(p.beta_rd * g.d_h * g.d_v, std::pow(10.0, -7.5)), 1e-12);
    EXPECT_LE(rel(s.r_sr()(0, 0).real(), std::pow(10.0, -8.4)), 1e-12);
    EXPECT_EQ(s.xi_grid().size(), 33u);
}

TEST(Preset, Fig2bBlocked)
{
    const Scenario s = preset("fig2b");
    EXPECT_FALSE(s.beta_sd_db.has_value());
    EXPECT_EQ(s.beta_sd(), 0.0);
    EXPECT_EQ(s.size(), 196u);
}

TEST(Preset, Fig2cAndSmallVariants)
{
    const Scenario c = preset("fig2c");
    EXPECT_EQ(c.theta.at(0), std::numbers::pi / 4);
    EXPECT_EQ(preset("fig2a-n64").size(), 64u);
    EXPECT_THROW(preset("fig3"), ScenarioError);
}

TEST(Preset, BundledFilesMatch)
{
    const std::string dir = std::string(IRS_SOURCE_DIR) + "/scenarios/";
    EXPECT_EQ(load_scenario(dir + "fig2a.json").to_json(), preset("fig2a").to_json());
    EXPECT_EQ(load_scenario(dir + "fig2b.json").to_json(), preset("fig2b").to_json());
    EXPECT_EQ(load_scenario(dir + "fig2c.json").to_json(), preset("fig2c").to_json());
    EXPECT_EQ(load_scenario(dir + "fig2a_n64.json").to_json(), preset("fig2a-n64").to_json());
    EXPECT_EQ(load_scenario(dir + "fig2b_n64.json").to_json(), preset("fig2b-n64").to_json());
    EXPECT_EQ(load_scenario(dir + "fig2b_uniform_random.json").design, "uniform_random");
}

TEST(Parse, RoundTrip)
{
    for (const auto& name : preset_names()) {
        const Scenario s = preset(name);
        const Scenario t = parse_scenario(s.to_json());
        EXPECT_EQ(t.to_json(), s.to_json());
        EXPECT_EQ(t.hash(), s.hash());
    }
}

TEST(Parse, MissingFieldNamed)
{
    json j = base_json();
    j.erase("rho_dbm");
    EXPECT_EQ(field_error(j), "rho_dbm");
    j = base_json();
    j.erase("model");
    EXPECT_EQ(field_error(j), "model");
}

TEST(Parse, OptionalKeysDefault)
{
    json j = base_json();
    for (const char* k : {"exp_magnitude", "theta", "seed", "xi_min", "xi_max", "xi_step"}) j.erase(k);
    const Scenario s = parse_scenario(j.dump());
    EXPECT_EQ(s.xi_grid().size(), 33u);
    EXPECT_EQ(s.theta, std::vector<double>{0.0});
}

TEST(Parse, Rejections)
{
    const std::vector<std::pair<std::function<void(json&)>, std::string>> cases = {
        {[](json& j) { j["rho"] = 8; }, "rho"},
        {[](json& j) { j["rho_dbm"] = "8"; }, "rho_dbm"},
        {[](json& j) { j["n_h"] = 0; }, "n_h"},
        {[](json& j) { j["n_v"] = -3; }, "n_v"},
        {[](json& j) { j["n_v"] = 2.5; }, "n_v"},
        {[](json& j) { j["carrier_ghz"] = 0; }, "carrier_ghz"},
        {[](json& j) { j["spacing_over_lambda"] = -0.1; }, "spacing_over_lambda"},
        {[](json& j) { j["model"] = "bessel"; }, "model"},
        {[](json& j) { j["exp_magnitude"] = 1.0; }, "exp_magnitude"},
        {[](json& j) { j["design"] = "greedy"; }, "design"},
        {[](json& j) { j["design"] = "fixed"; j["theta"] = json::array({0.1, 0.2}); }, "theta"},
        {[](json& j) { j["theta"] = "pi"; }, "theta"},
        {[](json& j) { j["theta"] = json::array({0.1, 0.2}); }, "theta"},
        {[](json& j) { j["seed"] = -1; }, "seed"},
        {[](json& j) { j["xi_min"] = 5; j["xi_max"] = 1; }, "xi_max"},
        {[](json& j) { j["xi_step"] = 0; }, "xi_step"},
        {[](json& j) { j["xi_min"] = -1; }, "xi_min"},
        {[](json& j) { j["beta_sd_db"] = "off"; }, "beta_sd_db"},
    };
    for (const auto& [mutate, field] : cases) {
        json j = base_json();
        mutate(j);
        EXPECT_EQ(field_error(j), field) << j.dump();
    }
    EXPECT_THROW(parse_scenario("{not json"), ScenarioError);
    EXPECT_THROW(parse_scenario("[1, 2]"), ScenarioError);
    EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ScenarioError);
}

TEST(Parse, FixedDesign)
{
    json j = base_json();
    j["n_h"] = 2;
    j["n_v"] = 2;
    j["design"] = "fixed";
    j["theta"] = json::array({0.1, -0.2, 3.0, 1.0});
    const Scenario s = parse_scenario(j.dump());
    EXPECT_TRUE(std::holds_alternative<design::Fixed>(s.phase_design()));
    EXPECT_EQ(parse_scenario(s.to_json()).theta, s.theta);
}

TEST(Hash, ChangesIffFieldChanges)
{
    const Scenario base = preset("fig2a");
    EXPECT_EQ(base.hash(), preset("fig2a").hash());
    const std::vector<std::function<void(Scenario&)>> edits = {
        [](Scenario& s) { s.beta_sd_db = -90.5; },
        [](Scenario& s) { s.beta_sd_db.reset(); },
        [](Scenario& s) { s.beta_sr_dhdv_db += 1e-9; },
        [](Scenario& s) { s.beta_rd_dhdv_db = -70; },
        [](Scenario& s) { s.carrier_ghz = 28; },
        [](Scenario& s) { s.n_h = 7; },
        [](Scenario& s) { s.n_v = 28; },
        [](Scenario& s) { s.spacing_over_lambda = 0.5; },
        [](Scenario& s) { s.rho_dbm = 10; },
        [](Scenario& s) { s.sigma2_dbm = -100; },
        [](Scenario& s) { s.model = CorrelationModel::Exponential; },
        [](Scenario& s) { s.exp_magnitude = 0.9; },
        [](Scenario& s) { s.design = "uniform_random"; },
        [](Scenario& s) { s.theta = {0.1}; },
        [](Scenario& s) { s.seed = 1; },
        [](Scenario& s) { s.xi_min = 0.5; },
        [](Scenario& s) { s.xi_max = 7; },
        [](Scenario& s) { s.xi_step = 0.5; },
    };
    std::set<std::uint64_t> seen{base.hash()};
    for (const auto& e : edits) {
        Scenario s = base;
        e(s);
        EXPECT_NE(s.hash(), base.hash());
        seen.insert(s.hash());
    }
    EXPECT_EQ(seen.size(), edits.size() + 1);
    EXPECT_EQ(hex_hash(0x1234u), "0000000000001234");
}

TEST(Scenario, ModelsProduceExpectedMatrices)
{
    Scenario s = preset("fig2a-n64");
    s.model = CorrelationModel::Uncorrelated;
    EXPECT_EQ(s.base_correlation().matrix(), CMatrix::Identity(64, 64));
    s.model = CorrelationModel::Exponential;
    EXPECT_DOUBLE_EQ(s.base_correlation()(0, 1).real(), 0.95);
    s.model = CorrelationModel::Sinc;
    EXPECT_NEAR(s.base_correlation()(0, 1).real(), 0.995893, 1e-6);
    EXPECT_EQ(parse_model("exponential"), CorrelationModel::Exponential);
    EXPECT_EQ(model_name(CorrelationModel::Uncorrelated), "uncorrelated");
}

TEST(Scenario, GridInclusiveAndIncreasing)
{
    Scenario s;
    s.xi_min = 1.0;
    s.xi_max = 2.0;
    s.xi_step = 0.1;
    const auto g = s.xi_grid();
    ASSERT_EQ(g.size(), 11u);
    EXPECT_NEAR(g.back(), 2.0, 1e-12);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
}
