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


#include "irs/scenario.hpp"
#include "irs/errors.hpp"
#include "irs/units.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace irs {

namespace {

using nlohmann::json;

const std::set<std::string> kRequired = {
    "beta_sd_db", "beta_sr_dhdv_db", "beta_rd_dhdv_db", "carrier_ghz", "n_h",  "n_v",
    "spacing_over_lambda", "rho_dbm", "sigma2_dbm", "model", "design",
};
const std::set<std::string> kOptional = {"exp_magnitude", "theta", "seed", "xi_min", "xi_max", "xi_step"};

double get_number(const json& j, const std::string& key)
{
    const json& v = j.at(key);
    if (!v.is_number()) throw ScenarioError(key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ScenarioError(key, "must be finite");
    return x;
}

std::uint64_t get_count(const json& j, const std::string& key)
{
    const json& v = j.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
        if (v.get<std::int64_t>() < 0) throw ScenarioError(key, "must be >= 0");
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    throw ScenarioError(key, "expected a non-negative integer");
}

std::string get_string(const json& j, const std::string& key)
{
    const json& v = j.at(key);
    if (!v.is_string()) throw ScenarioError(key, "expected a string");
    return v.get<std::string>();
}

bool known_design(const std::string& d)
{
    return d == "equal" || d == "fixed" || d == "uniform_random" || d == "optimal_csi";
}

} // namespace

std::string model_name(CorrelationModel m)
{
    switch (m) {
    case CorrelationModel::Sinc: return "sinc";
    case CorrelationModel::Exponential: return "exponential";
    case CorrelationModel::Uncorrelated: return "uncorrelated";
    }
    return "?";
}

CorrelationModel parse_model(const std::string& s)
{
    if (s == "sinc") return CorrelationModel::Sinc;
    if (s == "exponential") return CorrelationModel::Exponential;
    if (s == "uncorrelated") return CorrelationModel::Uncorrelated;
    throw ScenarioError("model", "unknown model '" + s + "' (sinc|exponential|uncorrelated)");
}

void Scenario::validate() const
{
    if (beta_sd_db && !std::isfinite(*beta_sd_db)) throw ScenarioError("beta_sd_db", "must be finite or null");
    if (!std::isfinite(beta_sr_dhdv_db)) throw ScenarioError("beta_sr_dhdv_db", "must be finite");
    if (!std::isfinite(beta_rd_dhdv_db)) throw ScenarioError("beta_rd_dhdv_db", "must be finite");
    if (!(carrier_ghz > 0.0) || !std::isfinite(carrier_ghz)) throw ScenarioError("carrier_ghz", "must be > 0");
    if (n_h < 1) throw ScenarioError("n_h", "must be >= 1");
    if (n_v < 1) throw ScenarioError("n_v", "must be >= 1");
    if (!(spacing_over_lambda > 0.0) || !std::isfinite(spacing_over_lambda)) {
        throw ScenarioError("spacing_over_lambda", "must be > 0");
    }
    if (!std::isfinite(rho_dbm)) throw ScenarioError("rho_dbm", "must be finite");
    if (!std::isfinite(sigma2_dbm)) throw ScenarioError("sigma2_dbm", "must be finite");
    if (!(exp_magnitude >= 0.0 && exp_magnitude < 1.0)) throw ScenarioError("exp_magnitude", "must be in [0, 1)");
    if (!known_design(design)) {
        throw ScenarioError("design", "unknown design '" + design + "' (equal|fixed|uniform_random|optimal_csi)");
    }
    for (double t : theta) {
        if (!std::isfinite(t)) throw ScenarioError("theta", "angles must be finite");
    }
    if (design == "fixed" && theta.size() != size()) {
        throw ScenarioError("theta", "fixed design needs " + std::to_string(size()) + " angles, got " +
                                         std::to_string(theta.size()));
    }
    if (design != "fixed" && theta.size() != 1) throw ScenarioError("theta", "expected a single angle");
    if (!std::isfinite(xi_min) || xi_min < 0.0) throw ScenarioError("xi_min", "must be >= 0");
    if (!std::isfinite(xi_max)) throw ScenarioError("xi_max", "must be finite");
    if (xi_min > xi_max) throw ScenarioError("xi_max", "must be >= xi_min");
    if (!(xi_step > 0.0) || !std::isfinite(xi_step)) throw ScenarioError("xi_step", "must be > 0");
}

ArrayGeometry Scenario::geometry() const
{
    const double lambda = units::wavelength_m(carrier_ghz);
    const double d = spacing_over_lambda * lambda;
    return {n_h, n_v, d, d, lambda};
}

double Scenario::beta_sd() const { return beta_sd_db ? units::db_to_linear(*beta_sd_db) : 0.0; }
double Scenario::rho_watts() const { return units::dbm_to_watts(rho_dbm); }
double Scenario::sigma2_watts() const { return units::dbm_to_watts(sigma2_dbm); }

SystemParameters Scenario::parameters(double xi) const
{
    SystemParameters p;
    p.geometry = geometry();
    const double area = p.geometry.d_h * p.geometry.d_v;
    p.beta_sd = beta_sd();
    p.beta_sr = units::db_to_linear(beta_sr_dhdv_db) / area;
    p.beta_rd = units::db_to_linear(beta_rd_dhdv_db) / area;
    p.rho = rho_watts();
    p.sigma2 = sigma2_watts();
    p.xi = xi;
    return p;
}

PhaseShiftDesign Scenario::phase_design() const
{
    if (design == "equal") return design::Equal{theta.at(0)};
    if (design == "fixed") return design::Fixed{theta};
    if (design == "uniform_random") return design::UniformRandom{seed};
    if (design == "optimal_csi") return design::OptimalCsi{};
    throw ScenarioError("design", "unknown design '" + design + "'");
}

CorrelationMatrix Scenario::base_correlation() const
{
    switch (model) {
    case CorrelationModel::Sinc: return build_sinc_correlation(geometry());
    case CorrelationModel::Exponential: return build_exponential_correlation(size(), exp_magnitude);
    case CorrelationModel::Uncorrelated: return CorrelationMatrix::identity(size());
    }
    throw ScenarioError("model", "unknown model");
}

CorrelationMatrix Scenario::r_sr() const
{
    return scale_covariance(base_correlation(), units::db_to_linear(beta_sr_dhdv_db));
}

CorrelationMatrix Scenario::r_rd() const
{
    return scale_covariance(base_correlation(), units::db_to_linear(beta_rd_dhdv_db));
}

std::vector<double> Scenario::xi_grid() const
{
    validate();
    const auto count = static_cast<std::size_t>(std::floor((xi_max - xi_min) / xi_step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) grid[i] = xi_min + static_cast<double>(i) * xi_step;
    return grid;
}

std::string Scenario::to_json() const
{
    json j;
    j["beta_sd_db"] = beta_sd_db ? json(*beta_sd_db) : json(nullptr);
    j["beta_sr_dhdv_db"] = beta_sr_dhdv_db;
    j["beta_rd_dhdv_db"] = beta_rd_dhdv_db;
    j["carrier_ghz"] = carrier_ghz;
    j["n_h"] = n_h;
    j["n_v"] = n_v;
    j["spacing_over_lambda"] = spacing_over_lambda;
    j["rho_dbm"] = rho_dbm;
    j["sigma2_dbm"] = sigma2_dbm;
    j["model"] = model_name(model);
    j["exp_magnitude"] = exp_magnitude;
    j["design"] = design;
    if (design == "fixed") {
        j["theta"] = theta;
    } else {
        j["theta"] = theta.empty() ? 0.0 : theta.front();
    }
    j["seed"] = seed;
    j["xi_min"] = xi_min;
    j["xi_max"] = xi_max;
    j["xi_step"] = xi_step;
    return j.dump();
}

std::uint64_t Scenario::hash() const
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : to_json()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex_hash(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Scenario parse_scenario(const std::string& json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError("", std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw ScenarioError("", "scenario must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!kRequired.count(key) && !kOptional.count(key)) throw ScenarioError(key, "unknown key");
    }
    for (const auto& key : kRequired) {
        if (!j.contains(key)) throw ScenarioError(key, "missing required key");
    }

    Scenario s;
    if (j.at("beta_sd_db").is_null()) {
        s.beta_sd_db.reset();
    } else {
        s.beta_sd_db = get_number(j, "beta_sd_db");
    }
    s.beta_sr_dhdv_db = get_number(j, "beta_sr_dhdv_db");
    s.beta_rd_dhdv_db = get_number(j, "beta_rd_dhdv_db");
    s.carrier_ghz = get_number(j, "carrier_ghz");
    s.n_h = static_cast<std::size_t>(get_count(j, "n_h"));
    s.n_v = static_cast<std::size_t>(get_count(j, "n_v"));
    s.spacing_over_lambda = get_number(j, "spacing_over_lambda");
    s.rho_dbm = get_number(j, "rho_dbm");
    s.sigma2_dbm = get_number(j, "sigma2_dbm");
    s.model = parse_model(get_string(j, "model"));
    if (j.contains("exp_magnitude")) s.exp_magnitude = get_number(j, "exp_magnitude");
    s.design = get_string(j, "design");
    if (j.contains("theta")) {
        const json& t = j.at("theta");
        if (t.is_number()) {
            s.theta = {t.get<double>()};
        } else if (t.is_array()) {
            s.theta.clear();
            for (const auto& v : t) {
                if (!v.is_number()) throw ScenarioError("theta", "array entries must be numbers");
                s.theta.push_back(v.get<double>());
            }
        } else {
            throw ScenarioError("theta", "expected a number or an array of numbers");
        }
    } else if (s.design == "fixed") {
        throw ScenarioError("theta", "fixed design needs a theta array");
    }
    if (j.contains("seed")) s.seed = get_count(j, "seed");
    if (j.contains("xi_min")) s.xi_min = get_number(j, "xi_min");
    if (j.contains("xi_max")) s.xi_max = get_number(j, "xi_max");
    if (j.contains("xi_step")) s.xi_step = get_number(j, "xi_step");
    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ScenarioError("", "cannot open scenario file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str());
}

std::vector<std::string> preset_names()
{
    return {"fig2a", "fig2b", "fig2c", "fig2a-n64", "fig2b-n64"};
}

Scenario preset(const std::string& name)
{
    Scenario s;  // defaults are the fig2a link budget
    std::string base = name;
    if (base.size() > 4 && base.substr(base.size() - 4) == "-n64") {
        base.resize(base.size() - 4);
        s.n_h = 8;
        s.n_v = 8;
    }
    if (base == "fig2a") return s;
    if (base == "fig2b") {
        s.beta_sd_db.reset();
        return s;
    }
    if (base == "fig2c" && s.n_h == 14) {
        s.beta_sd_db.reset();
        s.theta = {std::numbers::pi / 4.0};
        return s;
    }
    throw ScenarioError("", "unknown preset '" + name + "'");
}

Scenario resolve_scenario(const std::string& name_or_path)
{
    for (const auto& p : preset_names()) {
        if (p == name_or_path) return preset(p);
    }
    return load_scenario(name_or_path);
}

} // namespace irs
