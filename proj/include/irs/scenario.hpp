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


#ifndef IRS_SCENARIO_HPP
#define IRS_SCENARIO_HPP

#include "irs/closedform.hpp"
#include "irs/correlation.hpp"
#include "irs/phaseshift.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace irs {

enum class CorrelationModel { Sinc, Exponential, Uncorrelated };

std::string model_name(CorrelationModel m);
// Throws ScenarioError("model", ...) on anything but sinc|exponential|uncorrelated.
CorrelationModel parse_model(const std::string& s);

// Link setup in the units people quote: dB gains, dBm powers, GHz carrier.
// The scaled products beta_sr*d_H*d_V and beta_rd*d_H*d_V are configured
// directly; the correlation model is multiplied by them.
struct Scenario {
    std::optional<double> beta_sd_db = -90.0;  // nullopt: direct link blocked
    double beta_sr_dhdv_db = -84.0;
    double beta_rd_dhdv_db = -75.0;
    double carrier_ghz = 3.0;
    std::size_t n_h = 14;
    std::size_t n_v = 14;
    double spacing_over_lambda = 1.0 / 40.0;
    double rho_dbm = 8.0;
    double sigma2_dbm = -94.0;
    CorrelationModel model = CorrelationModel::Sinc;
    double exp_magnitude = 0.95;
    std::string design = "equal";   // equal | fixed | uniform_random | optimal_csi
    std::vector<double> theta{0.0}; // one angle for equal, N angles for fixed
    std::uint64_t seed = 0;         // uniform_random phase seed
    double xi_min = 0.0;
    double xi_max = 8.0;
    double xi_step = 0.25;

    // Throws ScenarioError naming the offending field.
    void validate() const;

    std::size_t size() const noexcept { return n_h * n_v; }
    ArrayGeometry geometry() const;
    double beta_sd() const;  // linear, 0 when blocked
    double rho_watts() const;
    double sigma2_watts() const;
    SystemParameters parameters(double xi) const;

    PhaseShiftDesign phase_design() const;
    // Unscaled model matrix R (unit diagonal).
    CorrelationMatrix base_correlation() const;
    CorrelationMatrix r_sr() const;
    CorrelationMatrix r_rd() const;

    // xi_min, xi_min + step, ... up to xi_max (inclusive within 1e-9 steps).
    std::vector<double> xi_grid() const;

    // Canonical JSON: every key, sorted, full precision.
    std::string to_json() const;
    // FNV-1a 64 of to_json().
    std::uint64_t hash() const;
};

// Parses the scenario schema. Unknown keys, missing required keys, wrong
// types and invariant violations all raise ScenarioError with the field name.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

// Built-in presets: "fig2a", "fig2b", "fig2c", plus "-n64" variants on an 8x8 array.
std::vector<std::string> preset_names();
Scenario preset(const std::string& name);

// A preset name or a path to a JSON file.
Scenario resolve_scenario(const std::string& name_or_path);

std::string hex_hash(std::uint64_t h);

} // namespace irs

#endif // IRS_SCENARIO_HPP
