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


#ifndef IRS_SWEEP_HPP
#define IRS_SWEEP_HPP

#include "irs/closedform.hpp"
#include "irs/montecarlo.hpp"
#include "irs/scenario.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace irs {

// Absent values (no MC run, no closed form for optimal_csi) are NaN.
struct CurveRow {
    double xi = 0.0;
    double z = 0.0;
    double p_closed_form = 0.0;
    double p_mc = 0.0;
    double std_err = 0.0;
    double k_a = 0.0;
    double w_a = 0.0;
};

struct Provenance {
    std::uint64_t scenario_hash = 0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::string tool_version;
};

struct OutageCurve {
    Provenance provenance;
    std::vector<CurveRow> rows;

    // Strictly increasing xi, probabilities in [0, 1] (or NaN).
    void validate() const;
};

std::string tool_version();

// Gamma parameters for the scenario's design: Corollary 1 for equal,
// Corollary 2 for uniform_random, Theorem 1 for fixed; nullopt for optimal_csi.
std::optional<GammaParams> closed_form_params(double beta_sd, const PhaseShiftDesign& d,
                                              const CorrelationMatrix& r_sr, const CorrelationMatrix& r_rd);
std::optional<GammaParams> closed_form_params(const Scenario& s);

// One row per xi of the scenario grid; trials == 0 skips Monte Carlo.
OutageCurve run_curve(const Scenario& s, std::uint64_t trials, std::uint64_t seed,
                      const mc::McOptions& options = {});

// Same, on an explicit grid (must be strictly increasing).
OutageCurve run_curve(const Scenario& s, const std::vector<double>& xi_grid, std::uint64_t trials,
                      std::uint64_t seed, const mc::McOptions& options = {});

std::string format_curve_csv(const OutageCurve& c);
OutageCurve parse_curve_csv(const std::string& text);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// p[i][j] = P(k_grid[i], w_grid[j]) at fixed z.
struct OutageSurface {
    double z = 2.0;
    std::vector<double> k_grid;
    std::vector<double> w_grid;
    std::vector<std::vector<double>> p;
};

// 0.25, 0.5, ..., 4
std::vector<double> default_surface_axis();
OutageSurface run_surface(const std::vector<double>& k_grid, const std::vector<double>& w_grid, double z);
std::string format_surface_csv(const OutageSurface& s);

struct CompareCurve {
    CorrelationModel model = CorrelationModel::Sinc;
    std::string design;
    OutageCurve curve;
};

// One curve per (model, design) on the base scenario's grid, everything else fixed.
std::vector<CompareCurve> run_compare_correlations(const Scenario& base,
                                                   const std::vector<PhaseShiftDesign>& designs,
                                                   const std::vector<CorrelationModel>& models,
                                                   std::uint64_t trials, std::uint64_t seed,
                                                   const mc::McOptions& options = {});
std::vector<CompareCurve> run_compare_correlations(const Scenario& base,
                                                   const std::vector<PhaseShiftDesign>& designs,
                                                   const std::vector<CorrelationModel>& models,
                                                   const std::vector<double>& xi_grid, std::uint64_t trials,
                                                   std::uint64_t seed, const mc::McOptions& options = {});

// Long format: model,design,xi,z,p_closed_form,p_mc,std_err,k_a,w_a
std::string format_compare_csv(const std::vector<CompareCurve>& curves);

} // namespace irs

#endif // IRS_SWEEP_HPP
