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


#include "irs/acceptance.hpp"
#include "irs/closedform.hpp"
#include "irs/correlation.hpp"
#include "irs/errors.hpp"
#include "irs/montecarlo.hpp"
#include "irs/phaseshift.hpp"
#include "irs/scenario.hpp"
#include "irs/special.hpp"
#include "irs/sweep.hpp"
#include "irs/units.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

irs::CorrelationMatrix as_cov(const irs::CMatrix& m) { return irs::CorrelationMatrix(m); }

irs::PhaseShiftDesign make_design(const std::string& name, py::object theta, std::uint64_t seed)
{
    if (name == "equal") return irs::design::Equal{theta.is_none() ? 0.0 : theta.cast<double>()};
    if (name == "fixed") return irs::design::Fixed{theta.cast<std::vector<double>>()};
    if (name == "uniform_random") return irs::design::UniformRandom{seed};
    if (name == "optimal_csi") return irs::design::OptimalCsi{};
    throw irs::DomainError("unknown design '" + name + "'");
}

py::dict curve_dict(const irs::OutageCurve& c)
{
    std::vector<double> xi, z, pcf, pmc, se, k, w;
    for (const auto& r : c.rows) {
        xi.push_back(r.xi);
        z.push_back(r.z);
        pcf.push_back(r.p_closed_form);
        pmc.push_back(r.p_mc);
        se.push_back(r.std_err);
        k.push_back(r.k_a);
        w.push_back(r.w_a);
    }
    py::dict d;
    d["xi"] = xi;
    d["z"] = z;
    d["p_closed_form"] = pcf;
    d["p_mc"] = pmc;
    d["std_err"] = se;
    d["k_a"] = k;
    d["w_a"] = w;
    d["scenario_hash"] = irs::hex_hash(c.provenance.scenario_hash);
    d["seed"] = c.provenance.seed;
    d["trials"] = c.provenance.trials;
    d["csv"] = irs::format_curve_csv(c);
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Closed-form and Monte-Carlo outage probability of IRS-assisted links";
    m.attr("__version__") = irs::tool_version();

    py::register_exception<irs::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<irs::ScenarioError>(m, "ScenarioError", PyExc_ValueError);
    py::register_exception<irs::DegenerateScenarioError>(m, "DegenerateScenarioError", PyExc_ValueError);
    py::register_exception<irs::ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);
    py::register_exception<irs::InternalConsistencyError>(m, "InternalConsistencyError", PyExc_RuntimeError);

    // correlation
    m.def("element_position", [](std::size_t n_h, std::size_t n_v, double d_h, double d_v, double lambda,
                                 std::size_t index) {
        return irs::element_position({n_h, n_v, d_h, d_v, lambda}, index);
    }, py::arg("n_h"), py::arg("n_v"), py::arg("d_h"), py::arg("d_v"), py::arg("lam"), py::arg("index"));
    m.def("sinc_correlation", [](std::size_t n_h, std::size_t n_v, double d_h, double d_v, double lambda) {
        return irs::build_sinc_correlation({n_h, n_v, d_h, d_v, lambda}).matrix();
    }, py::arg("n_h"), py::arg("n_v"), py::arg("d_h"), py::arg("d_v"), py::arg("lam"));
    m.def("exponential_correlation", [](std::size_t n, double mag) {
        return irs::build_exponential_correlation(n, mag).matrix();
    }, py::arg("n"), py::arg("magnitude"));
    m.def("matrix_sqrt", [](const irs::CMatrix& r) { return irs::matrix_sqrt(as_cov(r)); }, py::arg("r"));

    // special functions and closed forms
    m.def("regularized_upper_gamma", &irs::special::regularized_upper_gamma, py::arg("a"), py::arg("x"));
    m.def("regularized_lower_gamma", &irs::special::regularized_lower_gamma, py::arg("a"), py::arg("x"));
    m.def("snr_threshold", py::overload_cast<double, double, double>(&irs::snr_threshold), py::arg("rho"),
          py::arg("sigma2"), py::arg("xi"));
    m.def("outage_probability", [](double k, double w, double z) { return irs::outage_probability({k, w}, z); },
          py::arg("k_a"), py::arg("w_a"), py::arg("z"));
    m.def("outage_sensitivity_wa",
          [](double k, double w, double z) { return irs::outage_sensitivity_wa({k, w}, z); }, py::arg("k_a"),
          py::arg("w_a"), py::arg("z"));
    m.def("moments_general", [](double beta_sd, const irs::CMatrix& r_sr, const irs::CMatrix& r_rd,
                                const irs::CVector& theta) {
        const auto x = irs::moments_general(beta_sd, as_cov(r_sr), as_cov(r_rd), theta);
        return py::make_tuple(x.mean, x.variance, x.second_moment);
    }, py::arg("beta_sd"), py::arg("r_sr"), py::arg("r_rd"), py::arg("diag_theta"));
    m.def("gamma_params", [](double beta_sd, const irs::CMatrix& r_sr, const irs::CMatrix& r_rd,
                             const std::string& design, py::object theta) {
        const auto d = make_design(design, theta, 0);
        const auto gp = irs::closed_form_params(beta_sd, d, as_cov(r_sr), as_cov(r_rd));
        if (!gp) throw irs::DomainError("no closed form for design '" + design + "'");
        return py::make_tuple(gp->k_a, gp->w_a);
    }, py::arg("beta_sd"), py::arg("r_sr"), py::arg("r_rd"), py::arg("design") = "equal",
       py::arg("theta") = py::none());
    m.def("random_phase_moments", [](const irs::CMatrix& r_sr, const irs::CMatrix& r_rd) {
        const auto v = irs::random_phase_moments(as_cov(r_sr), as_cov(r_rd));
        return py::make_tuple(v.nu, v.eta, v.delta);
    }, py::arg("r_sr"), py::arg("r_rd"));
    m.def("materialize", [](const std::string& design, std::size_t n, py::object theta, std::uint64_t seed,
                            std::uint64_t draw) { return irs::materialize(make_design(design, theta, seed), n, draw); },
          py::arg("design"), py::arg("n"), py::arg("theta") = py::none(), py::arg("seed") = 0,
          py::arg("draw_index") = 0);

    // Monte Carlo
    m.def("sample_gains", [](double beta_sd, const irs::CMatrix& r_sr, const irs::CMatrix& r_rd,
                             const std::string& design, std::uint64_t trials, std::uint64_t seed, py::object theta,
                             std::uint64_t design_seed, unsigned threads) {
        const auto d = make_design(design, theta, design_seed);
        const auto cs = as_cov(r_sr);
        const auto cr = as_cov(r_rd);
        py::gil_scoped_release nogil;
        return irs::mc::sample_gains(beta_sd, cs, cr, d, trials, seed, {threads});
    }, py::arg("beta_sd"), py::arg("r_sr"), py::arg("r_rd"), py::arg("design") = "equal",
       py::arg("trials") = 100000, py::arg("seed") = 7, py::arg("theta") = py::none(), py::arg("design_seed") = 0,
       py::arg("threads") = 0);

    // scenarios and sweeps
    m.def("preset_names", &irs::preset_names);
    m.def("scenario_json", [](const std::string& name_or_path) { return irs::resolve_scenario(name_or_path).to_json(); },
          py::arg("scenario"));
    m.def("parse_scenario", [](const std::string& text) { return irs::parse_scenario(text).to_json(); },
          py::arg("json_text"));
    m.def("run_curve", [](const std::string& scenario, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
        const auto s = irs::resolve_scenario(scenario);
        irs::OutageCurve c;
        {
            py::gil_scoped_release nogil;
            c = irs::run_curve(s, trials, seed, {threads});
        }
        return curve_dict(c);
    }, py::arg("scenario"), py::arg("trials") = 0, py::arg("seed") = 7, py::arg("threads") = 0);
    m.def("run_surface", [](const std::vector<double>& k, const std::vector<double>& w, double z) {
        return irs::run_surface(k, w, z).p;
    }, py::arg("k_grid"), py::arg("w_grid"), py::arg("z") = 2.0);
    m.def("run_criterion", [](int id, std::uint64_t trials, std::uint64_t seed) {
        irs::acceptance::Options o;
        o.trials = trials;
        o.seed = seed;
        irs::acceptance::CriterionResult r;
        {
            py::gil_scoped_release nogil;
            r = irs::acceptance::run_criterion(id, o);
        }
        return py::make_tuple(r.passed, irs::acceptance::format_result(r));
    }, py::arg("id"), py::arg("trials") = 100000, py::arg("seed") = 7);
}
