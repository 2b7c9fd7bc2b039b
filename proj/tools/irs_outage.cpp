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


// irs_outage: closed-form outage curves, Fig. 1 style surfaces, correlation
// model comparisons and the acceptance matrix.
//
// exit codes: 0 ok, 1 validation failure, 2 bad input

#include "irs/acceptance.hpp"
#include "irs/errors.hpp"
#include "irs/scenario.hpp"
#include "irs/sweep.hpp"

#include <CLI11/CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kInputError = 2;

struct Common {
    std::string scenario;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 7;
    std::string out = "-";
    unsigned threads = 0;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_scenario)
{
    c.scenario = default_scenario;
    sub->add_option("--scenario", c.scenario, "preset name (" + [] {
        std::string s;
        for (const auto& p : irs::preset_names()) s += (s.empty() ? "" : ", ") + p;
        return s;
    }() + ") or path to a scenario JSON file")->capture_default_str();
    sub->add_option("--trials", c.trials, "Monte-Carlo trials (0 = closed form only)")->capture_default_str();
    sub->add_option("--seed", c.seed, "Monte-Carlo channel seed")->capture_default_str();
    sub->add_option("--out", c.out, "output file, '-' for stdout")->capture_default_str();
    sub->add_option("--threads", c.threads, "worker threads, 0 = all cores")->capture_default_str();
}

void emit(const std::string& path, const std::string& text)
{
    if (path == "-" || path.empty()) {
        std::cout << text;
    } else {
        irs::write_text_file(path, text);
    }
}

std::vector<double> axis(double lo, double hi, double step, const char* what)
{
    if (!(lo > 0.0) || !(hi >= lo) || !(step > 0.0)) {
        throw irs::DomainError(std::string(what) + " grid needs 0 < min <= max and step > 0");
    }
    std::vector<double> v;
    const auto n = static_cast<std::size_t>((hi - lo) / step + 1e-9) + 1;
    for (std::size_t i = 0; i < n; ++i) v.push_back(lo + static_cast<double>(i) * step);
    return v;
}

irs::PhaseShiftDesign design_from_name(const std::string& name, const irs::Scenario& s)
{
    irs::Scenario t = s;
    t.design = name;
    if (name != "fixed" && t.theta.size() != 1) t.theta = {0.0};
    t.validate();
    return t.phase_design();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage probability of IRS-assisted links under correlated Rayleigh fading"};
    app.set_version_flag("--version", irs::tool_version());
    app.require_subcommand(1);

    Common curve_opts, surface_opts, compare_opts, validate_opts;

    auto* curve = app.add_subcommand("curve", "outage probability vs target rate, closed form and Monte Carlo");
    add_common(curve, curve_opts, "fig2a");

    auto* surface = app.add_subcommand("surface", "closed-form outage over a (k_a, w_a) grid at fixed z");
    add_common(surface, surface_opts, "");
    double z = 2.0, k_min = 0.25, k_max = 4.0, k_step = 0.25, w_min = 0.25, w_max = 4.0, w_step = 0.25;
    double xi = -1.0;
    surface->add_option("--z", z, "SNR threshold (linear)")->capture_default_str();
    surface->add_option("--xi", xi, "target rate; with --scenario, z comes from its link budget");
    surface->add_option("--k-min", k_min)->capture_default_str();
    surface->add_option("--k-max", k_max)->capture_default_str();
    surface->add_option("--k-step", k_step)->capture_default_str();
    surface->add_option("--w-min", w_min)->capture_default_str();
    surface->add_option("--w-max", w_max)->capture_default_str();
    surface->add_option("--w-step", w_step)->capture_default_str();

    auto* compare = app.add_subcommand("compare", "one curve per correlation model and design");
    add_common(compare, compare_opts, "fig2c");
    std::vector<std::string> models{"sinc", "exponential", "uncorrelated"};
    std::vector<std::string> designs;
    compare->add_option("--models", models, "correlation models")->delimiter(',')->capture_default_str();
    compare->add_option("--designs", designs, "phase designs (default: the scenario's)")->delimiter(',');

    auto* validate = app.add_subcommand("validate", "run acceptance criteria 1-10 and print pass/fail");
    add_common(validate, validate_opts, "");
    std::vector<int> criteria;
    validate->add_option("--criteria", criteria, "subset of criterion ids")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*curve) {
            const irs::Scenario s = irs::resolve_scenario(curve_opts.scenario);
            const irs::OutageCurve c =
                irs::run_curve(s, curve_opts.trials, curve_opts.seed, {curve_opts.threads});
            emit(curve_opts.out, irs::format_curve_csv(c));
            return kOk;
        }
        if (*surface) {
            if (xi >= 0.0) {
                if (surface_opts.scenario.empty()) throw irs::DomainError("--xi needs --scenario");
                const irs::Scenario s = irs::resolve_scenario(surface_opts.scenario);
                z = irs::snr_threshold(s.rho_watts(), s.sigma2_watts(), xi);
            }
            const auto surf = irs::run_surface(axis(k_min, k_max, k_step, "k_a"),
                                               axis(w_min, w_max, w_step, "w_a"), z);
            emit(surface_opts.out, irs::format_surface_csv(surf));
            return kOk;
        }
        if (*compare) {
            const irs::Scenario s = irs::resolve_scenario(compare_opts.scenario);
            std::vector<irs::CorrelationModel> ms;
            for (const auto& m : models) ms.push_back(irs::parse_model(m));
            std::vector<irs::PhaseShiftDesign> ds;
            if (designs.empty()) designs.push_back(s.design);
            for (const auto& d : designs) ds.push_back(design_from_name(d, s));
            const auto curves = irs::run_compare_correlations(s, ds, ms, compare_opts.trials, compare_opts.seed,
                                                              {compare_opts.threads});
            emit(compare_opts.out, irs::format_compare_csv(curves));
            return kOk;
        }
        if (*validate) {
            irs::acceptance::Options o;
            o.trials = validate_opts.trials;
            o.seed = validate_opts.seed;
            o.threads = validate_opts.threads;
            if (criteria.empty()) criteria = irs::acceptance::criterion_ids();
            std::ostringstream report;
            bool all = true;
            for (int id : criteria) {
                const auto r = irs::acceptance::run_criterion(id, o);
                const std::string line = irs::acceptance::format_result(r);
                std::cout << line << '\n';
                report << line << '\n';
                all = all && r.passed;
            }
            if (validate_opts.out != "-") irs::write_text_file(validate_opts.out, report.str());
            return all ? kOk : kValidationFailure;
        }
    } catch (const irs::ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << '\n';
        return kInputError;
    } catch (const irs::DomainError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const irs::DegenerateScenarioError& e) {
        std::cerr << "degenerate scenario: " << e.what() << '\n';
        return kInputError;
    } catch (const irs::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::out_of_range& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationFailure;
    }
    return kInputError;
}
