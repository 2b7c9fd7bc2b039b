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


#include "irs/sweep.hpp"
#include "irs/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#ifndef IRS_VERSION
#define IRS_VERSION "0.0.0"
#endif

namespace irs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr const char* kCurveColumns = "xi,z,p_closed_form,p_mc,std_err,k_a,w_a";

std::string fmt(double x)
{
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& tok, std::size_t line)
{
    if (tok == "nan") return kNaN;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size()) {
        throw DomainError("curve CSV line " + std::to_string(line) + ": bad number '" + tok + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

void provenance_lines(std::ostringstream& os, const Provenance& p)
{
    os << "# scenario_hash=" << hex_hash(p.scenario_hash) << '\n';
    os << "# seed=" << p.seed << '\n';
    os << "# trials=" << p.trials << '\n';
    os << "# tool_version=" << p.tool_version << '\n';
}

void row_fields(std::ostringstream& os, const CurveRow& r)
{
    os << fmt(r.xi) << ',' << fmt(r.z) << ',' << fmt(r.p_closed_form) << ',' << fmt(r.p_mc) << ','
       << fmt(r.std_err) << ',' << fmt(r.k_a) << ',' << fmt(r.w_a);
}

OutageCurve curve_for(const Scenario& s, const PhaseShiftDesign& d, const CorrelationMatrix& r_sr,
                      const CorrelationMatrix& r_rd, const std::vector<double>& grid, std::uint64_t trials,
                      std::uint64_t seed, const mc::McOptions& options)
{
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw DomainError("run_curve: xi grid must be strictly increasing");
    }
    const double beta_sd = s.beta_sd();
    const double rho = s.rho_watts();
    const double sigma2 = s.sigma2_watts();

    std::vector<double> z(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) z[i] = snr_threshold(rho, sigma2, grid[i]);

    const std::optional<GammaParams> gp = closed_form_params(beta_sd, d, r_sr, r_rd);
    std::vector<mc::McEstimate> est;
    if (trials > 0) est = mc::estimate_outage_curve(beta_sd, r_sr, r_rd, d, z, trials, seed, options);

    OutageCurve c;
    c.provenance = {s.hash(), seed, trials, tool_version()};
    c.rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CurveRow r;
        r.xi = grid[i];
        r.z = z[i];
        r.p_closed_form = gp ? outage_probability(*gp, z[i]) : kNaN;
        r.k_a = gp ? gp->k_a : kNaN;
        r.w_a = gp ? gp->w_a : kNaN;
        r.p_mc = trials > 0 ? est[i].p_hat : kNaN;
        r.std_err = trials > 0 ? est[i].std_err : kNaN;
        c.rows.push_back(r);
    }
    return c;
}

} // namespace

std::string tool_version() { return IRS_VERSION; }

void OutageCurve::validate() const
{
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && !(rows[i].xi > rows[i - 1].xi)) {
            throw InternalConsistencyError("OutageCurve: xi not strictly increasing");
        }
        for (double p : {rows[i].p_closed_form, rows[i].p_mc}) {
            if (!std::isnan(p) && !(p >= 0.0 && p <= 1.0)) {
                throw InternalConsistencyError("OutageCurve: probability outside [0, 1]");
            }
        }
    }
}

std::optional<GammaParams> closed_form_params(double beta_sd, const PhaseShiftDesign& d,
                                              const CorrelationMatrix& r_sr, const CorrelationMatrix& r_rd)
{
    if (std::holds_alternative<design::Equal>(d)) return gamma_params_equal_phase(beta_sd, r_sr, r_rd);
    if (std::holds_alternative<design::UniformRandom>(d)) return gamma_params_uniform_random(beta_sd, r_sr, r_rd);
    if (std::holds_alternative<design::Fixed>(d)) {
        return gamma_params_general(beta_sd, r_sr, r_rd, materialize(d, r_sr.size()));
    }
    return std::nullopt;
}

std::optional<GammaParams> closed_form_params(const Scenario& s)
{
    return closed_form_params(s.beta_sd(), s.phase_design(), s.r_sr(), s.r_rd());
}

OutageCurve run_curve(const Scenario& s, std::uint64_t trials, std::uint64_t seed, const mc::McOptions& options)
{
    return run_curve(s, s.xi_grid(), trials, seed, options);
}

OutageCurve run_curve(const Scenario& s, const std::vector<double>& xi_grid, std::uint64_t trials,
                      std::uint64_t seed, const mc::McOptions& options)
{
    s.validate();
    OutageCurve c = curve_for(s, s.phase_design(), s.r_sr(), s.r_rd(), xi_grid, trials, seed, options);
    c.validate();
    return c;
}

std::string format_curve_csv(const OutageCurve& c)
{
    std::ostringstream os;
    provenance_lines(os, c.provenance);
    os << kCurveColumns << '\n';
    for (const auto& r : c.rows) {
        row_fields(os, r);
        os << '\n';
    }
    return os.str();
}

OutageCurve parse_curve_csv(const std::string& text)
{
    OutageCurve c;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos || line.size() < 3) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string val = line.substr(eq + 1);
            if (key == "scenario_hash") c.provenance.scenario_hash = std::stoull(val, nullptr, 16);
            else if (key == "seed") c.provenance.seed = std::stoull(val);
            else if (key == "trials") c.provenance.trials = std::stoull(val);
            else if (key == "tool_version") c.provenance.tool_version = val;
            continue;
        }
        if (!header_seen) {
            if (line != kCurveColumns) throw DomainError("curve CSV: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 7) throw DomainError("curve CSV line " + std::to_string(lineno) + ": expected 7 fields");
        CurveRow r;
        r.xi = parse_double(f[0], lineno);
        r.z = parse_double(f[1], lineno);
        r.p_closed_form = parse_double(f[2], lineno);
        r.p_mc = parse_double(f[3], lineno);
        r.std_err = parse_double(f[4], lineno);
        r.k_a = parse_double(f[5], lineno);
        r.w_a = parse_double(f[6], lineno);
        c.rows.push_back(r);
    }
    if (!header_seen) throw DomainError("curve CSV: missing column header");
    return c;
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<double> default_surface_axis()
{
    std::vector<double> v;
    for (int i = 1; i <= 16; ++i) v.push_back(0.25 * i);
    return v;
}

OutageSurface run_surface(const std::vector<double>& k_grid, const std::vector<double>& w_grid, double z)
{
    if (!(z >= 0.0)) throw DomainError("run_surface: z must be >= 0");
    for (double k : k_grid) {
        if (!(k > 0.0)) throw DomainError("run_surface: k_a grid must be positive");
    }
    for (double w : w_grid) {
        if (!(w > 0.0)) throw DomainError("run_surface: w_a grid must be positive");
    }
    OutageSurface s;
    s.z = z;
    s.k_grid = k_grid;
    s.w_grid = w_grid;
    s.p.assign(k_grid.size(), std::vector<double>(w_grid.size()));
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        for (std::size_t j = 0; j < w_grid.size(); ++j) s.p[i][j] = outage_probability({k_grid[i], w_grid[j]}, z);
    }
    return s;
}

std::string format_surface_csv(const OutageSurface& s)
{
    std::ostringstream os;
    os << "# z=" << fmt(s.z) << '\n';
    os << "# tool_version=" << tool_version() << '\n';
    os << "k_a\\w_a";
    for (double w : s.w_grid) os << ',' << fmt(w);
    os << '\n';
    for (std::size_t i = 0; i < s.k_grid.size(); ++i) {
        os << fmt(s.k_grid[i]);
        for (double p : s.p[i]) os << ',' << fmt(p);
        os << '\n';
    }
    return os.str();
}

std::vector<CompareCurve> run_compare_correlations(const Scenario& base,
                                                   const std::vector<PhaseShiftDesign>& designs,
                                                   const std::vector<CorrelationModel>& models,
                                                   std::uint64_t trials, std::uint64_t seed,
                                                   const mc::McOptions& options)
{
    return run_compare_correlations(base, designs, models, base.xi_grid(), trials, seed, options);
}

std::vector<CompareCurve> run_compare_correlations(const Scenario& base,
                                                   const std::vector<PhaseShiftDesign>& designs,
                                                   const std::vector<CorrelationModel>& models,
                                                   const std::vector<double>& xi_grid, std::uint64_t trials,
                                                   std::uint64_t seed, const mc::McOptions& options)
{
    base.validate();
    std::vector<CompareCurve> out;
    for (CorrelationModel m : models) {
        Scenario s = base;
        s.model = m;
        const CorrelationMatrix r_sr = s.r_sr();
        const CorrelationMatrix r_rd = s.r_rd();
        for (const auto& d : designs) {
            CompareCurve cc;
            cc.model = m;
            cc.design = design_name(d);
            cc.curve = curve_for(s, d, r_sr, r_rd, xi_grid, trials, seed, options);
            cc.curve.provenance.scenario_hash = base.hash();
            out.push_back(std::move(cc));
        }
    }
    return out;
}

std::string format_compare_csv(const std::vector<CompareCurve>& curves)
{
    std::ostringstream os;
    if (!curves.empty()) provenance_lines(os, curves.front().curve.provenance);
    os << "model,design," << kCurveColumns << '\n';
    for (const auto& cc : curves) {
        for (const auto& r : cc.curve.rows) {
            os << model_name(cc.model) << ',' << cc.design << ',';
            row_fields(os, r);
            os << '\n';
        }
    }
    return os.str();
}

} // namespace irs
