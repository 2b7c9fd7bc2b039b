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
#include "irs/montecarlo.hpp"
#include "irs/phaseshift.hpp"
#include "irs/scenario.hpp"
#include "irs/special.hpp"
#include "irs/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace irs::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
};

double rel_err(double got, double want)
{
    if (got == want) return 0.0;
    return std::abs(got - want) / std::max(std::abs(want), std::numeric_limits<double>::min());
}

std::string num(double x, int prec = 3)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

CorrelationMatrix random_psd(std::size_t n, std::mt19937_64& gen)
{
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    // rank between 1 and n, so semidefinite inputs are covered
    const auto rank = static_cast<Eigen::Index>(1 + gen() % n);
    CMatrix b(static_cast<Eigen::Index>(n), rank);
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = cd(g(gen), g(gen));
    }
    const double scale = std::pow(10.0, 4.0 * u(gen) - 2.0);
    CMatrix a = scale * b * b.adjoint() / static_cast<double>(rank);
    a = 0.5 * (a + a.adjoint()).eval();
    return CorrelationMatrix(a);
}

struct MatrixPair {
    double beta_sd;
    CorrelationMatrix r_sr;
    CorrelationMatrix r_rd;
};

// 50 pairs cycling through N = 1, 2, 4, 16.
std::vector<MatrixPair> matrix_set(std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t sizes[] = {1, 2, 4, 16};
    std::vector<MatrixPair> out;
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = sizes[i % 4];
        const double beta_sd = (i % 5 == 0) ? 0.0 : 2.0 * u(gen);
        CorrelationMatrix a = random_psd(n, gen);
        CorrelationMatrix b = random_psd(n, gen);
        out.push_back({beta_sd, std::move(a), std::move(b)});
    }
    return out;
}

CVector random_phases(std::size_t n, std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> u(-kPi, kPi);
    std::vector<double> th(n);
    for (auto& t : th) t = u(gen);
    return materialize(design::Fixed{th}, n);
}

// Default grid plus log-spaced points down to 1e-6, where blocked-link
// outage curves actually leave 0 and 1.
std::vector<double> refined_grid()
{
    Scenario s;
    std::vector<double> g = s.xi_grid();
    const int m = 400;
    for (int i = 0; i < m; ++i) g.push_back(std::pow(10.0, -6.0 + (std::log10(8.0) + 6.0) * i / (m - 1)));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), g.end());
    return g;
}

void c1_moment_identities(const Options& o, Outcome& out)
{
    std::mt19937_64 gen(o.seed + 1);
    double worst_mean = 0.0, worst_var = 0.0;
    int cases = 0;
    for (const auto& p : matrix_set(o.seed)) {
        for (int j = 0; j < 10; ++j) {
            const CVector t = random_phases(p.r_sr.size(), gen);
            const XMoments m = moments_general(p.beta_sd, p.r_sr, p.r_rd, t);
            const GammaParams gp = gamma_params_general(p.beta_sd, p.r_sr, p.r_rd, t);
            worst_mean = std::max(worst_mean, rel_err(gp.mean(), m.mean));
            worst_var = std::max(worst_var, rel_err(gp.variance(), m.variance));
            ++cases;
        }
    }
    out.ok = worst_mean <= 1e-12 && worst_var <= 1e-12;
    out.detail << cases << " cases; max rel err mean " << num(worst_mean) << ", variance " << num(worst_var)
               << " (tol 1e-12)";
}

void c2_reductions(const Options& o, Outcome& out)
{
    std::mt19937_64 gen(o.seed + 2);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    double worst_eq = 0.0, worst_ix = 0.0;
    for (const auto& p : matrix_set(o.seed)) {
        const GammaParams ref = gamma_params_equal_phase(p.beta_sd, p.r_sr, p.r_rd);
        for (int j = 0; j < 4; ++j) {
            const double theta = j == 0 ? 0.0 : u(gen);
            const CVector t = materialize(design::Equal{theta}, p.r_sr.size());
            const GammaParams g = gamma_params_general(p.beta_sd, p.r_sr, p.r_rd, t);
            worst_eq = std::max({worst_eq, rel_err(g.k_a, ref.k_a), rel_err(g.w_a, ref.w_a)});
        }
        const RandomPhaseMoments a = random_phase_moments(p.r_sr, p.r_rd);
        const RandomPhaseMoments b = random_phase_moments_index_sum(p.r_sr, p.r_rd);
        worst_ix = std::max({worst_ix, rel_err(a.nu, b.nu), rel_err(a.eta, b.eta), rel_err(a.delta, b.delta)});
    }
    out.ok = worst_eq <= 1e-12 && worst_ix <= 1e-12;
    out.detail << "equal-phase vs general max rel " << num(worst_eq) << "; matrix form vs index sums max rel "
               << num(worst_ix) << " (tol 1e-12)";
}

void c3_phase_expectation(const Options& o, Outcome& out)
{
    Scenario s = preset("fig2a");
    s.n_h = 4;
    s.n_v = 4;
    const CorrelationMatrix r_sr = s.r_sr();
    const CorrelationMatrix r_rd = s.r_rd();
    const RandomPhaseMoments ref = random_phase_moments(r_sr, r_rd);

    const std::uint64_t draws = 100000;
    const design::UniformRandom d{o.seed};
    double s1 = 0, q1 = 0, s2 = 0, q2 = 0, s3 = 0, q3 = 0;
    for (std::uint64_t i = 0; i < draws; ++i) {
        const CMatrix tt = theta_tilde(r_rd, r_sr, materialize(d, s.size(), i));
        const double tr = tt.trace().real();
        const double x2 = tr * tr;
        const double x3 = trace_of_product(tt, tt).real();
        s1 += tr, q1 += tr * tr;
        s2 += x2, q2 += x2 * x2;
        s3 += x3, q3 += x3 * x3;
    }
    const double n = static_cast<double>(draws);
    auto z_score = [n](double sum, double sq, double want) {
        const double mean = sum / n;
        const double var = (sq - n * mean * mean) / (n - 1.0);
        return std::abs(mean - want) / std::sqrt(var / n);
    };
    const double z1 = z_score(s1, q1, ref.nu);
    const double z2 = z_score(s2, q2, ref.eta);
    const double z3 = z_score(s3, q3, ref.delta);
    out.ok = z1 <= 3.0 && z2 <= 3.0 && z3 <= 3.0;
    out.detail << draws << " draws; |dev|/SE nu " << num(z1) << ", eta " << num(z2) << ", delta " << num(z3)
               << " (limit 3)";
}

void c4_closed_form_vs_mc(const Options& o, Outcome& out)
{
    const mc::McOptions mo{o.threads};
    int points = 0, bad = 0;
    double worst = 0.0;
    std::string worst_case;
    for (const char* name : {"fig2a", "fig2b"}) {
        for (const char* suffix : {"-n64", ""}) {
            for (const char* dn : {"equal", "uniform_random"}) {
                Scenario s = preset(std::string(name) + suffix);
                s.design = dn;
                s.seed = o.seed + 100;
                const OutageCurve c = run_curve(s, o.trials, o.seed, mo);
                for (const auto& r : c.rows) {
                    const double dev = std::abs(r.p_closed_form - r.p_mc);
                    const double tol = std::max(0.02, 4.0 * r.std_err);
                    ++points;
                    if (!(dev <= tol)) ++bad;
                    if (dev > worst) {
                        worst = dev;
                        worst_case = std::string(name) + " N=" + std::to_string(s.size()) + " " + dn +
                                     " xi=" + num(r.xi);
                    }
                }
            }
        }
    }
    out.ok = bad == 0;
    out.detail << points << " grid points, " << o.trials << " trials each; " << bad
               << " outside max(0.02, 4 SE); worst |dev| " << num(worst) << " at " << worst_case;
}

void c5_orderings(const Options& o, Outcome& out)
{
    const Scenario s = preset("fig2b");
    const CorrelationMatrix r_sr = s.r_sr();
    const CorrelationMatrix r_rd = s.r_rd();
    const mc::McOptions mo{o.threads};
    const std::vector<double> grid = refined_grid();
    std::vector<double> z;
    for (double xi : grid) z.push_back(snr_threshold(s.rho_watts(), s.sigma2_watts(), xi));

    const PhaseShiftDesign designs[] = {design::UniformRandom{o.seed + 100}, design::Equal{0.0},
                                        design::OptimalCsi{}};
    std::vector<std::vector<mc::McEstimate>> est;
    for (int i = 0; i < 3; ++i) {
        est.push_back(mc::estimate_outage_curve(0.0, r_sr, r_rd, designs[i], z, o.trials,
                                                o.seed + static_cast<std::uint64_t>(i), mo));
    }
    auto mid = [](const mc::McEstimate& e) { return e.p_hat > 0.05 && e.p_hat < 0.95; };

    int joint = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) joint += mid(est[0][k]) && mid(est[1][k]) && mid(est[2][k]);
    out.detail << "points with all three P in (0.05, 0.95): " << joint << "; pairwise:";

    const char* names[] = {"uniform_random", "equal", "optimal_csi"};
    for (int a = 0; a < 2; ++a) {
        const int b = a + 1;
        int window = 0, bad = 0;
        double min_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const auto& ea = est[a][k];
            const auto& eb = est[b][k];
            if (!mid(ea) || !mid(eb)) continue;
            ++window;
            const double se = std::sqrt(ea.std_err * ea.std_err + eb.std_err * eb.std_err);
            const double ratio = (ea.p_hat - eb.p_hat) / se;
            min_ratio = std::min(min_ratio, ratio);
            if (!(ratio > 4.0)) ++bad;
        }
        if (window == 0 || bad > 0) out.ok = false;
        out.detail << " P(" << names[a] << ") > P(" << names[b] << ") on " << window << " points, " << bad
                   << " with gap <= 4 SE, min gap/SE " << num(min_ratio) << ";";
    }
}

double max_pairwise_gap(const std::vector<CompareCurve>& curves)
{
    double gap = 0.0;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
            for (std::size_t k = 0; k < curves[i].curve.rows.size(); ++k) {
                gap = std::max(gap, std::abs(curves[i].curve.rows[k].p_closed_form -
                                             curves[j].curve.rows[k].p_closed_form));
            }
        }
    }
    return gap;
}

void c6_correlation_models(const Options&, Outcome& out)
{
    const Scenario blocked = preset("fig2c");
    Scenario present = blocked;
    present.beta_sd_db = -90.0;
    const std::vector<PhaseShiftDesign> eq{design::Equal{kPi / 4.0}};
    const std::vector<CorrelationModel> all{CorrelationModel::Sinc, CorrelationModel::Exponential,
                                            CorrelationModel::Uncorrelated};

    for (const bool refined : {false, true}) {
        const std::vector<double> grid = refined ? refined_grid() : blocked.xi_grid();
        const auto b = run_compare_correlations(blocked, eq, all, grid, 0, 0);
        const auto p = run_compare_correlations(present, eq, all, grid, 0, 0);

        int window = 0, violations = 0;
        double worst = 0.0, worst_xi = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double ps = b[0].curve.rows[k].p_closed_form;
            const double pe = b[1].curve.rows[k].p_closed_form;
            if (!(ps > 0.01 && ps < 0.99 && pe > 0.01 && pe < 0.99)) continue;
            ++window;
            if (ps > pe) {
                ++violations;
                if (ps - pe > worst) worst = ps - pe, worst_xi = grid[k];
            }
        }
        const double gap_b = max_pairwise_gap(b);
        const double gap_p = max_pairwise_gap(p);
        const bool part2 = 5.0 * gap_p <= gap_b;
        out.detail << (refined ? " refined grid (" : "default grid (") << grid.size() << " pts): sinc <= exp on "
                   << window - violations << "/" << window << " window points";
        if (violations > 0) out.detail << ", worst sinc - exp " << num(worst) << " at xi=" << num(worst_xi);
        out.detail << "; max model gap blocked " << num(gap_b) << " vs direct " << num(gap_p) << ";";
        // The default grid has no point inside the window, so only the refined grid decides part 1.
        if (refined && (window == 0 || violations > 0)) out.ok = false;
        if (!part2) out.ok = false;
    }
}

void c7_sensitivity(const Options&, Outcome& out)
{
    auto geom = [](double lo, double hi, int i, int n) { return lo * std::pow(hi / lo, double(i) / (n - 1)); };
    double worst = 0.0;
    int nonneg = 0, points = 0;
    for (int i = 0; i < 10; ++i) {
        const double k = geom(0.2, 20.0, i, 10);
        for (int j = 0; j < 10; ++j) {
            const double w = geom(0.25, 8.0, j, 10);
            for (int l = 0; l < 10; ++l) {
                const double z = geom(0.1, 10.0, l, 10);
                const double h = 1e-6 * w;
                const double d = outage_sensitivity_wa({k, w}, z);
                // differentiate the smaller of P and Q so the difference is not swamped by rounding
                double fd;
                if (outage_probability({k, w}, z) <= 0.5) {
                    fd = (outage_probability({k, w + h}, z) - outage_probability({k, w - h}, z)) / (2.0 * h);
                } else {
                    fd = -(special::regularized_upper_gamma(k, z / (w + h)) -
                           special::regularized_upper_gamma(k, z / (w - h))) / (2.0 * h);
                }
                worst = std::max(worst, rel_err(d, fd));
                if (!(d < 0.0)) ++nonneg;
                ++points;
            }
        }
    }
    out.ok = worst <= 1e-5 && nonneg == 0;
    out.detail << points << " points; max rel err vs central difference " << num(worst) << " (tol 1e-5); "
               << nonneg << " non-negative values";
}

void c8_large_n(const Options& o, Outcome& out)
{
    std::mt19937_64 gen(o.seed + 8);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    double prev_gap = std::numeric_limits<double>::infinity();
    double prev_ratio = std::numeric_limits<double>::infinity();
    bool trend = true, bound = true;
    double min_margin = std::numeric_limits<double>::infinity();
    out.detail << "k_a:";
    std::ostringstream ratios;
    for (std::size_t n : {4, 8, 12, 16, 20}) {
        Scenario s = preset("fig2b");
        s.n_h = n;
        s.n_v = n;
        const CorrelationMatrix r_sr = s.r_sr();
        const CorrelationMatrix r_rd = s.r_rd();
        const GammaParams gp = gamma_params_equal_phase(0.0, r_sr, r_rd);
        const double t = trace_of_product(r_rd.matrix(), r_sr.matrix()).real();
        const double gap = std::abs(1.0 - gp.k_a);
        const double ratio = std::abs(gp.w_a - t) / t;
        if (!(gap < prev_gap) || !(ratio < prev_ratio)) trend = false;
        prev_gap = gap;
        prev_ratio = ratio;
        out.detail << ' ' << num(gp.k_a, 4);
        ratios << ' ' << num(ratio, 4);

        std::vector<design::Fixed> designs(100);
        for (auto& d : designs) {
            d.thetas.resize(s.size());
            for (auto& th : d.thetas) th = u(gen);
        }
        const TraceGainReport rep = trace_gain_bound_check(s.base_correlation(), 1.0, designs, 1e-10);
        if (!rep.all_nonnegative) bound = false;
        for (double m : rep.margins) min_margin = std::min(min_margin, m);
    }
    out.ok = trend && bound;
    out.detail << " (|1 - k_a| " << (trend ? "decreasing" : "NOT decreasing") << "); |w_a - tr|/tr:" << ratios.str()
               << "; trace bound " << (bound ? "holds" : "VIOLATED") << ", min margin " << num(min_margin);
}

void c9_special(const Options&, Outcome& out)
{
    double worst = 0.0;
    int points = 0;
    for (int i = 0; i <= 1000; ++i) {
        const double x = 0.05 * i;
        worst = std::max(worst, rel_err(special::regularized_upper_gamma(1.0, x), std::exp(-x)));
        // integer shapes: Q(n, x) = e^-x sum_{k<n} x^k / k!
        double term = std::exp(-x), sum = 0.0;
        for (int n = 1; n <= 12; ++n) {
            sum += term;
            term *= x / n;
            if (n >= 2) worst = std::max(worst, rel_err(special::regularized_upper_gamma(n, x), sum));
        }
        // half-integer: Q(n + 1/2, x) = erfc(sqrt x) + e^-x sum_{k=1..n} x^(k-1/2) / Gamma(k + 1/2)
        double half = std::erfc(std::sqrt(x));
        worst = std::max(worst, rel_err(special::regularized_upper_gamma(0.5, x), half));
        double t = x > 0.0 ? std::exp(-x) * std::sqrt(x) / std::tgamma(1.5) : 0.0;
        for (int n = 1; n <= 10; ++n) {
            half += t;
            t *= x / (n + 0.5);
            worst = std::max(worst, rel_err(special::regularized_upper_gamma(n + 0.5, x), half));
        }
        points += 1 + 11 + 11;
    }
    out.ok = worst <= 1e-12;
    out.detail << points << " evaluations on x in [0, 50]; max rel err " << num(worst) << " (tol 1e-12)";
}

void c10_surface(const Options&, Outcome& out)
{
    const double p = outage_probability({1.0, 2.0}, 2.0);
    const double err = std::abs(p - (1.0 - std::exp(-1.0)));
    const auto axis = default_surface_axis();
    const OutageSurface s = run_surface(axis, axis, 2.0);
    int bad = 0;
    for (std::size_t i = 0; i < axis.size(); ++i) {
        for (std::size_t j = 0; j < axis.size(); ++j) {
            if (j > 0 && !(s.p[i][j] < s.p[i][j - 1])) ++bad;
            if (i > 0 && !(s.p[i][j] < s.p[i - 1][j])) ++bad;
        }
    }
    out.ok = err <= 1e-12 && bad == 0;
    out.detail << "|P(1,2,2) - (1 - 1/e)| = " << num(err) << "; " << axis.size() << "x" << axis.size()
               << " grid, " << bad << " non-decreasing steps";
}

struct Entry {
    int id;
    const char* name;
    double limit;
    std::function<void(const Options&, Outcome&)> fn;
};

const std::vector<Entry>& registry()
{
    static const std::vector<Entry> r = {
        {1, "moment identities", 10.0, c1_moment_identities},
        {2, "reduction equivalences", 10.0, c2_reductions},
        {3, "phase-expectation oracle", 60.0, c3_phase_expectation},
        {4, "closed form vs Monte Carlo", 300.0, c4_closed_form_vs_mc},
        {5, "blocked-link design ordering", 300.0, c5_orderings},
        {6, "correlation-model ordering", 60.0, c6_correlation_models},
        {7, "w_a sensitivity", 5.0, c7_sensitivity},
        {8, "large-N trend", 30.0, c8_large_n},
        {9, "special functions", 1.0, c9_special},
        {10, "outage surface", 5.0, c10_surface},
    };
    return r;
}

} // namespace

std::vector<int> criterion_ids()
{
    std::vector<int> ids;
    for (const auto& e : registry()) ids.push_back(e.id);
    return ids;
}

CriterionResult run_criterion(int id, const Options& options)
{
    const auto it = std::find_if(registry().begin(), registry().end(), [id](const Entry& e) { return e.id == id; });
    if (it == registry().end()) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
    CriterionResult r;
    r.id = id;
    r.name = it->name;
    r.limit_seconds = it->limit;
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        it->fn(options, out);
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail << " exception: " << e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.checks_passed = out.ok;
    r.passed = out.ok && r.seconds <= r.limit_seconds;
    r.detail = out.detail.str();
    if (out.ok && !r.passed) r.detail += " [runtime limit exceeded]";
    return r;
}

std::vector<CriterionResult> run_all(const Options& options)
{
    std::vector<CriterionResult> out;
    for (int id : criterion_ids()) out.push_back(run_criterion(id, options));
    return out;
}

std::string format_result(const CriterionResult& r)
{
    char head[160];
    std::snprintf(head, sizeof head, "[%s] %d %s (%.2f s / %.0f s): ", r.passed ? "PASS" : "FAIL", r.id,
                  r.name.c_str(), r.seconds, r.limit_seconds);
    return head + r.detail;
}

} // namespace irs::acceptance
