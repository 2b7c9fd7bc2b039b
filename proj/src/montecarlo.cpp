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

#include "irs/montecarlo.hpp"
#include "irs/errors.hpp"
#include "irs/philox.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace irs::mc {

namespace {

bool is_real(const CMatrix& m)
{
    return (m.imag().array() == 0.0).all();
}

// Column `col` of `g` receives the CN(0,1) draws of one trial's stream.
void fill_gaussians(Eigen::Ref<CMatrix> g, Eigen::Index col, std::uint64_t seed, std::uint64_t trial,
                    rng::Stream stream)
{
    rng::CounterStream s(seed, trial, stream);
    for (Eigen::Index n = 0; n < g.rows(); ++n) g(n, col) = s.complex_normal();
}

// L g for a block of columns; real factors take the cheaper real product.
CMatrix apply_factor(const CMatrix& l, const Eigen::MatrixXd* l_real, const CMatrix& g)
{
    if (l_real != nullptr) {
        CMatrix out(g.rows(), g.cols());
        out.real() = (*l_real) * g.real();
        out.imag() = (*l_real) * g.imag();
        return out;
    }
    return l * g;
}

cd direct_link(double beta_sd, std::uint64_t seed, std::uint64_t trial)
{
    if (beta_sd == 0.0) return {0.0, 0.0};
    rng::CounterStream s(seed, trial, rng::Stream::DirectLink);
    return std::sqrt(beta_sd) * s.complex_normal();
}

template <class Sr, class Rd>
double cascaded_gain(cd h_sd, const Sr& h_sr, const Rd& h_rd, const CVector& theta)
{
    cd acc = h_sd;
    for (Eigen::Index n = 0; n < h_sr.size(); ++n) acc += std::conj(h_sr(n)) * theta(n) * h_rd(n);
    return std::norm(acc);
}

template <class Sr, class Rd>
CVector co_phase(cd h_sd, const Sr& h_sr, const Rd& h_rd)
{
    const double ref = std::abs(h_sd) > 0.0 ? std::arg(h_sd) : 0.0;
    CVector t(h_sr.size());
    for (Eigen::Index n = 0; n < h_sr.size(); ++n) {
        t(n) = std::polar(1.0, ref - std::arg(std::conj(h_sr(n)) * h_rd(n)));
    }
    return t;
}

class GainSampler {
public:
    GainSampler(double beta_sd, const CorrelationMatrix& r_sr, const CorrelationMatrix& r_rd,
                const PhaseShiftDesign& design, std::uint64_t seed)
        : beta_sd_(beta_sd), n_(r_sr.size()), seed_(seed), design_(design),
          l_sr_(matrix_sqrt(r_sr)), l_rd_(matrix_sqrt(r_rd))
    {
        if (!(beta_sd >= 0.0)) throw DomainError("beta_sd must be >= 0");
        if (r_sr.size() != r_rd.size()) throw DomainError("sample_gains: covariance dimension mismatch");
        if (is_real(l_sr_)) {
            l_sr_real_ = l_sr_.real();
            sr_real_ = true;
        }
        if (is_real(l_rd_)) {
            l_rd_real_ = l_rd_.real();
            rd_real_ = true;
        }
        random_ = std::holds_alternative<design::UniformRandom>(design_);
        optimal_ = std::holds_alternative<design::OptimalCsi>(design_);
        if (!random_ && !optimal_) fixed_theta_ = materialize(design_, n_);
    }

    void run(std::uint64_t first, std::size_t count, double* out) const
    {
        const auto n = static_cast<Eigen::Index>(n_);
        const auto c = static_cast<Eigen::Index>(count);
        CMatrix g_sr(n, c), g_rd(n, c);
        for (Eigen::Index j = 0; j < c; ++j) {
            const std::uint64_t trial = first + static_cast<std::uint64_t>(j);
            fill_gaussians(g_sr, j, seed_, trial, rng::Stream::SourceToIrs);
            fill_gaussians(g_rd, j, seed_, trial, rng::Stream::IrsToDestination);
        }
        const CMatrix h_sr = apply_factor(l_sr_, sr_real_ ? &l_sr_real_ : nullptr, g_sr);
        const CMatrix h_rd = apply_factor(l_rd_, rd_real_ ? &l_rd_real_ : nullptr, g_rd);

        for (Eigen::Index j = 0; j < c; ++j) {
            const std::uint64_t trial = first + static_cast<std::uint64_t>(j);
            const cd h_sd = direct_link(beta_sd_, seed_, trial);
            const auto sr = h_sr.col(j);
            const auto rd = h_rd.col(j);
            if (optimal_) {
                out[j] = cascaded_gain(h_sd, sr, rd, co_phase(h_sd, sr, rd));
            } else if (random_) {
                out[j] = cascaded_gain(h_sd, sr, rd, materialize(design_, n_, trial));
            } else {
                out[j] = cascaded_gain(h_sd, sr, rd, fixed_theta_);
            }
        }
    }

    const CMatrix& l_sr() const { return l_sr_; }

private:
    double beta_sd_;
    std::size_t n_;
    std::uint64_t seed_;
    PhaseShiftDesign design_;
    CMatrix l_sr_, l_rd_;
    Eigen::MatrixXd l_sr_real_, l_rd_real_;
    bool sr_real_ = false;
    bool rd_real_ = false;
    bool random_ = false;
    bool optimal_ = false;
    CVector fixed_theta_;
};

unsigned resolve_threads(const McOptions& options)
{
    if (options.threads > 0) return options.threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace

McEstimate McEstimate::from_counts(std::uint64_t trials, std::uint64_t failures)
{
    if (trials == 0) throw DomainError("McEstimate: trials must be >= 1");
    if (failures > trials) throw DomainError("McEstimate: failures exceed trials");
    McEstimate e;
    e.trials = trials;
    e.failures = failures;
    e.p_hat = static_cast<double>(failures) / static_cast<double>(trials);
    e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
    return e;
}

ChannelRealization sample_channels(double beta_sd, const CMatrix& l_sr, const CMatrix& l_rd,
                                   std::uint64_t seed, std::uint64_t trial_index)
{
    if (!(beta_sd >= 0.0)) throw DomainError("sample_channels: beta_sd must be >= 0");
    if (l_sr.rows() != l_sr.cols() || l_rd.rows() != l_rd.cols() || l_sr.rows() != l_rd.rows()) {
        throw DomainError("sample_channels: factor dimension mismatch");
    }
    const Eigen::Index n = l_sr.rows();
    CMatrix g_sr(n, 1), g_rd(n, 1);
    fill_gaussians(g_sr, 0, seed, trial_index, rng::Stream::SourceToIrs);
    fill_gaussians(g_rd, 0, seed, trial_index, rng::Stream::IrsToDestination);

    const Eigen::MatrixXd sr_re = l_sr.real();
    const Eigen::MatrixXd rd_re = l_rd.real();
    ChannelRealization ch;
    ch.h_sd = direct_link(beta_sd, seed, trial_index);
    ch.h_sr = apply_factor(l_sr, is_real(l_sr) ? &sr_re : nullptr, g_sr).col(0);
    ch.h_rd = apply_factor(l_rd, is_real(l_rd) ? &rd_re : nullptr, g_rd).col(0);
    return ch;
}

double effective_gain(const ChannelRealization& ch, const CVector& diag_theta)
{
    if (ch.h_sr.size() != ch.h_rd.size() || diag_theta.size() != ch.h_sr.size()) {
        throw DomainError("effective_gain: dimension mismatch");
    }
    return cascaded_gain(ch.h_sd, ch.h_sr, ch.h_rd, diag_theta);
}

CVector optimal_csi_phases(const ChannelRealization& ch)
{
    if (ch.h_sr.size() != ch.h_rd.size()) throw DomainError("optimal_csi_phases: dimension mismatch");
    return co_phase(ch.h_sd, ch.h_sr, ch.h_rd);
}

std::vector<double> sample_gains(double beta_sd, const CorrelationMatrix& r_sr, const CorrelationMatrix& r_rd,
                                 const PhaseShiftDesign& design, std::uint64_t trials, std::uint64_t seed,
                                 const McOptions& options)
{
    const GainSampler sampler(beta_sd, r_sr, r_rd, design, seed);
    std::vector<double> gains(trials);
    const std::uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(options), chunks));

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (std::uint64_t c = next++; c < chunks; c = next++) {
                const std::uint64_t first = c * kChunkTrials;
                const auto count = static_cast<std::size_t>(std::min<std::uint64_t>(kChunkTrials, trials - first));
                sampler.run(first, count, gains.data() + first);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = chunks;
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return gains;
}

std::vector<McEstimate> outage_from_gains(const std::vector<double>& gains, const std::vector<double>& thresholds)
{
    std::vector<double> sorted = gains;
    std::sort(sorted.begin(), sorted.end());
    std::vector<McEstimate> out;
    out.reserve(thresholds.size());
    for (double z : thresholds) {
        // lower_bound counts X < z exactly.
        const auto failures = static_cast<std::uint64_t>(
            std::lower_bound(sorted.begin(), sorted.end(), z) - sorted.begin());
        out.push_back(McEstimate::from_counts(sorted.size(), failures));
    }
    return out;
}

std::vector<McEstimate> estimate_outage_curve(double beta_sd, const CorrelationMatrix& r_sr,
                                              const CorrelationMatrix& r_rd, const PhaseShiftDesign& design,
                                              const std::vector<double>& thresholds, std::uint64_t trials,
                                              std::uint64_t seed, const McOptions& options)
{
    if (trials < 1) throw DomainError("estimate_outage: trials must be >= 1");
    return outage_from_gains(sample_gains(beta_sd, r_sr, r_rd, design, trials, seed, options), thresholds);
}

McEstimate estimate_outage(const SystemParameters& params, const CorrelationMatrix& r_sr,
                           const CorrelationMatrix& r_rd, const PhaseShiftDesign& design,
                           std::uint64_t trials, std::uint64_t seed, const McOptions& options)
{
    const double z = snr_threshold(params);
    return estimate_outage_curve(params.beta_sd, r_sr, r_rd, design, {z}, trials, seed, options).front();
}

McMoments moments_from_gains(const std::vector<double>& gains)
{
    if (gains.size() < 2) throw DomainError("sample_moments: need at least 2 trials");
    const double n = static_cast<double>(gains.size());
    double sum = 0.0;
    for (double x : gains) sum += x;
    const double mean = sum / n;

    double c2 = 0.0, c4 = 0.0, r2 = 0.0, r4 = 0.0;
    for (double x : gains) {
        const double d = x - mean;
        const double d2 = d * d;
        c2 += d2;
        c4 += d2 * d2;
        const double x2 = x * x;
        r2 += x2;
        r4 += x2 * x2;
    }
    McMoments m;
    m.trials = gains.size();
    m.mean = mean;
    m.variance = c2 / (n - 1.0);
    m.second_moment = r2 / n;
    const double m2 = c2 / n;
    const double m4 = c4 / n;
    m.se_mean = std::sqrt(m.variance / n);
    m.se_variance = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
    m.se_second_moment = std::sqrt(std::max(r4 / n - m.second_moment * m.second_moment, 0.0) / n);
    return m;
}

McMoments sample_moments(const SystemParameters& params, const CorrelationMatrix& r_sr,
                         const CorrelationMatrix& r_rd, const PhaseShiftDesign& design, std::uint64_t trials,
                         std::uint64_t seed, const McOptions& options)
{
    if (trials < 2) throw DomainError("sample_moments: trials must be >= 2");
    return moments_from_gains(sample_gains(params.beta_sd, r_sr, r_rd, design, trials, seed, options));
}

} // namespace irs::mc
