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

#ifndef IRS_MONTECARLO_HPP
#define IRS_MONTECARLO_HPP

#include "irs/closedform.hpp"
#include "irs/correlation.hpp"
#include "irs/phaseshift.hpp"

#include <cstdint>
#include <vector>

namespace irs::mc {

// One block-fading draw of the three links.
struct ChannelRealization {
    cd h_sd{0.0, 0.0};
    CVector h_sr;
    CVector h_rd;
};

struct McEstimate {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double p_hat = 0.0;
    double std_err = 0.0;  // sqrt(p_hat (1 - p_hat) / trials)

    static McEstimate from_counts(std::uint64_t trials, std::uint64_t failures);
};

// Sample statistics of X; the standard errors come from the sample
// third/fourth moments.
struct McMoments {
    std::uint64_t trials = 0;
    double mean = 0.0;
    double variance = 0.0;       // unbiased
    double second_moment = 0.0;  // mean of X^2
    double se_mean = 0.0;
    double se_variance = 0.0;
    double se_second_moment = 0.0;
};

struct McOptions {
    unsigned threads = 0;  // 0: std::thread::hardware_concurrency()
};

// Trials are evaluated in fixed chunks of this many; chunk boundaries do not
// depend on the thread count.
inline constexpr std::size_t kChunkTrials = 512;

// h_sd = sqrt(beta_sd) CN(0,1); h_sr = L_sr g; h_rd = L_rd g' with i.i.d. CN(0,1)
// vectors, all drawn from the counter streams of (seed, trial_index).
ChannelRealization sample_channels(double beta_sd, const CMatrix& l_sr, const CMatrix& l_rd,
                                   std::uint64_t seed, std::uint64_t trial_index);

// |h_sd + sum_n conj(h_sr[n]) theta[n] h_rd[n]|^2
double effective_gain(const ChannelRealization& ch, const CVector& diag_theta);

// Co-phasing: theta_n = arg(h_sd) - arg(conj(h_sr[n]) h_rd[n]) (reference 0 when h_sd = 0).
CVector optimal_csi_phases(const ChannelRealization& ch);

// Effective gains X of trials [0, trials) in trial order. UniformRandom
// phases are redrawn per trial from (design seed, trial); OptimalCsi is
// resolved per trial.
std::vector<double> sample_gains(double beta_sd, const CorrelationMatrix& r_sr, const CorrelationMatrix& r_rd,
                                 const PhaseShiftDesign& design, std::uint64_t trials, std::uint64_t seed,
                                 const McOptions& options = {});

// Fraction of trials with X < snr_threshold(params) (strict inequality).
McEstimate estimate_outage(const SystemParameters& params, const CorrelationMatrix& r_sr,
                           const CorrelationMatrix& r_rd, const PhaseShiftDesign& design,
                           std::uint64_t trials, std::uint64_t seed, const McOptions& options = {});

// One estimate per threshold, all from the same set of trials.
std::vector<McEstimate> estimate_outage_curve(double beta_sd, const CorrelationMatrix& r_sr,
                                              const CorrelationMatrix& r_rd, const PhaseShiftDesign& design,
                                              const std::vector<double>& thresholds, std::uint64_t trials,
                                              std::uint64_t seed, const McOptions& options = {});

// Counts X < z for every z from an existing gain sample.
std::vector<McEstimate> outage_from_gains(const std::vector<double>& gains, const std::vector<double>& thresholds);

McMoments sample_moments(const SystemParameters& params, const CorrelationMatrix& r_sr,
                         const CorrelationMatrix& r_rd, const PhaseShiftDesign& design, std::uint64_t trials,
                         std::uint64_t seed, const McOptions& options = {});

McMoments moments_from_gains(const std::vector<double>& gains);

} // namespace irs::mc

#endif // IRS_MONTECARLO_HPP
