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


#include "irs/closedform.hpp"
#include "irs/errors.hpp"
#include "irs/montecarlo.hpp"
#include "irs/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace irs;
using namespace irs::mc;

namespace {

constexpr double kPi = std::numbers::pi;

CorrelationMatrix sinc16(double spacing = 0.25)
{
    return build_sinc_correlation({4, 4, spacing, spacing, 1.0});
}

std::vector<double> random_angles(std::size_t n, std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> u(-kPi, kPi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(gen);
    return v;
}

ChannelRealization random_channel(std::size_t n, std::mt19937_64& gen, double bsd = 1.0)
{
    std::normal_distribution<double> g;
    ChannelRealization ch;
    ch.h_sd = bsd * cd(g(gen), g(gen));
    ch.h_sr = CVector(n);
    ch.h_rd = CVector(n);
    for (std::size_t i = 0; i < n; ++i) {
        ch.h_sr(i) = cd(g(gen), g(gen));
        ch.h_rd(i) = cd(g(gen), g(gen));
    }
    return ch;
}

} // namespace

TEST(SampleChannels, DirectLinkPower)
{
    const CMatrix z = CMatrix::Zero(1, 1);
    const int n = 1000000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double p = std::norm(sample_channels(1.0, z, z, 11, i).h_sd);
        s += p;
        s2 += p * p;
    }
    const double mean = s / n;
    const double se = std::sqrt((s2 / n - mean * mean) / n);
    EXPECT_LT(std::abs(mean - 1.0), 3.0 * se);
}

TEST(SampleChannels, BlockedDirectLinkIsZero)
{
    const CMatrix l = matrix_sqrt(sinc16());
    for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_channels(0.0, l, l, 3, i).h_sd, cd(0.0, 0.0));
}

TEST(SampleChannels, EmpiricalCovariance)
{
    const auto r = sinc16();
    const CMatrix l = matrix_sqrt(r);
    const int trials = 100000;
    const Eigen::Index n = 16;
    CMatrix sum = CMatrix::Zero(n, n);
    Eigen::MatrixXd sq_re = Eigen::MatrixXd::Zero(n, n), sq_im = Eigen::MatrixXd::Zero(n, n);
    for (int t = 0; t < trials; ++t) {
        const CVector h = sample_channels(0.0, l, l, 21, t).h_sr;
        const CMatrix o = h * h.adjoint();
        sum += o;
        sq_re += o.real().cwiseAbs2();
        sq_im += o.imag().cwiseAbs2();
    }
    int bad = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const cd m = sum(i, j) / double(trials);
            const double se_re = std::sqrt((sq_re(i, j) / trials - m.real() * m.real()) / trials);
            const double se_im = std::sqrt((sq_im(i, j) / trials - m.imag() * m.imag()) / trials);
            if (std::abs(m.real() - r(i, j).real()) > 5 * se_re) ++bad;
            if (i != j && std::abs(m.imag() - r(i, j).imag()) > 5 * se_im) ++bad;
        }
    }
    EXPECT_EQ(bad, 0);
}

TEST(SampleChannels, MatchesBatchedSampler)
{
    Scenario s = preset("fig2a");
    s.n_h = s.n_v = 5;
    const auto r_sr = s.r_sr();
    const auto r_rd = s.r_rd();
    const auto gains = sample_gains(s.beta_sd(), r_sr, r_rd, design::Equal{0.0}, 1100, 5);
    const CMatrix l_sr = matrix_sqrt(r_sr), l_rd = matrix_sqrt(r_rd);
    for (std::uint64_t t : {0ull, 1ull, 511ull, 512ull, 1099ull}) {
        const auto ch = sample_channels(s.beta_sd(), l_sr, l_rd, 5, t);
        const double g = effective_gain(ch, CVector::Ones(25));
        EXPECT_NEAR(g, gains[t], 1e-12 * gains[t]) << t;
    }
}

TEST(EffectiveGain, SingleElementModulus)
{
    ChannelRealization ch;
    ch.h_sr = CVector::Constant(1, std::polar(1.0, 0.3));
    ch.h_rd = CVector::Constant(1, std::polar(1.0, -2.0));
    for (double th : {0.0, 1.0, -2.5}) {
        EXPECT_NEAR(effective_gain(ch, CVector::Constant(1, std::polar(1.0, th))), 1.0, 1e-15);
    }
}

TEST(EffectiveGain, RealReduction)
{
    ChannelRealization ch;
    ch.h_sd = 0.5;
    ch.h_sr = CVector(3);
    ch.h_rd = CVector(3);
    ch.h_sr << 1.0, -2.0, 0.5;
    ch.h_rd << 3.0, 0.25, 2.0;
    const double amp = 0.5 + 3.0 - 0.5 + 1.0;
    EXPECT_DOUBLE_EQ(effective_gain(ch, CVector::Ones(3)), amp * amp);
}

TEST(EffectiveGain, DimensionMismatch)
{
    ChannelRealization ch;
    ch.h_sr = CVector::Ones(3);
    ch.h_rd = CVector::Ones(3);
    EXPECT_THROW(effective_gain(ch, CVector::Ones(2)), DomainError);
    ch.h_rd = CVector::Ones(2);
    EXPECT_THROW(effective_gain(ch, CVector::Ones(3)), DomainError);
}

TEST(OptimalCsi, RealPositiveChannelsGiveZeroPhases)
{
    ChannelRealization ch;
    ch.h_sd = 2.0;
    ch.h_sr = CVector::Constant(4, 1.5);
    ch.h_rd = CVector::Constant(4, 0.7);
    const CVector t = optimal_csi_phases(ch);
    for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(t(i) - 1.0), 0.0, 1e-15);
}

TEST(OptimalCsi, BlockedSingleElement)
{
    ChannelRealization ch;
    ch.h_sr = CVector::Constant(1, cd(0.3, -1.1));
    ch.h_rd = CVector::Constant(1, cd(-2.0, 0.4));
    const double want = std::norm(ch.h_sr(0)) * std::norm(ch.h_rd(0));
    EXPECT_NEAR(effective_gain(ch, optimal_csi_phases(ch)), want, 1e-14 * want);
}

TEST(OptimalCsi, ReachesTriangleBound)
{
    std::mt19937_64 gen(1);
    for (int k = 0; k < 20; ++k) {
        const auto ch = random_channel(8, gen, k % 2 ? 1.0 : 0.0);
        double bound = std::abs(ch.h_sd);
        for (Eigen::Index i = 0; i < 8; ++i) bound += std::abs(ch.h_sr(i)) * std::abs(ch.h_rd(i));
        const double amp = std::sqrt(effective_gain(ch, optimal_csi_phases(ch)));
        EXPECT_LE(std::abs(amp - bound), 1e-9 * bound);
    }
}

TEST(OptimalCsi, DominatesOtherDesigns)
{
    std::mt19937_64 gen(2);
    int violations = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto ch = random_channel(6, gen, k % 3 ? 1.0 : 0.0);
        const double best = effective_gain(ch, optimal_csi_phases(ch));
        for (int d = 0; d < 100; ++d) {
            const double g = effective_gain(ch, materialize(design::Fixed{random_angles(6, gen)}, 6));
            if (g > best * (1 + 1e-12)) ++violations;
        }
    }
    EXPECT_EQ(violations, 0);
}

TEST(EstimateOutage, DirectOnlyExponentialLaw)
{
    SystemParameters p;
    p.beta_sd = 1.0;
    p.rho = 1.0;
    p.sigma2 = 1.0;
    p.xi = 1.0;  // z = 1
    const auto z = CorrelationMatrix::zero(2);
    const McEstimate e = estimate_outage(p, z, z, design::Equal{0.0}, 100000, 4);
    EXPECT_LT(std::abs(e.p_hat - (1.0 - std::exp(-1.0))), 3.0 * e.std_err);
    EXPECT_EQ(e.trials, 100000u);
    EXPECT_NEAR(e.std_err, std::sqrt(e.p_hat * (1 - e.p_hat) / 1e5), 1e-15);
}

TEST(EstimateOutage, ThreadCountDoesNotChangeResults)
{
    Scenario s = preset("fig2b");
    s.n_h = s.n_v = 6;
    const auto r_sr = s.r_sr();
    const auto r_rd = s.r_rd();
    for (const PhaseShiftDesign& d : {PhaseShiftDesign{design::Equal{0.2}}, PhaseShiftDesign{design::UniformRandom{3}},
                                      PhaseShiftDesign{design::OptimalCsi{}}}) {
        const auto g1 = sample_gains(0.0, r_sr, r_rd, d, 3000, 9, {1});
        const auto g4 = sample_gains(0.0, r_sr, r_rd, d, 3000, 9, {4});
        const auto g7 = sample_gains(0.0, r_sr, r_rd, d, 3000, 9, {7});
        EXPECT_EQ(g1, g4);
        EXPECT_EQ(g1, g7);
    }
}

TEST(EstimateOutage, PrefixStableAcrossTrialCounts)
{
    const auto r = scale_covariance(sinc16(), 0.1);
    const auto a = sample_gains(0.5, r, r, design::UniformRandom{1}, 700, 3);
    const auto b = sample_gains(0.5, r, r, design::UniformRandom{1}, 1500, 3);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
}

TEST(EstimateOutage, StrictInequality)
{
    const std::vector<double> gains{1.0, 2.0, 2.0, 3.0};
    const auto e = outage_from_gains(gains, {2.0, 2.0000001, 0.5, 10.0});
    EXPECT_EQ(e[0].failures, 1u);
    EXPECT_EQ(e[1].failures, 3u);
    EXPECT_EQ(e[2].failures, 0u);
    EXPECT_EQ(e[3].failures, 4u);
}

TEST(EstimateOutage, BlockedUniformRandomWorseThanEqual)
{
    const Scenario s = preset("fig2b");
    const auto r_sr = s.r_sr();
    const auto r_rd = s.r_rd();
    const double z = snr_threshold(s.rho_watts(), s.sigma2_watts(), 0.02);
    const auto eq = estimate_outage_curve(0.0, r_sr, r_rd, design::Equal{0.0}, {z}, 20000, 1)[0];
    const auto ur = estimate_outage_curve(0.0, r_sr, r_rd, design::UniformRandom{5}, {z}, 20000, 2)[0];
    EXPECT_GT(ur.p_hat - eq.p_hat, 4 * std::hypot(ur.std_err, eq.std_err));
}

TEST(EstimateOutage, Contracts)
{
    EXPECT_THROW(McEstimate::from_counts(0, 0), DomainError);
    EXPECT_THROW(McEstimate::from_counts(3, 4), DomainError);
    const auto z = CorrelationMatrix::zero(2);
    EXPECT_THROW(estimate_outage_curve(1.0, z, z, design::Equal{}, {1.0}, 0, 1), DomainError);
    EXPECT_THROW(sample_gains(-1.0, z, z, design::Equal{}, 10, 1), DomainError);
    EXPECT_THROW(sample_gains(1.0, z, CorrelationMatrix::zero(3), design::Equal{}, 10, 1), DomainError);
}

TEST(SampleMoments, DirectOnlyExponential)
{
    SystemParameters p;
    p.beta_sd = 1.0;
    const auto z = CorrelationMatrix::zero(1);
    const McMoments m = sample_moments(p, z, z, design::Equal{0.0}, 1000000, 6);
    EXPECT_LT(std::abs(m.mean - 1.0), 3 * m.se_mean);
    EXPECT_LT(std::abs(m.variance - 1.0), 3 * m.se_variance);
    EXPECT_LT(std::abs(m.second_moment - 2.0), 3 * m.se_second_moment);
}

TEST(SampleMoments, SincFixedPhasesMatchClosedForm)
{
    const auto r_sr = scale_covariance(sinc16(), 0.4);
    const auto r_rd = scale_covariance(sinc16(), 2.0);
    std::mt19937_64 gen(7);
    const design::Fixed d{random_angles(16, gen)};
    SystemParameters p;
    p.beta_sd = 0.8;
    const McMoments m = sample_moments(p, r_sr, r_rd, d, 1000000, 8);
    const XMoments x = moments_general(p.beta_sd, r_sr, r_rd, materialize(d, 16));
    EXPECT_LT(std::abs(m.mean - x.mean), 3 * m.se_mean);
    EXPECT_LT(std::abs(m.variance - x.variance), 3 * m.se_variance);
    EXPECT_LT(std::abs(m.second_moment - x.second_moment), 3 * m.se_second_moment);
    EXPECT_THROW(sample_moments(p, r_sr, r_rd, d, 1, 8), DomainError);
}
