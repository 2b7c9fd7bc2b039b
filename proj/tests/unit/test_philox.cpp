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


#include "irs/philox.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace irs::rng;

// Known-answer vectors of the reference Philox4x32-10.
TEST(Philox, KnownAnswerZero)
{
    const Counter out = philox4x32({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out, (Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes)
{
    const Counter out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(out, (Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi)
{
    const Counter out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(out, (Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterStream, UniformRanges)
{
    CounterStream s(1, 2, Stream::Phase);
    for (int i = 0; i < 100000; ++i) {
        const auto u = s.uniform_pair();
        EXPECT_GT(u[0], 0.0);
        EXPECT_LE(u[0], 1.0);
        EXPECT_GE(u[1], 0.0);
        EXPECT_LT(u[1], 1.0);
    }
}

TEST(CounterStream, Deterministic)
{
    CounterStream a(99, 12345, Stream::SourceToIrs);
    CounterStream b(99, 12345, Stream::SourceToIrs);
    for (int i = 0; i < 50; ++i) EXPECT_EQ(a.complex_normal(), b.complex_normal());
}

TEST(CounterStream, StreamsTrialsSeedsDiffer)
{
    std::set<double> first;
    for (std::uint64_t seed : {1ull, 2ull}) {
        for (std::uint64_t trial : {0ull, 1ull, 1ull << 40}) {
            for (Stream st : {Stream::DirectLink, Stream::SourceToIrs, Stream::IrsToDestination, Stream::Phase}) {
                first.insert(CounterStream(seed, trial, st).uniform());
            }
        }
    }
    EXPECT_EQ(first.size(), 24u);
}

TEST(CounterStream, NormalMoments)
{
    CounterStream s(5, 0, Stream::DirectLink);
    const int n = 400000;
    double m1 = 0, m2 = 0, m4 = 0, cross = 0;
    for (int i = 0; i < n / 2; ++i) {
        const auto g = s.normal_pair();
        for (double x : g) {
            m1 += x;
            m2 += x * x;
            m4 += x * x * x * x;
        }
        cross += g[0] * g[1];
    }
    m1 /= n, m2 /= n, m4 /= n, cross /= n / 2;
    EXPECT_LT(std::abs(m1), 4.0 / std::sqrt(n));
    EXPECT_LT(std::abs(m2 - 1.0), 4.0 * std::sqrt(2.0 / n));
    EXPECT_LT(std::abs(m4 - 3.0), 4.0 * std::sqrt(96.0 / n));
    EXPECT_LT(std::abs(cross), 4.0 / std::sqrt(n / 2.0));
}

TEST(CounterStream, ComplexNormalPower)
{
    CounterStream s(8, 3, Stream::IrsToDestination);
    const int n = 200000;
    double p = 0, re2 = 0;
    for (int i = 0; i < n; ++i) {
        const auto c = s.complex_normal();
        p += std::norm(c);
        re2 += c.real() * c.real();
    }
    EXPECT_LT(std::abs(p / n - 1.0), 4.0 / std::sqrt(n));
    EXPECT_LT(std::abs(re2 / n - 0.5), 4.0 * std::sqrt(0.5 / n));
}
