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

#include <cmath>
#include <numbers>

namespace irs::rng {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round(Counter& c, const Key& k) noexcept
{
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

} // namespace

Counter philox4x32(Counter ctr, Key key) noexcept
{
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        round(ctr, key);
    }
    return ctr;
}

std::array<double, 2> CounterStream::uniform_pair() noexcept
{
    const Counter ctr{block_++, stream_, static_cast<std::uint32_t>(trial_),
                      static_cast<std::uint32_t>(trial_ >> 32)};
    const Counter out = philox4x32(ctr, key_);
    const std::uint64_t a = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
    const std::uint64_t b = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
    // (k + 1) 2^-53 lies in (0, 1]; k 2^-53 lies in [0, 1).
    return {static_cast<double>((a >> 11) + 1) * kTwoPow53Inv,
            static_cast<double>(b >> 11) * kTwoPow53Inv};
}

std::array<double, 2> CounterStream::normal_pair() noexcept
{
    const auto u = uniform_pair();
    const double r = std::sqrt(-2.0 * std::log(u[0]));
    const double phi = 2.0 * std::numbers::pi * u[1];
    return {r * std::cos(phi), r * std::sin(phi)};
}

std::complex<double> CounterStream::complex_normal() noexcept
{
    const auto g = normal_pair();
    return {g[0] * std::numbers::sqrt2 * 0.5, g[1] * std::numbers::sqrt2 * 0.5};
}

} // namespace irs::rng
