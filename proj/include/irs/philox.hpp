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

#ifndef IRS_PHILOX_HPP
#define IRS_PHILOX_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace irs::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

// Philox4x32-10 block function (Salmon et al., SC'11).
Counter philox4x32(Counter ctr, Key key) noexcept;

// Independent sub-streams of one Monte-Carlo trial.
enum class Stream : std::uint32_t {
    DirectLink = 1,
    SourceToIrs = 2,
    IrsToDestination = 3,
    Phase = 4,
};

// Sequential draws from the counter stream addressed by (seed, trial, stream).
//
// Counter layout: [block, stream, trial_lo, trial_hi]; key: [seed_lo, seed_hi].
// Each block yields two 53-bit uniforms, so one block yields one Box-Muller
// pair. The draws of trial i never depend on trial j, so trials may run in any
// order or on any thread.
class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint64_t trial, Stream stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          trial_(trial), stream_(static_cast<std::uint32_t>(stream)) {}

    // Two uniforms from one block: first in (0, 1], second in [0, 1).
    std::array<double, 2> uniform_pair() noexcept;

    // Uniform on [0, 1).
    double uniform() noexcept { return uniform_pair()[1]; }

    // Standard normal pair via Box-Muller on one block.
    std::array<double, 2> normal_pair() noexcept;

    // Circularly symmetric CN(0, 1) sample from one block.
    std::complex<double> complex_normal() noexcept;

private:
    Key key_;
    std::uint64_t trial_;
    std::uint32_t stream_;
    std::uint32_t block_ = 0;
};

} // namespace irs::rng

#endif // IRS_PHILOX_HPP
