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

#ifndef IRS_PHASESHIFT_HPP
#define IRS_PHASESHIFT_HPP

#include "irs/correlation.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace irs {

// Phase-shift designs. The phase matrix is diagonal, so only its diagonal
// (a unit-modulus vector) is ever materialized.
namespace design {

struct Equal {
    double theta = 0.0;  // radians
};

struct Fixed {
    std::vector<double> thetas;  // radians, one per element
};

// i.i.d. U(-pi, pi) angles, redrawn for every draw_index.
struct UniformRandom {
    std::uint64_t seed = 0;
};

// Per-realization co-phasing with perfect CSI; resolved by the simulator.
struct OptimalCsi {};

} // namespace design

using PhaseShiftDesign =
    std::variant<design::Equal, design::Fixed, design::UniformRandom, design::OptimalCsi>;

// "equal" | "fixed" | "uniform_random" | "optimal_csi"
std::string design_name(const PhaseShiftDesign& d);

// Maps an angle to [-pi, pi] by adding or subtracting multiples of 2 pi.
double normalize_angle(double theta);

// Diagonal of the phase matrix for `n` elements. UniformRandom derives its
// angles from (seed, draw_index) only. Throws ContractViolation for
// OptimalCsi and DomainError when a Fixed vector has the wrong length.
CVector materialize(const PhaseShiftDesign& d, std::size_t n, std::uint64_t draw_index = 0);

// R_rd * Theta^H * R_sr * Theta, using diagonal scaling plus one product.
CMatrix theta_tilde(const CorrelationMatrix& r_rd, const CorrelationMatrix& r_sr,
                    const CVector& diag_theta);

// tr(A B) = sum_{n,m} A(n,m) B(m,n) without forming A B.
cd trace_of_product(const CMatrix& a, const CMatrix& b);

struct TraceGainReport {
    double equal_trace = 0.0;      // scale * tr(R R) (equal phases)
    std::vector<double> margins;   // equal_trace - Re tr(Theta~) per design
    bool all_nonnegative = true;   // every margin >= -slack
};

// For R_sr = R_rd ∝ R (real symmetric), checks that equal phases maximize
// tr(Theta~) over the sampled Fixed designs. `scale` multiplies tr(R Theta^H R Theta).
TraceGainReport trace_gain_bound_check(const CorrelationMatrix& r, double scale,
                                       const std::vector<design::Fixed>& designs,
                                       double slack = 1e-10);

} // namespace irs

#endif // IRS_PHASESHIFT_HPP
