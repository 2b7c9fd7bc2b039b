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

#include "irs/phaseshift.hpp"
#include "irs/errors.hpp"
#include "irs/philox.hpp"

#include <cmath>
#include <numbers>

namespace irs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kPi = std::numbers::pi;

} // namespace

std::string design_name(const PhaseShiftDesign& d)
{
    return std::visit(overloaded{
                          [](const design::Equal&) { return std::string("equal"); },
                          [](const design::Fixed&) { return std::string("fixed"); },
                          [](const design::UniformRandom&) { return std::string("uniform_random"); },
                          [](const design::OptimalCsi&) { return std::string("optimal_csi"); },
                      },
                      d);
}

double normalize_angle(double theta)
{
    if (!std::isfinite(theta)) throw DomainError("normalize_angle: non-finite angle");
    if (theta >= -kPi && theta <= kPi) return theta;
    double t = std::remainder(theta, 2.0 * kPi);  // in [-pi, pi]
    return t;
}

CVector materialize(const PhaseShiftDesign& d, std::size_t n, std::uint64_t draw_index)
{
    const auto s = static_cast<Eigen::Index>(n);
    return std::visit(
        overloaded{
            [&](const design::Equal& e) -> CVector {
                return CVector::Constant(s, std::polar(1.0, normalize_angle(e.theta)));
            },
            [&](const design::Fixed& f) -> CVector {
                if (f.thetas.size() != n) {
                    throw DomainError("materialize: Fixed design has " + std::to_string(f.thetas.size()) +
                                      " angles for " + std::to_string(n) + " elements");
                }
                CVector v(s);
                for (Eigen::Index i = 0; i < s; ++i) {
                    v(i) = std::polar(1.0, normalize_angle(f.thetas[static_cast<std::size_t>(i)]));
                }
                return v;
            },
            [&](const design::UniformRandom& u) -> CVector {
                rng::CounterStream stream(u.seed, draw_index, rng::Stream::Phase);
                CVector v(s);
                for (Eigen::Index i = 0; i < s; i += 2) {
                    const auto pair = stream.uniform_pair();
                    v(i) = std::polar(1.0, -kPi + 2.0 * kPi * (1.0 - pair[0]));
                    if (i + 1 < s) v(i + 1) = std::polar(1.0, -kPi + 2.0 * kPi * pair[1]);
                }
                return v;
            },
            [&](const design::OptimalCsi&) -> CVector {
                throw ContractViolation("materialize: OptimalCsi phases need channel knowledge; "
                                        "they are resolved per realization by the simulator");
            },
        },
        d);
}

CMatrix theta_tilde(const CorrelationMatrix& r_rd, const CorrelationMatrix& r_sr,
                    const CVector& diag_theta)
{
    const Eigen::Index n = static_cast<Eigen::Index>(r_sr.size());
    if (r_rd.size() != r_sr.size() || diag_theta.size() != n) {
        throw DomainError("theta_tilde: dimension mismatch");
    }
    // (Theta^H R_sr Theta)(m, k) = conj(t_m) R_sr(m, k) t_k
    const CMatrix rotated = diag_theta.conjugate().asDiagonal() * r_sr.matrix() * diag_theta.asDiagonal();
    return r_rd.matrix() * rotated;
}

cd trace_of_product(const CMatrix& a, const CMatrix& b)
{
    if (a.rows() != b.cols() || a.cols() != b.rows()) {
        throw DomainError("trace_of_product: dimension mismatch");
    }
    // sum_{n,m} A(n,m) B(m,n) = sum of A .* B^T
    return (a.array() * b.transpose().array()).sum();
}

TraceGainReport trace_gain_bound_check(const CorrelationMatrix& r, double scale,
                                       const std::vector<design::Fixed>& designs, double slack)
{
    const std::size_t n = r.size();
    TraceGainReport report;
    report.equal_trace = scale * trace_of_product(r.matrix(), r.matrix()).real();
    report.margins.reserve(designs.size());
    for (const auto& d : designs) {
        const CVector t = materialize(d, n);
        const CMatrix rotated = t.conjugate().asDiagonal() * r.matrix() * t.asDiagonal();
        const double tr = scale * trace_of_product(r.matrix(), rotated).real();
        const double margin = report.equal_trace - tr;
        report.margins.push_back(margin);
        if (margin < -slack) report.all_nonnegative = false;
    }
    return report;
}

} // namespace irs
