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

#ifndef IRS_CORRELATION_HPP
#define IRS_CORRELATION_HPP

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>

namespace irs {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdRelTol = 1e-9;
inline constexpr double kUnitDiagTol = 1e-12;

// Planar IRS layout: n_h elements per row, n_v rows, element size d_h x d_v.
struct ArrayGeometry {
    std::size_t n_h = 1;
    std::size_t n_v = 1;
    double d_h = 1.0;     // meters
    double d_v = 1.0;     // meters
    double lambda = 1.0;  // meters

    std::size_t size() const noexcept { return n_h * n_v; }

    // Throws DomainError when any field violates n >= 1 or lengths > 0.
    void validate() const;
};

// Hermitian positive-semidefinite N x N covariance (or correlation) matrix.
//
// Construction validates the Hermitian and PSD invariants. Values are
// immutable afterwards, so instances can be shared across threads.
class CorrelationMatrix {
public:
    // Validates `m`; throws DomainError (not square / not Hermitian) or
    // NotPsdError.
    explicit CorrelationMatrix(CMatrix m);

    static CorrelationMatrix identity(std::size_t n);
    static CorrelationMatrix zero(std::size_t n);

    std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix& matrix() const noexcept { return m_; }
    cd operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    // True when every diagonal entry equals 1 within kUnitDiagTol.
    bool has_unit_diagonal() const;
    // True when every imaginary part is exactly zero.
    bool is_real() const;

    // Ascending eigenvalues.
    RVector eigenvalues() const;

private:
    struct Trusted {};
    CorrelationMatrix(CMatrix m, Trusted) : m_(std::move(m)) {}

    CMatrix m_;

    friend CorrelationMatrix scale_covariance(const CorrelationMatrix&, double, double, double);
};

// sin(pi x) / (pi x), with sinc(x) = 1 for |x| < 1e-8.
double sinc(double x);

// Position of the 1-based element `index`: [0, mod(i-1, n_h) d_h, floor((i-1)/n_h) d_v].
std::array<double, 3> element_position(const ArrayGeometry& geometry, std::size_t index);

// Isotropic-scattering correlation of a planar array:
// r(n, m) = sinc(2 |u_n - u_m| / lambda).
CorrelationMatrix build_sinc_correlation(const ArrayGeometry& geometry);

// r(n, m) = magnitude^|n - m|, magnitude in [0, 1).
CorrelationMatrix build_exponential_correlation(std::size_t n, double magnitude);

// Multiplies every entry by beta * d_h * d_v (beta > 0).
CorrelationMatrix scale_covariance(const CorrelationMatrix& r, double beta, double d_h = 1.0,
                                   double d_v = 1.0);

// Returns L with L L^H = R from the eigendecomposition. Slightly negative
// eigenvalues (>= -kPsdRelTol * lambda_max) are clipped to zero; anything
// below raises NotPsdError.
CMatrix matrix_sqrt(const CorrelationMatrix& r);

} // namespace irs

#endif // IRS_CORRELATION_HPP
