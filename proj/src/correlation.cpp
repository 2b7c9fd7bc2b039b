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

#include "irs/correlation.hpp"
#include "irs/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace irs {

namespace {

void check_psd(const RVector& ascending_eigs)
{
    if (ascending_eigs.size() == 0) return;
    const double lmax = ascending_eigs(ascending_eigs.size() - 1);
    const double lmin = ascending_eigs(0);
    if (lmin < -kPsdRelTol * std::max(lmax, 0.0)) {
        throw NotPsdError("covariance is not positive semidefinite: smallest eigenvalue " +
                          std::to_string(lmin) + ", largest " + std::to_string(lmax));
    }
}

} // namespace

void ArrayGeometry::validate() const
{
    if (n_h < 1 || n_v < 1) throw DomainError("ArrayGeometry: n_h and n_v must be >= 1");
    if (!(d_h > 0.0) || !(d_v > 0.0)) throw DomainError("ArrayGeometry: d_h and d_v must be > 0");
    if (!(lambda > 0.0)) throw DomainError("ArrayGeometry: lambda must be > 0");
}

CorrelationMatrix::CorrelationMatrix(CMatrix m) : m_(std::move(m))
{
    if (m_.rows() != m_.cols()) throw DomainError("CorrelationMatrix: matrix must be square");
    if (!m_.allFinite()) throw DomainError("CorrelationMatrix: non-finite entry");
    const Eigen::Index n = m_.rows();
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = c; r < n; ++r) {
            if (std::abs(m_(r, c) - std::conj(m_(c, r))) > kHermitianTol) {
                throw DomainError("CorrelationMatrix: not Hermitian at (" + std::to_string(r) + "," +
                                  std::to_string(c) + ")");
            }
        }
    }
    check_psd(eigenvalues());
}

CorrelationMatrix CorrelationMatrix::identity(std::size_t n)
{
    const auto s = static_cast<Eigen::Index>(n);
    return CorrelationMatrix(CMatrix::Identity(s, s), Trusted{});
}

CorrelationMatrix CorrelationMatrix::zero(std::size_t n)
{
    const auto s = static_cast<Eigen::Index>(n);
    return CorrelationMatrix(CMatrix::Zero(s, s), Trusted{});
}

bool CorrelationMatrix::has_unit_diagonal() const
{
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
        if (std::abs(m_(i, i) - cd(1.0, 0.0)) > kUnitDiagTol) return false;
    }
    return true;
}

bool CorrelationMatrix::is_real() const
{
    return (m_.imag().array() == 0.0).all();
}

RVector CorrelationMatrix::eigenvalues() const
{
    if (m_.rows() == 0) return RVector();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw DomainError("CorrelationMatrix: eigensolver failed");
    return es.eigenvalues();
}

double sinc(double x)
{
    if (std::abs(x) < 1e-8) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

std::array<double, 3> element_position(const ArrayGeometry& geometry, std::size_t index)
{
    geometry.validate();
    if (index < 1 || index > geometry.size()) {
        throw DomainError("element_position: index " + std::to_string(index) + " outside [1, " +
                          std::to_string(geometry.size()) + "]");
    }
    const std::size_t i = index - 1;
    return {0.0, static_cast<double>(i % geometry.n_h) * geometry.d_h,
            static_cast<double>(i / geometry.n_h) * geometry.d_v};
}

CorrelationMatrix build_sinc_correlation(const ArrayGeometry& geometry)
{
    geometry.validate();
    const std::size_t n = geometry.size();
    std::vector<std::array<double, 3>> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[i] = element_position(geometry, i + 1);

    const auto s = static_cast<Eigen::Index>(n);
    CMatrix r(s, s);
    for (std::size_t a = 0; a < n; ++a) {
        r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = 1.0;
        for (std::size_t b = a + 1; b < n; ++b) {
            const double dy = pos[a][1] - pos[b][1];
            const double dz = pos[a][2] - pos[b][2];
            const double dist = std::sqrt(dy * dy + dz * dz);
            const double v = sinc(2.0 * dist / geometry.lambda);
            r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
            r(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
        }
    }
    return CorrelationMatrix(std::move(r));
}

CorrelationMatrix build_exponential_correlation(std::size_t n, double magnitude)
{
    if (!(magnitude >= 0.0 && magnitude < 1.0)) {
        throw DomainError("build_exponential_correlation: magnitude must lie in [0, 1)");
    }
    const auto s = static_cast<Eigen::Index>(n);
    CMatrix r(s, s);
    for (Eigen::Index a = 0; a < s; ++a) {
        for (Eigen::Index b = 0; b < s; ++b) {
            // std::pow(0, 0) == 1 keeps the diagonal exact for magnitude 0.
            r(a, b) = std::pow(magnitude, static_cast<double>(std::abs(a - b)));
        }
    }
    return CorrelationMatrix(std::move(r));
}

CorrelationMatrix scale_covariance(const CorrelationMatrix& r, double beta, double d_h, double d_v)
{
    if (!(beta > 0.0)) throw DomainError("scale_covariance: beta must be > 0");
    if (!(d_h > 0.0) || !(d_v > 0.0)) throw DomainError("scale_covariance: d_h, d_v must be > 0");
    const double factor = beta * d_h * d_v;
    return CorrelationMatrix(r.matrix() * factor, CorrelationMatrix::Trusted{});
}

CMatrix matrix_sqrt(const CorrelationMatrix& r)
{
    const Eigen::Index n = static_cast<Eigen::Index>(r.size());
    if (n == 0) return CMatrix();
    // Hermitian square root V sqrt(L) V^H; real inputs stay exactly real.
    if (r.is_real()) {
        const Eigen::MatrixXd re = r.matrix().real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(re);
        if (es.info() != Eigen::Success) throw DomainError("matrix_sqrt: eigensolver failed");
        RVector eig = es.eigenvalues();
        check_psd(eig);
        for (Eigen::Index i = 0; i < n; ++i) eig(i) = std::sqrt(std::max(eig(i), 0.0));
        const Eigen::MatrixXd l = es.eigenvectors() * eig.asDiagonal() * es.eigenvectors().transpose();
        return l.cast<cd>();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r.matrix());
    if (es.info() != Eigen::Success) throw DomainError("matrix_sqrt: eigensolver failed");
    RVector eig = es.eigenvalues();
    check_psd(eig);
    for (Eigen::Index i = 0; i < n; ++i) eig(i) = std::sqrt(std::max(eig(i), 0.0));
    return es.eigenvectors() * eig.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace irs
