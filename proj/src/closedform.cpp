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
#include "irs/phaseshift.hpp"
#include "irs/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace irs {

namespace {

constexpr double kImagResidue = 1e-9;
constexpr double kRouteAgreement = 1e-10;

void check_same_size(const CorrelationMatrix& a, const CorrelationMatrix& b, const char* what)
{
    if (a.size() != b.size()) throw DomainError(std::string(what) + ": covariance dimension mismatch");
}

void check_beta_sd(double beta_sd)
{
    if (!(beta_sd >= 0.0) || !std::isfinite(beta_sd)) throw DomainError("beta_sd must be finite and >= 0");
}

double rel_diff(double a, double b)
{
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

} // namespace

void SystemParameters::validate() const
{
    if (!(rho > 0.0)) throw DomainError("SystemParameters: rho must be > 0");
    if (!(sigma2 > 0.0)) throw DomainError("SystemParameters: sigma2 must be > 0");
    if (!(xi >= 0.0)) throw DomainError("SystemParameters: xi must be >= 0");
    if (!(beta_sd >= 0.0)) throw DomainError("SystemParameters: beta_sd must be >= 0");
    if (!(beta_sr > 0.0) || !(beta_rd > 0.0)) throw DomainError("SystemParameters: beta_sr, beta_rd must be > 0");
    geometry.validate();
}

double checked_real(cd value, double scale, const char* what)
{
    if (std::abs(value.imag()) > kImagResidue * std::max(scale, std::abs(value.real()))) {
        throw InternalConsistencyError(std::string(what) + ": imaginary residue " +
                                       std::to_string(value.imag()) + " on a real quantity");
    }
    return value.real();
}

double snr_threshold(double rho, double sigma2, double xi)
{
    if (!(rho > 0.0) || !(sigma2 > 0.0) || !(xi >= 0.0)) {
        throw DomainError("snr_threshold: need rho > 0, sigma2 > 0, xi >= 0");
    }
    return sigma2 * std::expm1(xi * std::log(2.0)) / rho;
}

double snr_threshold(const SystemParameters& params)
{
    params.validate();
    return snr_threshold(params.rho, params.sigma2, params.xi);
}

XMoments moments_general(double beta_sd, const CorrelationMatrix& r_sr, const CorrelationMatrix& r_rd,
                         const CVector& diag_theta)
{
    check_beta_sd(beta_sd);
    check_same_size(r_sr, r_rd, "moments_general");
    const CMatrix tt = theta_tilde(r_rd, r_sr, diag_theta);

    const double bound = r_rd.matrix().norm() * r_sr.matrix().norm();
    const double t = checked_real(tt.trace(), bound, "tr(Theta~)");
    const double t2 = checked_real(trace_of_product(tt, tt), tt.squaredNorm(), "tr(Theta~^2)");

    XMoments m;
    m.trace = t;
    m.trace_sq = t2;
    m.mean = beta_sd + t;
    m.variance = beta_sd * beta_sd + 2.0 * beta_sd * t + t * t + 2.0 * t2;
    m.second_moment = 2.0 * beta_sd * beta_sd + 4.0 * beta_sd * t + 2.0 * t * t + 2.0 * t2;
    return m;
}

GammaParams gamma_params_from_moments(double mean, double variance)
{
    if (!(mean > 0.0)) {
        throw DegenerateScenarioError("Gamma fit undefined: the effective gain has zero mean "
                                      "(no direct link and no reflected energy)");
    }
    if (!(variance > 0.0)) throw DegenerateScenarioError("Gamma fit undefined: zero variance");
    return {mean * mean / variance, variance / mean};
}

GammaParams gamma_params_general(double beta_sd, const CorrelationMatrix& r_sr,
                                 const CorrelationMatrix& r_rd, const CVector& diag_theta)
{
    const XMoments m = moments_general(beta_sd, r_sr, r_rd, diag_theta);
    return gamma_params_from_moments(m.mean, m.variance);
}

GammaParams gamma_params_equal_phase(double beta_sd, const CorrelationMatrix& r_sr,
                                     const CorrelationMatrix& r_rd)
{
    check_beta_sd(beta_sd);
    check_same_size(r_sr, r_rd, "gamma_params_equal_phase");
    const CMatrix prod = r_rd.matrix() * r_sr.matrix();
    const double t = checked_real(trace_of_product(r_rd.matrix(), r_sr.matrix()),
                                  r_rd.matrix().norm() * r_sr.matrix().norm(), "tr(R_rd R_sr)");
    const double t2 = checked_real(trace_of_product(prod, prod), prod.squaredNorm(), "tr((R_rd R_sr)^2)");

    const double head = beta_sd + t;
    if (!(head > 0.0)) {
        throw DegenerateScenarioError("Gamma fit undefined: beta_sd + tr(R_rd R_sr) = 0");
    }
    const double denom = beta_sd * beta_sd + 2.0 * beta_sd * t + t * t + 2.0 * t2;
    return {head * head / denom, beta_sd + t + 2.0 * t2 / head};
}

RandomPhaseMoments random_phase_moments(const CorrelationMatrix& r_sr, const CorrelationMatrix& r_rd)
{
    check_same_size(r_sr, r_rd, "random_phase_moments");
    const CMatrix& a = r_rd.matrix();
    const CMatrix& b = r_sr.matrix();
    const CMatrix h = a.cwiseProduct(b);
    const double scale = a.norm() * b.norm();

    const double nu = checked_real(h.trace(), scale, "tr(R_rd o R_sr)");
    const double hh = checked_real((h * h.adjoint()).trace(), scale * scale, "tr(H H^H)");
    const double h4 = checked_real(h.cwiseProduct(h).trace(), scale * scale, "tr(H o H)");

    const CMatrix ad = a * b.diagonal().asDiagonal();
    const CMatrix bd = b * a.diagonal().asDiagonal();
    const double d1 = checked_real((ad * ad).trace(), scale * scale, "tr((R_rd diag r_sr)^2)");
    const double d2 = checked_real((bd * bd).trace(), scale * scale, "tr((R_sr diag r_rd)^2)");

    return {nu, nu * nu + hh - h4, d1 + d2 - h4};
}

RandomPhaseMoments random_phase_moments_index_sum(const CorrelationMatrix& r_sr,
                                                  const CorrelationMatrix& r_rd)
{
    check_same_size(r_sr, r_rd, "random_phase_moments_index_sum");
    const std::size_t n = r_sr.size();
    const CMatrix& rd = r_rd.matrix();
    const CMatrix& sr = r_sr.matrix();
    const auto at = [](const CMatrix& m, std::size_t i, std::size_t j) {
        return m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    };

    cd nu = 0.0;
    cd diag4 = 0.0;  // sum_n (r_rd^nn)^2 (r_sr^nn)^2
    for (std::size_t i = 0; i < n; ++i) {
        const cd p = at(rd, i, i) * at(sr, i, i);
        nu += p;
        diag4 += p * p;
    }

    cd eta_a = 0.0, eta_b = 0.0, del_a = 0.0, del_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            eta_a += at(rd, i, i) * at(sr, i, i) * at(rd, j, j) * at(sr, j, j);
            eta_b += at(rd, i, j) * at(sr, j, i) * at(rd, j, i) * at(sr, i, j);
            del_a += at(rd, i, j) * at(sr, j, j) * at(rd, j, i) * at(sr, i, i);
            del_b += at(rd, i, i) * at(sr, i, j) * at(rd, j, j) * at(sr, j, i);
        }
    }
    const double scale = rd.norm() * sr.norm();
    const double s2 = scale * scale;
    return {checked_real(nu, scale, "nu (index sum)"),
            checked_real(eta_a + eta_b - diag4, s2, "eta (index sum)"),
            checked_real(del_a + del_b - diag4, s2, "delta (index sum)")};
}

GammaParams gamma_params_uniform_random(double beta_sd, const CorrelationMatrix& r_sr,
                                        const CorrelationMatrix& r_rd)
{
    check_beta_sd(beta_sd);
    const RandomPhaseMoments mm = random_phase_moments(r_sr, r_rd);
    const RandomPhaseMoments ix = random_phase_moments_index_sum(r_sr, r_rd);
    if (rel_diff(mm.nu, ix.nu) > kRouteAgreement || rel_diff(mm.eta, ix.eta) > kRouteAgreement ||
        rel_diff(mm.delta, ix.delta) > kRouteAgreement) {
        throw InternalConsistencyError("random-phase moments: matrix form and index sums disagree");
    }

    const double head = beta_sd + mm.nu;
    if (!(head > 0.0)) throw DegenerateScenarioError("Gamma fit undefined: beta_sd + nu = 0");
    const double denom = beta_sd * beta_sd + 2.0 * beta_sd * mm.nu + mm.eta + 2.0 * mm.delta;
    return {head * head / denom, beta_sd + (beta_sd * mm.nu + mm.eta + 2.0 * mm.delta) / head};
}

double outage_probability(const GammaParams& gp, double z)
{
    if (!(z >= 0.0)) throw DomainError("outage_probability: z must be >= 0");
    if (!(gp.k_a > 0.0) || !(gp.w_a > 0.0)) throw DomainError("outage_probability: k_a, w_a must be > 0");
    if (z == 0.0) return 0.0;
    return special::regularized_lower_gamma(gp.k_a, z / gp.w_a);
}

double outage_sensitivity_wa(const GammaParams& gp, double z)
{
    if (!(z > 0.0)) throw DomainError("outage_sensitivity_wa: z must be > 0");
    if (!(gp.k_a > 0.0) || !(gp.w_a > 0.0)) throw DomainError("outage_sensitivity_wa: k_a, w_a must be > 0");
    // z^k e^{-z/w} / (Gamma(k) w^{k+1}) = prefactor(k, z/w) / w
    return -special::gamma_prefactor(gp.k_a, z / gp.w_a) / gp.w_a;
}

} // namespace irs
