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

#ifndef IRS_CLOSEDFORM_HPP
#define IRS_CLOSEDFORM_HPP

#include "irs/correlation.hpp"

namespace irs {

// Scalar link constants, all linear (gains) or watts (powers).
struct SystemParameters {
    double beta_sd = 0.0;  // direct-link gain, 0 when blocked
    double beta_sr = 1.0;
    double beta_rd = 1.0;
    double rho = 1.0;      // transmit power [W]
    double sigma2 = 1.0;   // noise power [W]
    double xi = 0.0;       // target rate [bit/s/Hz]
    ArrayGeometry geometry;

    void validate() const;
};

// Shape k_a and scale w_a of the Gamma law matched to X = |h_sd + h_sr^H Theta h_rd|^2.
struct GammaParams {
    double k_a = 1.0;
    double w_a = 1.0;

    double mean() const noexcept { return k_a * w_a; }
    double variance() const noexcept { return k_a * w_a * w_a; }
};

// Exact first two moments of X for a fixed phase vector.
struct XMoments {
    double mean = 0.0;           // beta_sd + tr(Theta~)
    double variance = 0.0;       // beta_sd^2 + 2 beta_sd tr + tr^2 + 2 tr(Theta~^2)
    double second_moment = 0.0;  // 2 beta_sd^2 + 4 beta_sd tr + 2 tr^2 + 2 tr(Theta~^2)
    double trace = 0.0;          // tr(Theta~)
    double trace_sq = 0.0;       // tr(Theta~^2)
};

// Phase-averaged trace statistics under i.i.d. U(-pi, pi) phases:
// nu = E tr(Theta~), eta = E (tr Theta~)^2, delta = E tr(Theta~^2).
struct RandomPhaseMoments {
    double nu = 0.0;
    double eta = 0.0;
    double delta = 0.0;
};

// z = sigma2 (2^xi - 1) / rho
double snr_threshold(double rho, double sigma2, double xi);
double snr_threshold(const SystemParameters& params);

XMoments moments_general(double beta_sd, const CorrelationMatrix& r_sr, const CorrelationMatrix& r_rd,
                         const CVector& diag_theta);

// k_a = mean^2 / var, w_a = var / mean. Throws DegenerateScenarioError when mean == 0.
GammaParams gamma_params_from_moments(double mean, double variance);

GammaParams gamma_params_general(double beta_sd, const CorrelationMatrix& r_sr,
                                 const CorrelationMatrix& r_rd, const CVector& diag_theta);

// Equal phases: substitutes tr(R_rd R_sr) and tr((R_rd R_sr)^2) into the
// shape/scale expressions directly (no phase vector involved).
GammaParams gamma_params_equal_phase(double beta_sd, const CorrelationMatrix& r_sr,
                                     const CorrelationMatrix& r_rd);

// Matrix form: nu = tr(R_rd o R_sr),
// eta = nu^2 + tr(H H^H) - tr(H o H) with H = R_rd o R_sr,
// delta = tr((R_rd diag(r_sr))^2) + tr((R_sr diag(r_rd))^2) - tr(H o H).
RandomPhaseMoments random_phase_moments(const CorrelationMatrix& r_sr, const CorrelationMatrix& r_rd);

// Same quantities as explicit sums over element indices.
RandomPhaseMoments random_phase_moments_index_sum(const CorrelationMatrix& r_sr,
                                                  const CorrelationMatrix& r_rd);

// Uses the matrix form and cross-checks it against the index sums
// (InternalConsistencyError beyond 1e-10 relative).
GammaParams gamma_params_uniform_random(double beta_sd, const CorrelationMatrix& r_sr,
                                        const CorrelationMatrix& r_rd);

// P = 1 - Gamma(k_a, z / w_a) / Gamma(k_a), z >= 0.
double outage_probability(const GammaParams& gp, double z);

// dP/dw_a = -z^k_a e^{-z/w_a} / (Gamma(k_a) w_a^{k_a + 1}), z > 0.
double outage_sensitivity_wa(const GammaParams& gp, double z);

// Real part of a trace that must be real; |Im| above 1e-9 of `scale`
// raises InternalConsistencyError.
double checked_real(cd value, double scale, const char* what);

} // namespace irs

#endif // IRS_CLOSEDFORM_HPP
