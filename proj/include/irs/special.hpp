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

#ifndef IRS_SPECIAL_HPP
#define IRS_SPECIAL_HPP

namespace irs::special {

// Regularized incomplete gamma functions
//
//   P(a, x) = gamma(a, x) / Gamma(a),   Q(a, x) = Gamma(a, x) / Gamma(a) = 1 - P(a, x).
//
// For x < a + 1 the lower series converges quickly and Q is its complement
// (small shapes a < 1 switch to the fraction already at x >= 0.3);
// otherwise the upper continued fraction (modified Lentz) gives Q directly
// and P is the complement. Both share the prefactor x^a e^{-x} / Gamma(a),
// evaluated with a Stirling-corrected log for large a so that relative
// accuracy does not degrade with a.
//
// Domain: a > 0, x >= 0 (x = +inf allowed). Throws irs::DomainError otherwise.
double regularized_upper_gamma(double a, double x);
double regularized_lower_gamma(double a, double x);

// x^a e^{-x} / Gamma(a), the Gamma(a, 1) density times x.
double gamma_prefactor(double a, double x);

} // namespace irs::special

#endif // IRS_SPECIAL_HPP
