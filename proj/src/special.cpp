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

#include "irs/special.hpp"
#include "irs/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace irs::special {

namespace {

constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;

// log(1 + t) - t for |t| < 0.5, summed as a power series.
double log1pmx(double t)
{
    // -t^2/2 + t^3/3 - t^4/4 + ...
    double term = t;  // (-1)^(k+1) t^k with k = 1
    double sum = 0.0;
    for (int k = 2; k < 200; ++k) {
        term *= -t;
        const double add = term / k;
        sum += add;
        if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// lgamma(a) - [(a - 1/2) log a - a + log(2 pi)/2], asymptotic for a >= 10.
double stirling_error(double a)
{
    const double r = 1.0 / a;
    const double r2 = r * r;
    return r * (1.0 / 12.0 -
                r2 * (1.0 / 360.0 -
                      r2 * (1.0 / 1260.0 -
                            r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360360.0 - r2 / 156.0))))));
}

double log_prefactor(double a, double x)
{
    if (a < 10.0) return a * std::log(x) - x - std::lgamma(a);
    const double t = (x - a) / a;
    const double core = std::abs(t) < 0.5 ? a * log1pmx(t) : a * std::log(x / a) - (x - a);
    return core + 0.5 * std::log(a / (2.0 * std::numbers::pi)) - stirling_error(a);
}

int max_iterations(double a)
{
    // Both expansions need O(sqrt(a)) terms near x = a.
    return 500 + static_cast<int>(20.0 * std::sqrt(a));
}

// P(a, x) by the lower series; valid for any x, fast for x < a + 1.
double lower_series(double a, double x)
{
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    const int limit = max_iterations(a);
    for (int n = 0; n < limit; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(log_prefactor(a, x));
}

// Q(a, x) by the continued fraction; fast for x >= a + 1.
double upper_fraction(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    const int limit = max_iterations(a);
    for (int i = 1; i <= limit; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return std::exp(log_prefactor(a, x)) * h;
}

// Series for x < a + 1, except small shapes at moderate x where Q is small
// enough that 1 - P would lose relative accuracy.
bool use_series(double a, double x)
{
    return x < a + 1.0 && !(a < 1.0 && x >= 0.3);
}

void check_domain(double a, double x)
{
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("incomplete gamma: shape a must be finite and > 0");
    if (!(x >= 0.0)) throw DomainError("incomplete gamma: argument x must be >= 0");
}

} // namespace

double gamma_prefactor(double a, double x)
{
    check_domain(a, x);
    if (x == 0.0 || std::isinf(x)) return 0.0;
    return std::exp(log_prefactor(a, x));
}

double regularized_upper_gamma(double a, double x)
{
    check_domain(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (use_series(a, x)) return 1.0 - lower_series(a, x);
    return upper_fraction(a, x);
}

double regularized_lower_gamma(double a, double x)
{
    check_domain(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (use_series(a, x)) return lower_series(a, x);
    return 1.0 - upper_fraction(a, x);
}

} // namespace irs::special
