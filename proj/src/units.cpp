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


#include "irs/units.hpp"
#include "irs/errors.hpp"

#include <cmath>

namespace irs::units {

double db_to_linear(double db)
{
    if (!std::isfinite(db)) throw DomainError("db_to_linear: value must be finite");
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    if (!(linear > 0.0)) throw DomainError("linear_to_db: value must be > 0");
    return 10.0 * std::log10(linear);
}

double dbm_to_watts(double dbm)
{
    if (!std::isfinite(dbm)) throw DomainError("dbm_to_watts: value must be finite");
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts)
{
    if (!(watts > 0.0)) throw DomainError("watts_to_dbm: value must be > 0");
    return 10.0 * std::log10(watts) + 30.0;
}

double wavelength_m(double carrier_ghz)
{
    if (!(carrier_ghz > 0.0) || !std::isfinite(carrier_ghz)) {
        throw DomainError("wavelength: carrier frequency must be > 0");
    }
    return kSpeedOfLight / (carrier_ghz * 1e9);
}

} // namespace irs::units
