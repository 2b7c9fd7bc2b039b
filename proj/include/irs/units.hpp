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


#ifndef IRS_UNITS_HPP
#define IRS_UNITS_HPP

namespace irs::units {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Power ratios: 10^(x/10) and back.
double db_to_linear(double db);
double linear_to_db(double linear);

// Absolute power: dBm referenced to 1 mW, result in watts.
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

double wavelength_m(double carrier_ghz);

} // namespace irs::units

#endif // IRS_UNITS_HPP
