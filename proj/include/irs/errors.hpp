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

#ifndef IRS_ERRORS_HPP
#define IRS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace irs {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Covariance input with an eigenvalue below the PSD tolerance.
class NotPsdError : public DomainError {
public:
    using DomainError::DomainError;
};

// Scenario without any channel energy (beta_sd = 0 and zero covariances);
// the Gamma fit is undefined at zero mean.
class DegenerateScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (e.g. OptimalCsi passed to materialize).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Two algebraically equal routes disagreed, or a provably real quantity
// came out with a large imaginary part.
class InternalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scenario file problems. `field()` names the offending key when known.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace irs

#endif // IRS_ERRORS_HPP
