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


#ifndef IRS_ACCEPTANCE_HPP
#define IRS_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace irs::acceptance {

struct Options {
    std::uint64_t trials = 100000;  // Monte-Carlo trials for criteria 4 and 5
    std::uint64_t seed = 7;
    unsigned threads = 0;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;          // checks passed and runtime within the limit
    bool checks_passed = false;
    double seconds = 0.0;
    double limit_seconds = 0.0;
    std::string detail;
};

std::vector<int> criterion_ids();  // 1..10

// Never throws for a failing check; exceptions inside a criterion mark it failed.
CriterionResult run_criterion(int id, const Options& options = {});
std::vector<CriterionResult> run_all(const Options& options = {});

// "[PASS] 4 closed form vs Monte Carlo (12.3 s / 300 s): ..."
std::string format_result(const CriterionResult& r);

} // namespace irs::acceptance

#endif // IRS_ACCEPTANCE_HPP
