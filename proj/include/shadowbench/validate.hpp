// Copyright 2026 The shadowbench authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shadowbench::validate {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail; // statistic, tolerance and band actually observed
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    [[nodiscard]] bool all_passed() const;
};

/// Moment checks for the reduced Haar sampling construction.
SuiteReport run_haar_suite(std::uint64_t seed);

/// Shadow estimator invariants: unit trace, -1 eigenvalue multiplicity,
/// matrix-free/dense agreement, single-shot unbiasedness.
SuiteReport run_shadow_suite(std::uint64_t seed);

/// Prior sampling checks on a constant-likelihood chain.
SuiteReport run_prior_suite(std::uint64_t seed);

/// Dense-matrix cross checks of every matrix-free formula.
SuiteReport run_oracle_suite(std::uint64_t seed);

SuiteReport run_suite(const std::string &name, std::uint64_t seed);

} // namespace shadowbench::validate
