// Copyright 2026 The qdt Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Self-check suite: every module invariant as a named, seeded check. Each
 * check reduces its samples to one worst-case value compared against a
 * fixed threshold.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qdt/numkernel.hpp"

namespace qdt {

struct CheckResult {
    std::string module;
    std::string name;
    std::size_t samples = 0;
    double value = 0.0;     ///< worst observed defect, or the witness gap
    double threshold = 0.0;
    /// Witness checks pass when value > threshold, all others when
    /// value <= threshold.
    bool witness = false;
    bool passed = false;
    std::string detail; ///< exception text when the check threw
};

struct VerifySummary {
    std::vector<CheckResult> checks;

    [[nodiscard]] std::size_t failures() const;
    [[nodiscard]] bool all_passed() const { return failures() == 0; }
};

/// Runs every check in a fixed order. Results depend only on `seed` and
/// `tol`.
[[nodiscard]] VerifySummary run_verify_suite(std::uint64_t seed,
                                             const Tolerance &tol = {});

} // namespace qdt
