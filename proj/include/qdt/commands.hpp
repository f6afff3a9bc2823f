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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qdt/numkernel.hpp"
#include "qdt/report.hpp"
#include "qdt/scenario.hpp"

namespace qdt {

enum class Command { predict, eval_quantum, pipeline, logic_demo, verify };

[[nodiscard]] std::string_view to_string(Command command);

/// Accepts the CLI spellings ("eval-quantum", "logic-demo", ...).
[[nodiscard]] std::optional<Command> parse_command(std::string_view text);

struct CommandOptions {
    /// Overrides the scenario's seed; both absent means 0.
    std::optional<std::uint64_t> seed;
    std::optional<double> mu;
    std::optional<double> mu_c;
    Tolerance tolerance;
};

/// Exit codes: 0 success, 2 validation failure, 3 numerical invariant
/// failure. Errors never escape; they are reported in the document.
inline constexpr int exit_success = 0;
inline constexpr int exit_validation = 2;
inline constexpr int exit_numerical = 3;

/// Runs `command`. Commands other than logic-demo and verify need a
/// scenario of the matching kind.
[[nodiscard]] ReportDocument
run_command(Command command, const std::optional<ScenarioFile> &scenario,
            const CommandOptions &options = {});

/// Parses `scenario_text` (when given) and runs `command`; parse failures
/// are reported with exit code 2 and the offending location.
[[nodiscard]] ReportDocument
run_command_on_text(Command command,
                    const std::optional<std::string> &scenario_text,
                    const CommandOptions &options = {});

} // namespace qdt
