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
 * JSON scenario files.
 *
 * Top-level fields: schema_version, kind, seed, plus the section that
 * matches kind:
 *   prediction  labels, utility, attraction, empirical
 *   quantum     dims, rho, prospects
 *   pipeline    pipeline
 *   logic_demo  (nothing)
 * Complex numbers are [re, im] pairs; matrices are arrays of rows.
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdt/decision.hpp"
#include "qdt/error.hpp"
#include "qdt/numkernel.hpp"

namespace qdt {

inline constexpr std::string_view scenario_schema_version = "1.0";

enum class ScenarioKind { prediction, quantum, pipeline, logic_demo };

[[nodiscard]] std::string_view to_string(ScenarioKind kind);

struct PredictionSection {
    std::vector<std::string> labels;
    UtilitySpec utility;
    AttractionSpec attraction; ///< prior or explicit; never a state
    std::vector<double> empirical;
};

struct QuantumProspectSpec {
    std::string label;
    std::size_t outcome_index = 0;
    ComplexVector amplitudes;
};

struct QuantumSection {
    std::array<std::size_t, 2> dims{};
    ComplexMatrix rho;
    std::vector<QuantumProspectSpec> prospects;
};

struct PipelineSection {
    std::array<std::size_t, 3> dims{};
    std::array<ComplexMatrix, 3> initial;
    /// Absent preparation means a seeded random unitary; absent evolutions
    /// mean identity.
    std::optional<ComplexMatrix> preparation;
    std::optional<ComplexMatrix> first_evolution;
    std::optional<ComplexMatrix> second_evolution;
    std::vector<double> timestamps{1.0, 2.0, 3.0, 4.0, 5.0};
};

struct ScenarioFile {
    std::string schema_version{scenario_schema_version};
    ScenarioKind kind = ScenarioKind::logic_demo;
    std::optional<std::uint64_t> seed;
    std::optional<PredictionSection> prediction;
    std::optional<QuantumSection> quantum;
    std::optional<PipelineSection> pipeline;
};

/// Validation failure with the offending location: "line L, column C" for
/// syntax errors, a JSON pointer such as "/utility/values" otherwise.
class ScenarioError : public Error {
  public:
    ScenarioError(std::string location, const std::string &message)
        : Error(location + ": " + message), location_(std::move(location)) {}

    [[nodiscard]] const std::string &location() const noexcept {
        return location_;
    }

  private:
    std::string location_;
};

/// Parses and validates a scenario; throws ScenarioError.
[[nodiscard]] ScenarioFile parse_scenario(std::string_view text,
                                          const Tolerance &tol = {});

/// Serializes back to JSON text accepted by parse_scenario.
[[nodiscard]] std::string emit_scenario(const ScenarioFile &scenario);

[[nodiscard]] std::vector<std::string> builtin_scenario_names();

/// JSON text of a builtin scenario; throws for unknown names.
[[nodiscard]] std::string builtin_scenario_text(std::string_view name);

/// Lattice, utilities and attraction of a prediction scenario.
[[nodiscard]] Scenario to_decision_scenario(const ScenarioFile &file,
                                            std::string name);

/// Density operator and lattice of a quantum scenario.
struct QuantumProblem {
    DensityOperator rho;
    ProspectLattice lattice;
    std::array<std::size_t, 2> dims;
};

[[nodiscard]] QuantumProblem to_quantum_problem(const ScenarioFile &file,
                                                const Tolerance &tol = {});

} // namespace qdt
